#include "toybit/localop.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace toybit {

LocalOp::LocalOp(std::array<std::uint8_t, 4> image) : image_(image) {
  std::array<bool, 4> seen{};
  for (auto s : image_) {
    if (s > 3 || seen[s]) throw std::invalid_argument("not a permutation of the ontic states");
    seen[s] = true;
  }
}

LocalOp LocalOp::green(Phase p) {
  std::array<std::uint8_t, 4> img{};
  for (unsigned s = 0; s < 4; ++s) {
    const unsigned u = ontic_u(s);
    img[s] = static_cast<std::uint8_t>(ontic_from(u, ontic_v(s) ^ phase_parity(p, u)));
  }
  return LocalOp(img);
}

LocalOp LocalOp::red(Phase p) {
  std::array<std::uint8_t, 4> img{};
  for (unsigned s = 0; s < 4; ++s) {
    const unsigned v = ontic_v(s);
    img[s] = static_cast<std::uint8_t>(ontic_from(ontic_u(s) ^ phase_parity(p, v), v));
  }
  return LocalOp(img);
}

LocalOp LocalOp::hadamard() {
  std::array<std::uint8_t, 4> img{};
  for (unsigned s = 0; s < 4; ++s)
    img[s] = static_cast<std::uint8_t>(ontic_from(ontic_v(s), ontic_u(s)));
  return LocalOp(img);
}

LocalOp LocalOp::inverse() const {
  std::array<std::uint8_t, 4> img{};
  for (unsigned s = 0; s < 4; ++s) img[image_[s]] = static_cast<std::uint8_t>(s);
  return LocalOp(img);
}

bool LocalOp::is_green() const {
  for (unsigned p = 0; p < 4; ++p)
    if (*this == green(Phase::from_index(p))) return true;
  return false;
}

unsigned LocalOp::rank() const {
  const auto& all = all_local_ops();
  return static_cast<unsigned>(std::lower_bound(all.begin(), all.end(), *this) - all.begin());
}

LocalOp LocalOp::from_rank(unsigned r) { return all_local_ops().at(r); }

LocalOp operator*(const LocalOp& after, const LocalOp& before) {
  std::array<std::uint8_t, 4> img{};
  for (unsigned s = 0; s < 4; ++s) img[s] = after.image_[before.image_[s]];
  return LocalOp(img);
}

std::string OpWord::str() const {
  return "G" + outer.str() + ".R" + middle.str() + ".G" + inner.str();
}

namespace {

const std::map<LocalOp, OpWord>& word_table() {
  static const std::map<LocalOp, OpWord> table = [] {
    std::map<LocalOp, OpWord> t;
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b)
        for (unsigned c = 0; c < 4; ++c) {
          OpWord w{Phase::from_index(a), Phase::from_index(b), Phase::from_index(c)};
          t.try_emplace(w.value(), w);  // loops run in lexicographic word order
        }
    return t;
  }();
  return table;
}

}  // namespace

OpWord canonical_word(const LocalOp& op) { return word_table().at(op); }

const std::vector<LocalOp>& all_local_ops() {
  static const std::vector<LocalOp> ops = [] {
    std::vector<LocalOp> v;
    std::array<std::uint8_t, 4> img{0, 1, 2, 3};
    do v.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    return v;
  }();
  return ops;
}

const std::vector<LocalOp>& reduced_set() {
  static const std::vector<LocalOp> set = [] {
    std::vector<LocalOp> v;
    for (unsigned p = 0; p < 4; ++p) v.push_back(LocalOp::green(Phase::from_index(p)));
    for (unsigned p = 0; p < 4; ++p)
      v.push_back(LocalOp::red(kPhase01) * LocalOp::green(Phase::from_index(p)));
    return v;
  }();
  return set;
}

bool in_reduced_set(const LocalOp& op) {
  const auto& r = reduced_set();
  return std::find(r.begin(), r.end(), op) != r.end();
}

bool is_red_bearing(const LocalOp& op) { return !canonical_word(op).middle.is_zero(); }

Diagram op_diagram(const LocalOp& op) {
  const OpWord w = canonical_word(op);
  Diagram d = wire();
  // inner factor is applied first
  if (!w.inner.is_zero()) d = seq(d, spider(NodeType::Green, 1, 1, w.inner));
  if (!w.middle.is_zero()) d = seq(d, spider(NodeType::Red, 1, 1, w.middle));
  if (!w.outer.is_zero()) d = seq(d, spider(NodeType::Green, 1, 1, w.outer));
  return d;
}

}  // namespace toybit
