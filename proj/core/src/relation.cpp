#include "toybit/relation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace toybit {

std::uint64_t pack_tuple(std::span<const std::uint8_t> t) {
  if (t.size() > kMaxArity) throw std::invalid_argument("tuple longer than 32 entries");
  std::uint64_t out = 0;
  for (auto s : t) {
    if (s > 3) throw std::invalid_argument("ontic state out of range");
    out = (out << 2U) | s;
  }
  return out;
}

OnticTuple unpack_tuple(std::uint64_t packed, std::size_t arity) {
  OnticTuple t(arity);
  for (std::size_t i = arity; i-- > 0;) {
    t[i] = static_cast<std::uint8_t>(packed & 3U);
    packed >>= 2U;
  }
  return t;
}

namespace {

void check_arity(std::size_t a) {
  if (a > kMaxArity) throw std::invalid_argument("relation arity exceeds 32");
}

std::uint64_t pack_numbered(const OnticTuple& t) {
  OnticTuple z(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 1 || t[i] > 4) throw std::invalid_argument("ontic states are numbered 1..4");
    z[i] = static_cast<std::uint8_t>(t[i] - 1);
  }
  return pack_tuple(z);
}

void append_tuple(std::ostringstream& os, std::uint64_t packed, std::size_t arity) {
  if (arity == 0) {
    os << '.';
    return;
  }
  auto t = unpack_tuple(packed, arity);
  for (std::size_t i = 0; i < arity; ++i) {
    if (i) os << ' ';
    os << int(t[i]) + 1;
  }
}

}  // namespace

Relation::Relation(std::size_t arity_in, std::size_t arity_out)
    : arity_in_(arity_in), arity_out_(arity_out) {
  check_arity(arity_in);
  check_arity(arity_out);
}

Relation::Relation(std::size_t arity_in, std::size_t arity_out, std::vector<Pair> pairs)
    : Relation(arity_in, arity_out) {
  pairs_ = std::move(pairs);
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Relation Relation::from_tuples(std::size_t arity_in, std::size_t arity_out,
                               std::initializer_list<std::pair<OnticTuple, OnticTuple>> pairs) {
  std::vector<Pair> packed;
  for (const auto& [a, b] : pairs) {
    if (a.size() != arity_in || b.size() != arity_out)
      throw std::invalid_argument("tuple length does not match arity");
    packed.emplace_back(pack_numbered(a), pack_numbered(b));
  }
  return {arity_in, arity_out, std::move(packed)};
}

Relation Relation::state(std::size_t arity, std::initializer_list<OnticTuple> outs) {
  std::vector<Pair> packed;
  for (const auto& b : outs) {
    if (b.size() != arity) throw std::invalid_argument("tuple length does not match arity");
    packed.emplace_back(0, pack_numbered(b));
  }
  return {0, arity, std::move(packed)};
}

Relation Relation::identity(std::size_t n) {
  check_arity(n);
  if (n > 12) throw std::invalid_argument("identity relation too large to enumerate");
  std::vector<Pair> pairs;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  pairs.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) pairs.emplace_back(t, t);
  return {n, n, std::move(pairs)};
}

Relation Relation::unit_scalar() { return {0, 0, {{0, 0}}}; }

bool Relation::contains(std::uint64_t in, std::uint64_t out) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{in, out});
}

std::string Relation::to_string() const {
  std::ostringstream os;
  if (pairs_.empty()) {
    os << "ZERO\n";
    return os.str();
  }
  for (const auto& [a, b] : pairs_) {
    append_tuple(os, a, arity_in_);
    os << " -> ";
    append_tuple(os, b, arity_out_);
    os << '\n';
  }
  return os.str();
}

Relation compose(const Relation& first, const Relation& second) {
  if (first.arity_out() != second.arity_in())
    throw std::invalid_argument("compose: arity mismatch (" + std::to_string(first.arity_out()) +
                                " outputs vs " + std::to_string(second.arity_in()) + " inputs)");
  std::unordered_multimap<std::uint64_t, std::uint64_t> by_middle;
  by_middle.reserve(second.size());
  for (const auto& [b, c] : second.pairs()) by_middle.emplace(b, c);
  std::vector<Relation::Pair> out;
  for (const auto& [a, b] : first.pairs()) {
    auto [lo, hi] = by_middle.equal_range(b);
    for (auto it = lo; it != hi; ++it) out.emplace_back(a, it->second);
  }
  return {first.arity_in(), second.arity_out(), std::move(out)};
}

Relation product(const Relation& left, const Relation& right) {
  const auto in = left.arity_in() + right.arity_in();
  const auto out = left.arity_out() + right.arity_out();
  check_arity(in);
  check_arity(out);
  const unsigned shift_in = 2 * static_cast<unsigned>(right.arity_in());
  const unsigned shift_out = 2 * static_cast<unsigned>(right.arity_out());
  std::vector<Relation::Pair> pairs;
  pairs.reserve(left.size() * right.size());
  for (const auto& [a, b] : left.pairs())
    for (const auto& [c, d] : right.pairs())
      pairs.emplace_back((shift_in ? a << shift_in : a) | c, (shift_out ? b << shift_out : b) | d);
  return {in, out, std::move(pairs)};
}

Relation converse(const Relation& r) {
  std::vector<Relation::Pair> pairs;
  pairs.reserve(r.size());
  for (const auto& [a, b] : r.pairs()) pairs.emplace_back(b, a);
  return {r.arity_out(), r.arity_in(), std::move(pairs)};
}

Relation permute_outputs(const Relation& r, std::span<const std::size_t> perm) {
  if (perm.size() != r.arity_out()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Relation::Pair> pairs;
  pairs.reserve(r.size());
  for (const auto& [a, b] : r.pairs()) {
    auto t = unpack_tuple(b, r.arity_out());
    OnticTuple p(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) p[k] = t.at(perm[k]);
    pairs.emplace_back(a, pack_tuple(p));
  }
  return {r.arity_in(), r.arity_out(), std::move(pairs)};
}

}  // namespace toybit
