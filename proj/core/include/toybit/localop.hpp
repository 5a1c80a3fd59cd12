#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "toybit/diagram.hpp"
#include "toybit/phase.hpp"

namespace toybit {

/// A reversible single-toy-bit operator: a permutation of the four ontic states.
class LocalOp {
 public:
  /// Identity.
  constexpr LocalOp() : image_{0, 1, 2, 3} {}
  /// From images of ontic states 0..3; throws if not a permutation.
  explicit LocalOp(std::array<std::uint8_t, 4> image);

  static LocalOp green(Phase p);
  static LocalOp red(Phase p);
  static LocalOp hadamard();

  [[nodiscard]] std::uint8_t operator()(std::uint8_t s) const { return image_[s & 3U]; }
  [[nodiscard]] const std::array<std::uint8_t, 4>& image() const { return image_; }
  [[nodiscard]] LocalOp inverse() const;
  [[nodiscard]] bool is_identity() const { return *this == LocalOp{}; }
  /// A green phase shift (possibly 00).
  [[nodiscard]] bool is_green() const;
  /// Index in 0..23 (lexicographic rank of the image).
  [[nodiscard]] unsigned rank() const;
  static LocalOp from_rank(unsigned r);

  /// `then(a, b)`: apply b first, then a. Written a*b in operator order.
  friend LocalOp operator*(const LocalOp& after, const LocalOp& before);

  bool operator==(const LocalOp&) const = default;
  auto operator<=>(const LocalOp&) const = default;

 private:
  std::array<std::uint8_t, 4> image_;
};

/// The word G(outer)·R(middle)·G(inner): inner acts first (nearest the graph).
struct OpWord {
  Phase outer;
  Phase middle;
  Phase inner;

  [[nodiscard]] LocalOp value() const {
    return LocalOp::green(outer) * LocalOp::red(middle) * LocalOp::green(inner);
  }
  /// e.g. "G01.R01.G00"
  [[nodiscard]] std::string str() const;
  auto operator<=>(const OpWord&) const = default;
};

/// Lexicographically least G·R·G word denoting the operator. Every one of the 24
/// operators has such a word.
OpWord canonical_word(const LocalOp& op);
/// All 24 operators, ordered by rank.
const std::vector<LocalOp>& all_local_ops();

/// The reduced vertex-operator set: green shifts G(ab), and R(01)·G(ab) where the
/// green shift sits next to the graph and the red 01 shift on the far side.
const std::vector<LocalOp>& reduced_set();
bool in_reduced_set(const LocalOp& op);
/// The operator's canonical word has a non-00 red factor.
bool is_red_bearing(const LocalOp& op);

/// Phase-shift diagram (1 input, 1 output) for the canonical word; factors equal
/// to 00 are omitted, identity gives a bare wire.
Diagram op_diagram(const LocalOp& op);

}  // namespace toybit
