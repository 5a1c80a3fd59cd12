#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace toybit {

/// An ordered tuple of ontic states, each stored as 0..3 (printed 1..4).
/// The empty tuple is the single element of the one-point set.
using OnticTuple = std::vector<std::uint8_t>;

/// Maximum tuple length representable by the packed encoding.
inline constexpr std::size_t kMaxArity = 32;

/// Packs a tuple into 2 bits per entry, first entry most significant, so that
/// numeric order on packed values equals lexicographic order on tuples.
std::uint64_t pack_tuple(std::span<const std::uint8_t> t);
OnticTuple unpack_tuple(std::uint64_t packed, std::size_t arity);

/// A relation between IV^arity_in and IV^arity_out.
///
/// Pairs are kept sorted and duplicate-free, so two relations are equal exactly
/// when their members compare equal. The empty pair set is a legitimate value
/// (for a scalar it is the zero scalar).
class Relation {
 public:
  using Pair = std::pair<std::uint64_t, std::uint64_t>;

  Relation() = default;
  Relation(std::size_t arity_in, std::size_t arity_out);
  /// Builds from packed pairs; sorts and removes duplicates.
  Relation(std::size_t arity_in, std::size_t arity_out, std::vector<Pair> pairs);
  /// Builds from explicit tuples given with ontic numbering 1..4.
  static Relation from_tuples(std::size_t arity_in, std::size_t arity_out,
                              std::initializer_list<std::pair<OnticTuple, OnticTuple>> pairs);
  /// A state (no inputs) from a list of 1..4-numbered output tuples.
  static Relation state(std::size_t arity, std::initializer_list<OnticTuple> outs);

  static Relation identity(std::size_t n);
  /// The non-empty scalar {(•,•)}.
  static Relation unit_scalar();
  static Relation zero_scalar() { return Relation(0, 0); }

  [[nodiscard]] std::size_t arity_in() const { return arity_in_; }
  [[nodiscard]] std::size_t arity_out() const { return arity_out_; }
  [[nodiscard]] const std::vector<Pair>& pairs() const { return pairs_; }
  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] bool empty() const { return pairs_.empty(); }
  [[nodiscard]] bool contains(std::uint64_t in, std::uint64_t out) const;

  bool operator==(const Relation&) const = default;

  /// Canonical listing: one line per pair, "a b -> c d" with 1..4 numbering, `.`
  /// standing for the empty tuple; "ZERO" alone for an empty relation.
  [[nodiscard]] std::string to_string() const;

 private:
  std::size_t arity_in_ = 0;
  std::size_t arity_out_ = 0;
  std::vector<Pair> pairs_;
};

/// {(a,c) | exists b: (a,b) in first and (b,c) in second}. Throws on arity mismatch.
Relation compose(const Relation& first, const Relation& second);
/// Cartesian product: tuples concatenated, arities added.
Relation product(const Relation& left, const Relation& right);
/// Swaps every pair and both arities.
Relation converse(const Relation& r);

/// Permutes output positions: result output k is input output perm[k].
Relation permute_outputs(const Relation& r, std::span<const std::size_t> perm);

}  // namespace toybit
