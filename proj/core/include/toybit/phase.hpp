#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace toybit {

/// Element of the toy phase group Z2 x Z2, written as the two bits `xy`.
struct Phase {
  std::uint8_t x = 0;
  std::uint8_t y = 0;

  constexpr Phase() = default;
  constexpr Phase(unsigned xb, unsigned yb)
      : x(static_cast<std::uint8_t>(xb & 1U)), y(static_cast<std::uint8_t>(yb & 1U)) {}

  /// Index in 0..3 with x as the high bit.
  [[nodiscard]] constexpr unsigned index() const { return (unsigned{x} << 1U) | y; }
  [[nodiscard]] static constexpr Phase from_index(unsigned i) { return {(i >> 1U) & 1U, i & 1U}; }

  [[nodiscard]] constexpr bool is_zero() const { return x == 0 && y == 0; }

  /// Group operation: bitwise addition mod 2.
  constexpr Phase operator+(Phase o) const { return {unsigned(x ^ o.x), unsigned(y ^ o.y)}; }
  constexpr Phase& operator+=(Phase o) { return *this = *this + o; }

  /// The two bits exchanged (what a 11-shift of the other colour does when commuted past).
  [[nodiscard]] constexpr Phase swapped() const { return {y, x}; }

  constexpr bool operator==(const Phase&) const = default;
  constexpr auto operator<=>(const Phase&) const = default;

  [[nodiscard]] std::string str() const { return {char('0' + x), char('0' + y)}; }
  /// Parses "00", "01", "10" or "11"; throws std::invalid_argument otherwise.
  static Phase parse(std::string_view text);
};

inline constexpr Phase kPhase00{0, 0};
inline constexpr Phase kPhase01{0, 1};
inline constexpr Phase kPhase10{1, 0};
inline constexpr Phase kPhase11{1, 1};

/// Ontic states are stored as 0..3 (printed as 1..4). The two coordinates below are
/// an internal convenience; tests check them against the generator tables.
///   green spiders share `u` on every leg; red spiders share `v`.
constexpr unsigned ontic_u(unsigned s) { return (s >> 1U) & 1U; }
constexpr unsigned ontic_v(unsigned s) { return s & 1U; }
constexpr unsigned ontic_from(unsigned u, unsigned v) { return ((u & 1U) << 1U) | (v & 1U); }

/// Contribution of a phase label to a spider's parity constraint, as a function of
/// the shared coordinate: x XOR ((x XOR y) AND shared).
constexpr unsigned phase_parity(Phase p, unsigned shared) {
  return (unsigned{p.x} ^ ((unsigned{p.x} ^ p.y) & shared)) & 1U;
}

}  // namespace toybit
