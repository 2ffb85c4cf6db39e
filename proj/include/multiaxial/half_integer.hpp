#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace multiaxial {

/// Largest supported spin, stored doubled (j <= 20).
inline constexpr int kMaxTwiceSpin = 40;

/// An exact half-integer, stored as twice its value.
///
/// Used for spins j and magnetic quantum numbers m, q so that selection
/// rules are evaluated in integer arithmetic.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  constexpr HalfInteger(int value) : twice_(2 * value) {}  // NOLINT(implicit)

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }

  /// Accepts "3/2", "-1/2", "2", "1.5". Throws std::invalid_argument.
  static HalfInteger parse(std::string_view text);

  /// Converts a double that must be an exact multiple of 1/2.
  static HalfInteger from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  /// Integer value; throws std::domain_error for odd twice().
  int as_int() const;

  /// "3/2", "-1/2", "2".
  std::string str() const;

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInteger& operator-=(HalfInteger o) {
    twice_ -= o.twice_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  int twice_ = 0;
};

constexpr HalfInteger abs(HalfInteger h) { return h.twice() < 0 ? -h : h; }

/// Throws std::domain_error unless 0 <= j <= kMaxTwiceSpin / 2.
void require_spin(HalfInteger j, const char* what = "spin");

/// Dimension 2j+1 of the spin-j space.
constexpr int dimension(HalfInteger j) { return j.twice() + 1; }

/// Row/column index of |j m> in the descending basis (m = +j first).
constexpr int basis_index(HalfInteger j, HalfInteger m) { return (j.twice() - m.twice()) / 2; }

/// Magnetic quantum number at a descending-basis index.
constexpr HalfInteger basis_m(HalfInteger j, int index) {
  return HalfInteger::from_twice(j.twice() - 2 * index);
}

}  // namespace multiaxial
