#include "multiaxial/half_integer.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace multiaxial {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a half-integer: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(trim(s.substr(0, slash)), text);
    const int den = parse_int(trim(s.substr(slash + 1)), text);
    if (den == 1) return HalfInteger(num);
    if (den != 2) throw std::invalid_argument("denominator must be 1 or 2: '" + std::string(text) + "'");
    return from_twice(num);
  }
  if (s.find_first_of(".eE") != std::string_view::npos) {
    return from_double(std::stod(std::string(s)));
  }
  return HalfInteger(parse_int(s, text));
}

HalfInteger HalfInteger::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9 || std::abs(rounded) > 1e6) {
    throw std::invalid_argument("not a half-integer: " + std::to_string(value));
  }
  return from_twice(static_cast<int>(rounded));
}

int HalfInteger::as_int() const {
  if (!is_integer()) throw std::domain_error("half-integer " + str() + " is not an integer");
  return twice_ / 2;
}

std::string HalfInteger::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

void require_spin(HalfInteger j, const char* what) {
  if (j.twice() < 0) throw std::domain_error(std::string(what) + " must be non-negative, got " + j.str());
  if (j.twice() > kMaxTwiceSpin) {
    throw std::domain_error(std::string(what) + " " + j.str() + " exceeds the supported maximum j = 20");
  }
}

}  // namespace multiaxial
