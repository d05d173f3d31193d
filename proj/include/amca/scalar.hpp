#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace amca {

// Exact rational scalar. Expression templates are off so that `auto` and
// generic code see plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
};

template <typename T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <typename T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <Scalar T>
T abs_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x < 0 ? T(-x) : x;
  } else {
    return std::abs(x);
  }
}

template <Scalar T>
double to_double(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.template convert_to<double>();
  } else {
    return x;
  }
}

template <Scalar T>
bool is_zero(const T& x) {
  return x == T(0);
}

// Shortest round-trip decimal for doubles; "p" or "p/q" for rationals.
template <Scalar T>
std::string to_string(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.str();
  } else {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("to_string: formatting failed");
    return std::string(buf, end);
  }
}

// Parses an integer, a fraction "p/q" or a decimal literal ("1.25", "-3e-2")
// into an exact rational. Decimal literals are taken at face value, so "0.1"
// becomes 1/10, not the nearest binary double.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text.empty()) return std::nullopt;

  auto is_int = [](std::string_view v) {
    if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
    return !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  // Leading zeros would select octal in the mpz string constructor.
  auto decimal_int = [](std::string_view v) {
    bool neg = !v.empty() && v.front() == '-';
    if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
    while (v.size() > 1 && v.front() == '0') v.remove_prefix(1);
    boost::multiprecision::mpz_int z(std::string{v});
    return neg ? boost::multiprecision::mpz_int(-z) : z;
  };
  auto int_of = [&](std::string_view v) { return Rational(decimal_int(v)); };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = trim(text.substr(0, slash));
    auto den = trim(text.substr(slash + 1));
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    Rational d = int_of(den);
    if (d == 0) return std::nullopt;
    return int_of(num) / d;
  }
  if (is_int(text)) return int_of(text);

  // decimal with optional exponent
  std::string_view mant = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    auto ex = text.substr(e + 1);
    if (!is_int(ex)) return std::nullopt;
    std::string exs(ex);
    exponent = std::stol(exs);
  }
  bool negative = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    negative = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_len;
    } else {
      return std::nullopt;
    }
  }
  if (digits.empty()) return std::nullopt;
  Rational value{decimal_int(digits)};
  long shift = exponent - frac_len;
  Rational ten_pow = boost::multiprecision::pow(boost::multiprecision::mpz_int(10),
                                                static_cast<unsigned>(shift < 0 ? -shift : shift));
  value = shift < 0 ? value / ten_pow : value * ten_pow;
  return negative ? Rational(-value) : value;
}

// Exact rational from a double, through its shortest round-trip decimal.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value cannot be made exact");
  auto r = parse_rational(to_string(x));
  if (!r) throw std::invalid_argument("cannot convert " + to_string(x) + " to a rational");
  return *r;
}

// Default tolerance for a-posteriori residual checks in float mode; exact mode
// compares against zero unless the caller overrides.
inline double default_residual_tolerance(double scale) {
  return 1e-9 * std::max(1.0, scale);
}

template <Scalar T>
bool within_tolerance(const T& residual, std::optional<double> tol, double scale = 1.0) {
  if constexpr (is_exact_v<T>) {
    return tol ? residual <= rational_from_double(*tol) : is_zero(residual);
  } else {
    return residual <= tol.value_or(default_residual_tolerance(scale));
  }
}

}  // namespace amca
