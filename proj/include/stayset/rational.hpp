#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace stayset {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with unbounded integer parts. Always stored in
/// lowest terms with a positive denominator; no operation ever rounds.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : value_(n) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
  Rational(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    value_ = Backend(std::move(num), std::move(den));
  }

  /// Accepts "p" or "p/q" with decimal integers (q > 0); an optional leading
  /// '-' is allowed on p only. Returns nullopt on anything else.
  static std::optional<Rational> parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  int sign() const { return value_.sign(); }
  bool is_zero() const { return value_.is_zero(); }
  double to_double() const { return value_.convert_to<double>(); }

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  Rational operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

 private:
  using Backend = boost::multiprecision::cpp_rational;
  Backend value_{0};
};

inline std::string Rational::str() const {
  BigInt d = denominator();
  std::string s = numerator().str();
  if (d != 1) {
    s += '/';
    s += d.str();
  }
  return s;
}

inline std::optional<Rational> Rational::parse(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  bool negative = !num.empty() && num.front() == '-';
  if (negative) num.remove_prefix(1);
  if (!digits(num) || !digits(den)) return std::nullopt;
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return Rational(std::move(n), std::move(d));
}

}  // namespace stayset
