// Copyright 2026 The netbargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NETBARGAIN_RATIONAL_HPP
#define NETBARGAIN_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "netbargain/error.hpp"

namespace netbargain {

/// Exact rational number, always held in canonical form (reduced, positive
/// denominator). Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
  Rational(long numerator, long denominator) {
    if (denominator == 0) {
      throw Error(Errc::MalformedValue, "zero denominator");
    }
    q_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p", "-p", "p/q" with decimal digits only.
  static Rational parse(std::string_view text) {
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t num_begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == num_begin) {
      throw Error(Errc::MalformedValue,
                  "not a rational: \"" + std::string(text) + "\"");
    }
    if (pos < text.size()) {
      if (text[pos] != '/') {
        throw Error(Errc::MalformedValue,
                    "not a rational: \"" + std::string(text) + "\"");
      }
      const std::size_t den_begin = ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos == den_begin || pos != text.size()) {
        throw Error(Errc::MalformedValue,
                    "not a rational: \"" + std::string(text) + "\"");
      }
    }
    std::string digits(text);
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    mpq_class q;
    if (q.set_str(digits, 10) != 0 || q.get_den() == 0) {
      throw Error(Errc::MalformedValue,
                  "not a rational: \"" + std::string(text) + "\"");
    }
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// Canonical text: "p" for integers, "p/q" otherwise.
  std::string str() const { return q_.get_str(10); }

  std::string numerator_str() const { return q_.get_num().get_str(10); }
  std::string denominator_str() const { return q_.get_den().get_str(10); }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }

  /// "p/q (~d.dddddd)" for human-readable output; the decimal is approximate.
  std::string pretty() const {
    if (is_integer()) return str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", to_double());
    return str() + " (~" + buf + ")";
  }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rational floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Rational(mpq_class(f));
  }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.q_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);
  const Rational fl = lo.floor();
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return fl + 1;
  // lo, hi both in the open unit interval above fl.
  return fl + Rational(1) / simplest_between(Rational(1) / (hi - fl),
                                             Rational(1) / (lo - fl));
}

}  // namespace netbargain

template <>
struct std::hash<netbargain::Rational> {
  std::size_t operator()(const netbargain::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

#endif  // NETBARGAIN_RATIONAL_HPP
