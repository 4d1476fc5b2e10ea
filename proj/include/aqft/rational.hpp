#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace aqft {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q", "-p/q". Result is canonicalized. Throws Error(InvalidArgument).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Exact rational extended by the two sentinels -inf and +inf.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() = default;
  ExtRational(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT
  ExtRational(long value) : kind_(Kind::Finite), value_(value) {}                  // NOLINT

  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }
  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const { return value_; }

  /// x + q for finite q; infinities absorb.
  ExtRational operator+(const Rational& q) const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  explicit ExtRational(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  Rational value_ = 0;
};

/// Accepts "inf", "+inf", "-inf" besides ordinary rationals.
ExtRational parse_ext_rational(std::string_view text);
std::string to_string(const ExtRational& x);

using Rng = std::mt19937_64;

/// Seeded small rational: numerator in [-num_bound, num_bound], denominator in [1, den_bound].
Rational sample_rational(Rng& rng, long num_bound = 12, long den_bound = 4);

}  // namespace aqft
