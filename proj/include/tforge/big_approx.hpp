#pragma once

#include "tforge/rational.hpp"
#include "tforge/real.hpp"

#include <optional>
#include <string>

namespace tforge {

/// Midpoint-radius real: the true quantity lies in [value - err, value + err].
/// Every operation widens err by the propagated input errors plus the
/// rounding error of the midpoint computation.
class BigApprox {
public:
    /// Precision of the radius; it is always rounded upward.
    static constexpr mpfr_prec_t kErrPrec = 64;

    BigApprox(Real value, Real err);
    /// Exact value (radius 0).
    explicit BigApprox(Real value);
    /// Exact zero.
    static BigApprox zero(mpfr_prec_t prec);
    /// Exact rational, rounded to prec with the rounding folded into err.
    static BigApprox from_rational(const Rational& q, mpfr_prec_t prec);
    /// Parsed decimal midpoint with an explicit radius of 10^err_exp plus the
    /// parse rounding.
    static BigApprox from_decimal(std::string_view value, long err_exp, mpfr_prec_t prec);

    [[nodiscard]] const Real& value() const noexcept { return value_; }
    [[nodiscard]] const Real& err() const noexcept { return err_; }
    [[nodiscard]] mpfr_prec_t prec() const noexcept { return value_.prec(); }

    /// Upper bound on |true value|.
    [[nodiscard]] Real abs_upper() const;
    /// Smallest e with err <= 10^e; empty when err == 0.
    [[nodiscard]] std::optional<long> err_exponent() const;
    /// err <= 10^e.
    [[nodiscard]] bool err_at_most_pow10(long e) const;
    /// |value| < 10^e (midpoint test, as used for residual thresholds).
    [[nodiscard]] bool abs_value_below_pow10(long e) const;
    /// |value| + err < 10^e: the whole interval lies below 10^e.
    [[nodiscard]] bool abs_upper_below_pow10(long e) const;
    /// Smallest e with |value| < 10^e; empty when value == 0.
    [[nodiscard]] std::optional<long> value_exponent() const;
    /// x lies inside [value - err, value + err] (tested conservatively).
    [[nodiscard]] bool contains(const Real& x) const;
    /// The two intervals intersect (tested conservatively).
    [[nodiscard]] bool overlaps(const BigApprox& other) const;

    /// Widens the radius by e (rounded up).
    void widen(const Real& e);

    friend BigApprox operator+(const BigApprox& x, const BigApprox& y);
    friend BigApprox operator-(const BigApprox& x, const BigApprox& y);
    friend BigApprox operator*(const BigApprox& x, const BigApprox& y);
    friend BigApprox operator-(const BigApprox& x);
    friend BigApprox operator*(const Rational& q, const BigApprox& x);
    friend BigApprox operator*(const BigInt& n, const BigApprox& x);

private:
    Real value_;
    Real err_;
};

/// Adds |value| * 2^(1 - prec) to err (upward) when the ternary flag says the
/// midpoint computation was inexact.
void add_rounding_error(Real& err, const Real& value, int ternary);

} // namespace tforge
