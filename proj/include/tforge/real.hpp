#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

namespace tforge {

/// Bits needed to carry `digits` decimal digits.
mpfr_prec_t bits_for_digits(long digits);

/// Owning MPFR value with a fixed precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec);
    Real(mpfr_prec_t prec, long value);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    /// Correctly rounded parse of a decimal string.
    static Real parse(std::string_view text, mpfr_prec_t prec);

    [[nodiscard]] mpfr_ptr get() noexcept { return value_; }
    [[nodiscard]] mpfr_srcptr get() const noexcept { return value_; }
    [[nodiscard]] mpfr_prec_t prec() const noexcept { return mpfr_get_prec(value_); }
    [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    [[nodiscard]] int sign() const noexcept { return mpfr_sgn(value_); }

    /// Fixed-point decimal with `frac_digits` digits after the point,
    /// round-half-even.
    [[nodiscard]] std::string to_fixed(int frac_digits) const;
    /// Scientific notation with `sig_digits` significant digits.
    [[nodiscard]] std::string to_sci(int sig_digits) const;
    [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

private:
    mpfr_t value_;
};

} // namespace tforge
