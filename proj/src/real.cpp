#include "tforge/real.hpp"

#include "tforge/errors.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace tforge {

mpfr_prec_t bits_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.321928094887362)) + 8;
}

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(mpfr_prec_t prec, long value) {
    mpfr_init2(value_, prec);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.prec());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, mpfr_prec_t prec) {
    Real r(prec);
    const std::string s(text);
    if (mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0 || s.empty()) {
        // mpfr_set_str returns nonzero on a malformed string, not on inexactness.
        throw UsageError("malformed decimal '" + s + "'");
    }
    return r;
}

std::string Real::to_fixed(int frac_digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNf", frac_digits, value_);
    std::string s(buf);
    mpfr_free_str(buf);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::string Real::to_sci(int sig_digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNe", sig_digits > 0 ? sig_digits - 1 : 0, value_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

} // namespace tforge
