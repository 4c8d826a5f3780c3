#include "tforge/big_approx.hpp"

#include "tforge/errors.hpp"

#include <algorithm>

namespace tforge {

namespace {

Real err_real() { return Real(BigApprox::kErrPrec); }

// 10^e rounded in the requested direction.
Real pow10(long e, mpfr_rnd_t rnd) {
    Real r(BigApprox::kErrPrec);
    const mpfr_rnd_t inner = e >= 0 ? rnd : (rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), inner);
    if (e < 0) {
        Real one(BigApprox::kErrPrec, 1);
        // 1/x flips the rounding direction.
        mpfr_div(r.get(), one.get(), r.get(), rnd);
    }
    return r;
}

} // namespace

void add_rounding_error(Real& err, const Real& value, int ternary) {
    if (ternary == 0) return;
    Real r = err_real();
    mpfr_abs(r.get(), value.get(), MPFR_RNDU);
    mpfr_mul_2si(r.get(), r.get(), 1 - static_cast<long>(value.prec()), MPFR_RNDU);
    mpfr_add(err.get(), err.get(), r.get(), MPFR_RNDU);
}

BigApprox::BigApprox(Real value, Real err) : value_(std::move(value)), err_(err_real()) {
    if (err.sign() < 0) {
        throw UsageError("error radius must be non-negative");
    }
    mpfr_set(err_.get(), err.get(), MPFR_RNDU);
}

BigApprox::BigApprox(Real value) : value_(std::move(value)), err_(err_real()) {}

BigApprox BigApprox::zero(mpfr_prec_t prec) { return BigApprox(Real(prec)); }

BigApprox BigApprox::from_rational(const Rational& q, mpfr_prec_t prec) {
    Real v(prec);
    const int t = mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDN);
    Real e = err_real();
    add_rounding_error(e, v, t);
    return BigApprox(std::move(v), std::move(e));
}

BigApprox BigApprox::from_decimal(std::string_view value, long err_exp, mpfr_prec_t prec) {
    Real v(prec);
    const std::string s(value);
    if (mpfr_set_str(v.get(), s.c_str(), 10, MPFR_RNDN) != 0) {
        throw UsageError("malformed decimal '" + s + "'");
    }
    Real e = pow10(err_exp, MPFR_RNDU);
    add_rounding_error(e, v, 1);
    return BigApprox(std::move(v), std::move(e));
}

Real BigApprox::abs_upper() const {
    Real r(prec() + kErrPrec);
    mpfr_abs(r.get(), value_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), err_.get(), MPFR_RNDU);
    return r;
}

std::optional<long> BigApprox::err_exponent() const {
    if (err_.is_zero()) return std::nullopt;
    Real l = err_real();
    mpfr_log10(l.get(), err_.get(), MPFR_RNDU);
    mpfr_ceil(l.get(), l.get());
    long e = mpfr_get_si(l.get(), MPFR_RNDU);
    // log10 of an exact power of ten can land one ulp high; tighten if safe.
    if (err_at_most_pow10(e - 1)) --e;
    return e;
}

bool BigApprox::err_at_most_pow10(long e) const {
    return mpfr_lessequal_p(err_.get(), pow10(e, MPFR_RNDD).get()) != 0;
}

bool BigApprox::abs_value_below_pow10(long e) const {
    Real a(prec());
    mpfr_abs(a.get(), value_.get(), MPFR_RNDN);
    return mpfr_less_p(a.get(), pow10(e, MPFR_RNDD).get()) != 0;
}

bool BigApprox::abs_upper_below_pow10(long e) const {
    return mpfr_less_p(abs_upper().get(), pow10(e, MPFR_RNDD).get()) != 0;
}

std::optional<long> BigApprox::value_exponent() const {
    if (value_.is_zero()) return std::nullopt;
    Real l = err_real();
    Real a(prec());
    mpfr_abs(a.get(), value_.get(), MPFR_RNDN);
    mpfr_log10(l.get(), a.get(), MPFR_RNDU);
    mpfr_floor(l.get(), l.get());
    long e = mpfr_get_si(l.get(), MPFR_RNDU) + 1;
    while (!abs_value_below_pow10(e)) ++e;
    while (abs_value_below_pow10(e - 1)) --e;
    return e;
}

bool BigApprox::contains(const Real& x) const {
    Real d(std::max(prec(), x.prec()) + kErrPrec);
    mpfr_sub(d.get(), x.get(), value_.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    // Require a strict margin against the rounding of d itself.
    Real slack = err_real();
    mpfr_mul_2si(slack.get(), d.get(), 1 - static_cast<long>(d.prec()), MPFR_RNDU);
    mpfr_add(d.get(), d.get(), slack.get(), MPFR_RNDU);
    return mpfr_lessequal_p(d.get(), err_.get()) != 0;
}

bool BigApprox::overlaps(const BigApprox& other) const {
    BigApprox diff = *this - other;
    Real a(diff.prec());
    mpfr_abs(a.get(), diff.value_.get(), MPFR_RNDN);
    return mpfr_lessequal_p(a.get(), diff.err_.get()) != 0;
}

void BigApprox::widen(const Real& e) { mpfr_add(err_.get(), err_.get(), e.get(), MPFR_RNDU); }

BigApprox operator+(const BigApprox& x, const BigApprox& y) {
    Real v(std::max(x.prec(), y.prec()));
    const int t = mpfr_add(v.get(), x.value_.get(), y.value_.get(), MPFR_RNDN);
    Real e = err_real();
    mpfr_add(e.get(), x.err_.get(), y.err_.get(), MPFR_RNDU);
    add_rounding_error(e, v, t);
    return BigApprox(std::move(v), std::move(e));
}

BigApprox operator-(const BigApprox& x) {
    Real v(x.prec());
    mpfr_neg(v.get(), x.value_.get(), MPFR_RNDN);
    return BigApprox(std::move(v), x.err_);
}

BigApprox operator-(const BigApprox& x, const BigApprox& y) { return x + (-y); }

BigApprox operator*(const BigApprox& x, const BigApprox& y) {
    Real v(std::max(x.prec(), y.prec()));
    const int t = mpfr_mul(v.get(), x.value_.get(), y.value_.get(), MPFR_RNDN);
    // |x|ey + |y|ex + ex ey
    Real e = err_real();
    Real term = err_real();
    mpfr_abs(term.get(), x.value_.get(), MPFR_RNDU);
    mpfr_mul(term.get(), term.get(), y.err_.get(), MPFR_RNDU);
    mpfr_add(e.get(), e.get(), term.get(), MPFR_RNDU);
    mpfr_abs(term.get(), y.value_.get(), MPFR_RNDU);
    mpfr_mul(term.get(), term.get(), x.err_.get(), MPFR_RNDU);
    mpfr_add(e.get(), e.get(), term.get(), MPFR_RNDU);
    mpfr_mul(term.get(), x.err_.get(), y.err_.get(), MPFR_RNDU);
    mpfr_add(e.get(), e.get(), term.get(), MPFR_RNDU);
    add_rounding_error(e, v, t);
    return BigApprox(std::move(v), std::move(e));
}

BigApprox operator*(const Rational& q, const BigApprox& x) {
    Real v(x.prec());
    const int t = mpfr_mul_q(v.get(), x.value_.get(), q.get_mpq_t(), MPFR_RNDN);
    Real e = err_real();
    Real qa = err_real();
    const Rational aq = abs(q);
    mpfr_set_q(qa.get(), aq.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(e.get(), x.err_.get(), qa.get(), MPFR_RNDU);
    add_rounding_error(e, v, t);
    return BigApprox(std::move(v), std::move(e));
}

BigApprox operator*(const BigInt& n, const BigApprox& x) {
    Real v(x.prec());
    const int t = mpfr_mul_z(v.get(), x.value_.get(), n.get_mpz_t(), MPFR_RNDN);
    Real e = err_real();
    Real na = err_real();
    const BigInt an = abs(n);
    mpfr_set_z(na.get(), an.get_mpz_t(), MPFR_RNDU);
    mpfr_mul(e.get(), x.err_.get(), na.get(), MPFR_RNDU);
    add_rounding_error(e, v, t);
    return BigApprox(std::move(v), std::move(e));
}

} // namespace tforge
