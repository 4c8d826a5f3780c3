#include "tforge/pslq.hpp"

#include "tforge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tforge {

void normalize_relation(std::vector<BigInt>& c) {
    BigInt g = 0;
    for (const auto& v : c) g = gcd(g, v);
    if (g == 0) return;
    for (auto& v : c) v /= g;
    const auto first = std::ranges::find_if(c, [](const BigInt& v) { return v != 0; });
    if (first != c.end() && *first < 0) {
        for (auto& v : c) v = -v;
    }
}

namespace {

class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, mpfr_prec_t prec)
        : cols_(cols), data_(rows * cols, Real(prec)) {}
    Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

private:
    std::size_t cols_;
    std::vector<Real> data_;
};

class IntMatrix {
public:
    explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {
        for (std::size_t i = 0; i < n; ++i) (*this)(i, i) = 1;
    }
    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    [[nodiscard]] BigInt max_abs() const {
        BigInt m = 0;
        for (const auto& v : data_) m = std::max(m, BigInt(abs(v)));
        return m;
    }

private:
    std::size_t n_;
    std::vector<BigInt> data_;
};

} // namespace

PslqResult pslq(std::span<const Real> x, const PslqOptions& options) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw UsageError("integer relation search needs at least two values");
    }
    const mpfr_prec_t prec = options.prec;
    PslqResult result;

    Real threshold(prec, 1);
    {
        Real ten(prec, 10);
        mpfr_pow_si(threshold.get(), ten.get(), options.detect_exp, MPFR_RNDN);
    }

    // A zero input is a relation on its own.
    for (std::size_t i = 0; i < n; ++i) {
        Real a(prec);
        mpfr_abs(a.get(), x[i].get(), MPFR_RNDN);
        if (mpfr_less_p(a.get(), threshold.get())) {
            std::vector<BigInt> c(n, 0);
            c[i] = 1;
            result.relation = std::move(c);
            return result;
        }
    }

    // s_j = sqrt(sum_{k >= j} x_k^2), y = x / s_0.
    std::vector<Real> s(n, Real(prec));
    {
        Real acc(prec);
        for (std::size_t k = n; k-- > 0;) {
            mpfr_fma(acc.get(), x[k].get(), x[k].get(), acc.get(), MPFR_RNDN);
            mpfr_sqrt(s[k].get(), acc.get(), MPFR_RNDN);
        }
    }
    const Real norm = s[0];
    std::vector<Real> y(n, Real(prec));
    for (std::size_t k = 0; k < n; ++k) {
        mpfr_div(y[k].get(), x[k].get(), norm.get(), MPFR_RNDN);
        mpfr_div(s[k].get(), s[k].get(), norm.get(), MPFR_RNDN);
    }
    // Relative detection threshold on y.
    Real y_threshold(prec);
    mpfr_div(y_threshold.get(), threshold.get(), norm.get(), MPFR_RNDN);

    Matrix H(n, n - 1, prec);
    Real tmp(prec);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n - 1 && j <= i; ++j) {
            if (i == j) {
                mpfr_div(H(i, j).get(), s[j + 1].get(), s[j].get(), MPFR_RNDN);
            } else {
                mpfr_mul(tmp.get(), y[i].get(), y[j].get(), MPFR_RNDN);
                mpfr_div(tmp.get(), tmp.get(), s[j].get(), MPFR_RNDN);
                mpfr_div(tmp.get(), tmp.get(), s[j + 1].get(), MPFR_RNDN);
                mpfr_neg(H(i, j).get(), tmp.get(), MPFR_RNDN);
            }
        }
    }
    IntMatrix A(n);
    IntMatrix B(n);

    Real quotient(prec);
    BigInt t;
    auto reduce_entry = [&](std::size_t i, std::size_t j) {
        if (H(j, j).is_zero()) return;
        mpfr_div(quotient.get(), H(i, j).get(), H(j, j).get(), MPFR_RNDN);
        mpfr_round(quotient.get(), quotient.get());
        mpfr_get_z(t.get_mpz_t(), quotient.get(), MPFR_RNDN);
        if (t == 0) return;
        mpfr_mul_z(tmp.get(), y[i].get(), t.get_mpz_t(), MPFR_RNDN);
        mpfr_add(y[j].get(), y[j].get(), tmp.get(), MPFR_RNDN);
        for (std::size_t k = 0; k <= j; ++k) {
            mpfr_mul_z(tmp.get(), H(j, k).get(), t.get_mpz_t(), MPFR_RNDN);
            mpfr_sub(H(i, k).get(), H(i, k).get(), tmp.get(), MPFR_RNDN);
        }
        for (std::size_t k = 0; k < n; ++k) {
            A(i, k) -= t * A(j, k);
            B(k, j) += t * B(k, i);
        }
    };

    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i; j-- > 0;) reduce_entry(i, j);
    }

    Real gamma_pow(prec);
    Real gamma(prec, 4);
    mpfr_div_ui(gamma.get(), gamma.get(), 3, MPFR_RNDN);
    mpfr_sqrt(gamma.get(), gamma.get(), MPFR_RNDN);
    Real best(prec);
    Real cand(prec);
    Real t0(prec), t1(prec), t2(prec), t3(prec), t4(prec);

    // Coefficients beyond this size mean the working precision is spent.
    BigInt precision_cap;
    mpz_ui_pow_ui(precision_cap.get_mpz_t(), 2, static_cast<unsigned long>(prec) * 9 / 10);

    const double bound_limit = options.coeff_bound.get_d() * std::sqrt(static_cast<double>(n));

    while (result.iterations < options.max_iterations) {
        ++result.iterations;
        // 1. select m maximizing gamma^(i+1) |H_ii|
        std::size_t m = 0;
        mpfr_set(gamma_pow.get(), gamma.get(), MPFR_RNDN);
        mpfr_set_si(best.get(), -1, MPFR_RNDN);
        for (std::size_t i = 0; i < n - 1; ++i) {
            mpfr_abs(cand.get(), H(i, i).get(), MPFR_RNDN);
            mpfr_mul(cand.get(), cand.get(), gamma_pow.get(), MPFR_RNDN);
            if (mpfr_greater_p(cand.get(), best.get())) {
                mpfr_set(best.get(), cand.get(), MPFR_RNDN);
                m = i;
            }
            mpfr_mul(gamma_pow.get(), gamma_pow.get(), gamma.get(), MPFR_RNDN);
        }
        // 2. exchange m and m+1
        mpfr_swap(y[m].get(), y[m + 1].get());
        for (std::size_t k = 0; k < n - 1; ++k) mpfr_swap(H(m, k).get(), H(m + 1, k).get());
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(A(m, k), A(m + 1, k));
            std::swap(B(k, m), B(k, m + 1));
        }
        // 3. corner fix-up
        if (m + 2 < n) {
            mpfr_hypot(t0.get(), H(m, m).get(), H(m, m + 1).get(), MPFR_RNDN);
            if (!t0.is_zero()) {
                mpfr_div(t1.get(), H(m, m).get(), t0.get(), MPFR_RNDN);
                mpfr_div(t2.get(), H(m, m + 1).get(), t0.get(), MPFR_RNDN);
                for (std::size_t i = m; i < n; ++i) {
                    mpfr_set(t3.get(), H(i, m).get(), MPFR_RNDN);
                    mpfr_set(t4.get(), H(i, m + 1).get(), MPFR_RNDN);
                    // H_im = t1 t3 + t2 t4; H_i,m+1 = -t2 t3 + t1 t4
                    mpfr_mul(tmp.get(), t2.get(), t4.get(), MPFR_RNDN);
                    mpfr_fma(H(i, m).get(), t1.get(), t3.get(), tmp.get(), MPFR_RNDN);
                    mpfr_mul(tmp.get(), t2.get(), t3.get(), MPFR_RNDN);
                    mpfr_fms(H(i, m + 1).get(), t1.get(), t4.get(), tmp.get(), MPFR_RNDN);
                }
            }
        }
        // 4. reduction
        for (std::size_t i = m + 1; i < n; ++i) {
            for (std::size_t j = std::min(i - 1, m + 1) + 1; j-- > 0;) reduce_entry(i, j);
        }
        // 5. norm bound
        mpfr_set_zero(best.get(), 1);
        for (std::size_t j = 0; j < n - 1; ++j) {
            mpfr_abs(cand.get(), H(j, j).get(), MPFR_RNDN);
            if (mpfr_greater_p(cand.get(), best.get())) mpfr_set(best.get(), cand.get(), MPFR_RNDN);
        }
        result.norm_bound = best.is_zero() ? INFINITY : 1.0 / best.to_double();
        // 6. relation check: smallest |y_j|, lowest index on ties
        std::size_t jmin = 0;
        mpfr_abs(best.get(), y[0].get(), MPFR_RNDN);
        for (std::size_t j = 1; j < n; ++j) {
            mpfr_abs(cand.get(), y[j].get(), MPFR_RNDN);
            if (mpfr_less_p(cand.get(), best.get())) {
                mpfr_set(best.get(), cand.get(), MPFR_RNDN);
                jmin = j;
            }
        }
        if (mpfr_less_p(best.get(), y_threshold.get())) {
            std::vector<BigInt> c(n);
            for (std::size_t k = 0; k < n; ++k) c[k] = B(k, jmin);
            normalize_relation(c);
            result.relation = std::move(c);
            return result;
        }
        if (result.norm_bound > bound_limit) return result;
        if (A.max_abs() > precision_cap) return result;
    }
    return result;
}

} // namespace tforge
