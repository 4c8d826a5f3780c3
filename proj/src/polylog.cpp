#include "tforge/polylog.hpp"

#include "tforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace tforge {

Deadline::Deadline(std::optional<double> seconds) {
    if (seconds) {
        until_ = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(*seconds));
    }
}

void Deadline::check() const {
    if (until_ && std::chrono::steady_clock::now() >= *until_) {
        throw PrecisionFailure("time budget exhausted before the requested precision was reached");
    }
}

namespace {

// log2 of sum_{n > N} C(n-1, k-1) rho^n, an upper bound on the truncation
// tail of a depth-k nested series whose terms are bounded by rho^{n_1}.
// Returns +inf when the ratio bound is not yet below 1.
double log2_tail(std::size_t k, std::uint64_t N, double rho) {
    const double n1 = static_cast<double>(N + 1);
    const double kk = static_cast<double>(k);
    if (n1 - kk + 1.0 <= 0.0) return INFINITY;
    const double q = rho * n1 / (n1 - kk + 1.0);
    if (q >= 1.0) return INFINITY;
    // log C(N, k-1) + (N+1) log rho - log(1 - q)
    const double log_binom =
        std::lgamma(n1) - std::lgamma(kk) - std::lgamma(n1 - kk + 1.0);
    const double ln = log_binom + n1 * std::log(rho) - std::log1p(-q);
    return ln / std::log(2.0);
}

} // namespace

BigApprox g_half(std::span<const Letter> letters, mpfr_prec_t prec) {
    if (letters.empty()) {
        return BigApprox(Real(prec, 1));
    }
    if (letters.back() == 0) {
        throw UsageError("G(...; 1/2) needs a nonzero last letter");
    }
    // Split 0^{m_1 - 1} b_1 0^{m_2 - 1} b_2 ... b_k.
    std::vector<unsigned long> m;
    std::vector<long> b;
    unsigned long run = 1;
    for (Letter a : letters) {
        if (a == 0) {
            ++run;
        } else {
            m.push_back(run);
            b.push_back(a);
            run = 1;
        }
    }
    const std::size_t k = b.size();
    long bmin = std::labs(b[0]);
    for (long v : b) bmin = std::min(bmin, std::labs(v));
    const double rho = 0.5 / static_cast<double>(bmin);

    // Smallest N whose tail bound is below 2^-(prec + 2).
    std::uint64_t N = k;
    double tail = log2_tail(k, N, rho);
    while (tail > -static_cast<double>(prec) - 2.0) {
        N += 8;
        tail = log2_tail(k, N, rho);
    }

    // x_1 = (1/2)/b_1, x_i = b_{i-1}/b_i, as exact-where-possible MPFR values.
    std::vector<Real> x;
    x.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        Real xi(prec);
        const long num = i == 0 ? 1 : b[i - 1];
        const long den = i == 0 ? 2 * b[0] : b[i];
        mpfr_set_si(xi.get(), num, MPFR_RNDN);
        mpfr_div_si(xi.get(), xi.get(), den, MPFR_RNDN);
        x.push_back(std::move(xi));
    }

    // Nested sums: level i term at n is x_i^n / n^{m_i} * S_{i+1}(n) where
    // S_{i+1}(n) sums level i+1 terms over indices < n.
    std::vector<Real> pw(k, Real(prec, 1));
    std::vector<Real> partial(k, Real(prec));
    std::vector<Real> term(k, Real(prec));
    for (std::uint64_t n = 1; n <= N; ++n) {
        for (std::size_t i = 0; i < k; ++i) {
            mpfr_mul(pw[i].get(), pw[i].get(), x[i].get(), MPFR_RNDN);
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (i + 1 < k && partial[i + 1].is_zero()) {
                mpfr_set_zero(term[i].get(), 1);
                continue;
            }
            mpfr_set(term[i].get(), pw[i].get(), MPFR_RNDN);
            for (unsigned long j = 0; j < m[i]; ++j) {
                mpfr_div_ui(term[i].get(), term[i].get(), static_cast<unsigned long>(n), MPFR_RNDN);
            }
            if (i + 1 < k) {
                mpfr_mul(term[i].get(), term[i].get(), partial[i + 1].get(), MPFR_RNDN);
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            mpfr_add(partial[i].get(), partial[i].get(), term[i].get(), MPFR_RNDN);
        }
    }

    Real value = partial[0];
    if (k % 2 == 1) mpfr_neg(value.get(), value.get(), MPFR_RNDN);

    // Every nested term passes through at most L roundings, so the total
    // rounding error is at most 2 L 2^-prec times the sum of |terms|, which
    // is at most (rho / (1 - rho))^k.
    std::uint64_t weight = 0;
    for (unsigned long mi : m) weight += mi;
    const double L = 3.0 * static_cast<double>(k) * static_cast<double>(N + 1) +
                     static_cast<double>(weight);
    const double abs_sum_log2 = static_cast<double>(k) * std::log2(rho / (1.0 - rho));
    const double round_log2 =
        std::log2(2.0 * L) + abs_sum_log2 - static_cast<double>(prec);
    // Combine in log space with one bit of slack for the double arithmetic.
    const double total_log2 = std::max(tail, round_log2) + 2.0;
    Real err(BigApprox::kErrPrec, 1);
    mpfr_mul_2si(err.get(), err.get(), static_cast<long>(std::ceil(total_log2)), MPFR_RNDU);
    return BigApprox(std::move(value), std::move(err));
}

BigApprox g_one(std::span<const Letter> letters, mpfr_prec_t prec, GMemo& memo,
                const Deadline& deadline) {
    const std::size_t n = letters.size();
    if (n == 0) return BigApprox(Real(prec, 1));
    if (letters.front() == 1 || letters.back() == 0) {
        throw UsageError("G(...; 1) diverges for a leading 1 or a trailing 0");
    }
    auto lookup = [&](Word w) -> const BigApprox& {
        auto it = memo.find(w);
        if (it == memo.end()) {
            BigApprox v = g_half(w, prec);
            it = memo.emplace(std::move(w), std::move(v)).first;
        }
        return it->second;
    };
    BigApprox total = BigApprox::zero(prec);
    for (std::size_t split = 0; split <= n; ++split) {
        deadline.check();
        // Upper piece: (-1)^split G(1 - a_split, ..., 1 - a_1; 1/2).
        Word upper;
        upper.reserve(split);
        for (std::size_t j = split; j-- > 0;) upper.push_back(1 - letters[j]);
        Word lower(letters.begin() + static_cast<std::ptrdiff_t>(split), letters.end());
        BigApprox piece = lookup(std::move(upper)) * lookup(std::move(lower));
        total = split % 2 == 0 ? total + piece : total - piece;
    }
    return total;
}

BigApprox alternating_zeta(std::span<const std::uint32_t> parts, std::span<const int> signs,
                           mpfr_prec_t prec, GMemo& memo, const Deadline& deadline) {
    if (parts.empty() || parts.size() != signs.size()) {
        throw UsageError("alternating sum needs matching nonempty parts and signs");
    }
    if (parts[0] == 1 && signs[0] == 1) {
        throw UsageError("alternating sum diverges: leading part 1 with sign +1");
    }
    // Letters 0^{a_1 - 1} b_1 ... 0^{a_r - 1} b_r with b_i = prod_{j <= i} signs_j.
    Word word;
    int b = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] == 0 || (signs[i] != 1 && signs[i] != -1)) {
            throw UsageError("alternating sum needs positive parts and signs in {+1,-1}");
        }
        word.insert(word.end(), parts[i] - 1, 0);
        b *= signs[i];
        word.push_back(b);
    }
    BigApprox g = g_one(word, prec, memo, deadline);
    return parts.size() % 2 == 0 ? g : -g;
}

} // namespace tforge
