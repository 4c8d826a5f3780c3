#include "tforge/evaluator.hpp"

#include "tforge/errors.hpp"
#include "tforge/polylog.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>

namespace tforge {

std::string to_string(Backend b) { return b == Backend::fast ? "fast" : "oracle"; }

Backend parse_backend(std::string_view name) {
    if (name == "fast") return Backend::fast;
    if (name == "oracle") return Backend::oracle;
    throw UsageError("unknown backend '" + std::string(name) + "' (expected fast or oracle)");
}

void EvalConfig::validate() const {
    if (digits < 1 || digits > kMaxDigits) {
        throw UsageError("digits must lie in [1, " + std::to_string(kMaxDigits) + "], got " +
                         std::to_string(digits));
    }
    if (oracle_cutoff < 1) {
        throw UsageError("oracle cutoff must be at least 1");
    }
    if (time_budget && *time_budget < 0) {
        throw UsageError("time budget must be non-negative");
    }
}

SignExpansion sign_expansion(const Index& a) {
    require_admissible(a);
    const std::size_t r = a.depth();
    SignExpansion out;
    out.reserve(std::size_t{1} << r);
    const Rational magnitude(BigInt(1), BigInt(1) << static_cast<mp_bitcnt_t>(r));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        SignTerm term{magnitude, std::vector<int>(r, 1)};
        for (std::size_t i = 0; i < r; ++i) {
            if ((mask >> (r - 1 - i)) & 1U) term.signs[i] = -1;
        }
        if (std::popcount(mask) % 2 == 1) term.coefficient = -term.coefficient;
        out.push_back(std::move(term));
    }
    return out;
}

Real oracle_partial_sum(const Index& a, std::uint64_t N, mpfr_prec_t prec, OracleForm form) {
    const std::size_t r = a.depth();
    std::vector<Real> partial(r, Real(prec));
    std::vector<Real> term(r, Real(prec));
    Real base(prec);
    for (std::uint64_t m = 1; m <= N; ++m) {
        mpfr_set_ui(base.get(), static_cast<unsigned long>(2 * m - 1), MPFR_RNDN);
        if (form == OracleForm::hurwitz) mpfr_div_2ui(base.get(), base.get(), 1, MPFR_RNDN);
        for (std::size_t i = 0; i < r; ++i) {
            if (i + 1 < r && partial[i + 1].is_zero()) {
                mpfr_set_zero(term[i].get(), 1);
                continue;
            }
            mpfr_pow_si(term[i].get(), base.get(), -static_cast<long>(a[i]), MPFR_RNDN);
            if (i + 1 < r) mpfr_mul(term[i].get(), term[i].get(), partial[i + 1].get(), MPFR_RNDN);
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpfr_add(partial[i].get(), partial[i].get(), term[i].get(), MPFR_RNDN);
        }
    }
    Real out = partial[0];
    if (form == OracleForm::hurwitz) {
        mpfr_mul_2si(out.get(), out.get(), -static_cast<long>(a.weight()), MPFR_RNDN);
    }
    return out;
}

double oracle_tail_bound(const Index& a, std::uint64_t N) {
    require_admissible(a);
    const double a1 = a[0];
    const double q = static_cast<double>(a.depth() - 1);
    const double n = static_cast<double>(N);
    const double simple = std::pow(1.0 + std::log(n), q) * std::pow(n, 1.0 - a1) / (a1 - 1.0);

    // The inner sums are at most (1 + ln(n_1)/2)^q, and x^-a1 (1 + ln(x)/2)^q
    // is decreasing past M = 2N - 1 when 1 + ln(M)/2 >= q / (2 a1). Then the
    // odd-n tail is at most half the integral J_q(M), which satisfies
    // J_j = M^(1-a1) L^j / (a1 - 1) + j / (2 (a1 - 1)) J_{j-1}.
    const double M = 2.0 * n - 1.0;
    const double L = 1.0 + 0.5 * std::log(M);
    double sharp = INFINITY;
    if (L >= q / (2.0 * a1)) {
        const double head = std::pow(M, 1.0 - a1) / (a1 - 1.0);
        double J = head;
        for (int j = 1; j <= static_cast<int>(q); ++j) {
            J = head * std::pow(L, j) + j / (2.0 * (a1 - 1.0)) * J;
        }
        sharp = 0.5 * J;
    }
    return std::max(simple, sharp) * (1.0 + 1e-12);
}

BigApprox eval_oracle(const Index& a, std::uint64_t N, long digits, OracleForm form) {
    require_admissible(a);
    if (N < a.depth()) {
        throw UsageError("oracle cutoff must be at least the depth of " + a.display());
    }
    const mpfr_prec_t prec = bits_for_digits(digits);
    Real value = oracle_partial_sum(a, N, prec, form);
    // All terms are positive; each nested term sees at most r (N + 2) roundings.
    const double L = static_cast<double>(a.depth()) * (static_cast<double>(N) + 2.0);
    Real err(BigApprox::kErrPrec);
    mpfr_abs(err.get(), value.get(), MPFR_RNDU);
    mpfr_mul_d(err.get(), err.get(), 4.0 * L, MPFR_RNDU);
    mpfr_mul_2si(err.get(), err.get(), -static_cast<long>(prec), MPFR_RNDU);
    Real tail(BigApprox::kErrPrec);
    mpfr_set_d(tail.get(), oracle_tail_bound(a, N), MPFR_RNDU);
    mpfr_add(err.get(), err.get(), tail.get(), MPFR_RNDU);
    return BigApprox(std::move(value), std::move(err));
}

BigApprox eval_series(const Index& a, mpfr_prec_t prec, const Deadline& deadline) {
    require_admissible(a);
    if (a.depth() == 1) {
        const unsigned long s = a[0];
        Real z(prec);
        Real zerr(BigApprox::kErrPrec);
        add_rounding_error(zerr, z, mpfr_zeta_ui(z.get(), s, MPFR_RNDN));
        Real f(prec);
        Real ferr(BigApprox::kErrPrec);
        mpfr_set_ui(f.get(), 1, MPFR_RNDN);
        mpfr_div_2ui(f.get(), f.get(), s, MPFR_RNDN);
        add_rounding_error(ferr, f, mpfr_ui_sub(f.get(), 1, f.get(), MPFR_RNDN));
        return BigApprox(std::move(f), std::move(ferr)) * BigApprox(std::move(z), std::move(zerr));
    }
    GMemo memo;
    BigApprox total = BigApprox::zero(prec);
    for (const auto& term : sign_expansion(a)) {
        deadline.check();
        total = total + term.coefficient *
                            alternating_zeta(a.parts(), term.signs, prec, memo, deadline);
    }
    return total;
}

namespace {

// Rounds to digits + 10 places and folds the rounding into a power-of-ten
// radius, so fresh and cached results are bit-identical.
CacheEntry canonical_entry(const BigApprox& raw, long digits, Backend backend) {
    CacheEntry entry{raw.value().to_fixed(static_cast<int>(digits + 10)), 0, to_string(backend)};
    BigApprox widened = raw;
    Real extra(BigApprox::kErrPrec, 1);
    mpfr_div_ui(extra.get(), extra.get(), 10, MPFR_RNDU);
    for (long i = 1; i < digits + 10; ++i) mpfr_div_ui(extra.get(), extra.get(), 10, MPFR_RNDU);
    widened.widen(extra);
    entry.err_exp = *widened.err_exponent();
    return entry;
}

BigApprox from_entry(const CacheEntry& entry, long digits) {
    return BigApprox::from_decimal(entry.value, entry.err_exp, bits_for_digits(digits + 10));
}

} // namespace

Evaluator::Evaluator(EvalConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    if (const char* env = std::getenv("TFORGE_CACHE"); env != nullptr && *env != '\0') {
        cfg_.cache_path = std::filesystem::path(env);
    }
    if (cfg_.cache_path) cache_.emplace(*cfg_.cache_path);
}

BigApprox Evaluator::compute_fast(const Index& a, long digits, CacheEntry& entry) const {
    const Deadline deadline(cfg_.time_budget);
    long guard = 10 + 2 * static_cast<long>(a.depth());
    for (int attempt = 0; attempt < 3; ++attempt, guard *= 2) {
        const BigApprox raw = eval_series(a, bits_for_digits(digits + guard), deadline);
        entry = canonical_entry(raw, digits, Backend::fast);
        if (entry.err_exp <= -digits - 1) return from_entry(entry, digits);
    }
    throw PrecisionFailure("could not certify " + a.display() + " to " + std::to_string(digits) +
                           " digits");
}

BigApprox Evaluator::eval_index(const Index& a, long digits) {
    require_admissible(a);
    EvalConfig check = cfg_;
    check.digits = digits;
    check.validate();

    if (cfg_.backend == Backend::oracle) {
        ++backend_calls_;
        return eval_oracle(a, cfg_.oracle_cutoff, digits + 10);
    }

    const std::pair<std::string, long> key{a.to_string(), digits};
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++memo_hits_;
            return it->second;
        }
    }
    std::optional<BigApprox> result;
    if (cache_) {
        if (auto entry = cache_->load(a, digits); entry && entry->backend == "fast") {
            ++cache_hits_;
            result = from_entry(*entry, digits);
        }
    }
    if (!result) {
        ++backend_calls_;
        CacheEntry entry;
        result = compute_fast(a, digits, entry);
        if (cache_) cache_->store(a, digits, entry);
    }
    std::lock_guard lock(memo_mutex_);
    return memo_.emplace(key, *result).first->second;
}

BigApprox Evaluator::eval_atom(const Atom& x, long digits) {
    if (!x.is_log2()) return eval_index(x.index(), digits);
    EvalConfig check = cfg_;
    check.digits = digits;
    check.validate();
    const std::pair<std::string, long> key{"log2", digits};
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Real v(bits_for_digits(digits + 20));
    Real err(BigApprox::kErrPrec);
    add_rounding_error(err, v, mpfr_const_log2(v.get(), MPFR_RNDN));
    const BigApprox result =
        from_entry(canonical_entry(BigApprox(std::move(v), std::move(err)), digits, Backend::fast),
                   digits);
    std::lock_guard lock(memo_mutex_);
    return memo_.emplace(key, result).first->second;
}

BigApprox Evaluator::eval_combo(const Combo& c, long digits) {
    BigApprox total = BigApprox::zero(bits_for_digits(digits + 10));
    for (const auto& [monomial, q] : c.terms()) {
        BigApprox product(Real(bits_for_digits(digits + 10), 1));
        for (const auto& atom : monomial.atoms()) product = product * eval_atom(atom, digits);
        total = total + q * product;
    }
    return total;
}

BigApprox eval_atom(const Atom& x, const EvalConfig& cfg) { return Evaluator(cfg).eval_atom(x); }
BigApprox eval_index(const Index& a, const EvalConfig& cfg) { return Evaluator(cfg).eval_index(a); }
BigApprox eval_combo(const Combo& c, const EvalConfig& cfg) { return Evaluator(cfg).eval_combo(c); }

} // namespace tforge
