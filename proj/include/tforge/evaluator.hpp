#pragma once

#include "tforge/algebra.hpp"
#include "tforge/big_approx.hpp"
#include "tforge/cache.hpp"
#include "tforge/index.hpp"
#include "tforge/polylog.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace tforge {

enum class Backend { fast, oracle };

std::string to_string(Backend b);
Backend parse_backend(std::string_view name);

struct EvalConfig {
    static constexpr long kMaxDigits = 200;

    long digits = 50;
    Backend backend = Backend::fast;
    std::uint64_t oracle_cutoff = 100000;
    std::optional<std::filesystem::path> cache_path;
    std::optional<double> time_budget;

    /// Throws UsageError for digits outside [1, 200], a zero cutoff or a
    /// negative time budget.
    void validate() const;
};

/// t(a) written as a signed combination of alternating sums: the parity
/// indicator (1 - (-1)^n)/2 on every summation variable.
struct SignTerm {
    Rational coefficient;
    std::vector<int> signs;
};
using SignExpansion = std::vector<SignTerm>;

/// 2^r entries ordered by sign vector, +1 before -1. Requires a admissible.
SignExpansion sign_expansion(const Index& a);

enum class OracleForm {
    odd,     // sum of (2m - 1)^-s
    hurwitz, // 2^-w times the sum of (m - 1/2)^-s
};

/// Truncated nested sum over odd n_1 <= 2N - 1 at `prec` bits, without error
/// accounting. Both forms give bit-identical results.
Real oracle_partial_sum(const Index& a, std::uint64_t N, mpfr_prec_t prec,
                        OracleForm form = OracleForm::odd);

/// Tail bound for truncation at n_1 <= 2N - 1: the larger of
/// (1 + ln N)^(r-1) N^(1-a_1) / (a_1 - 1) and a sharper integral bound.
double oracle_tail_bound(const Index& a, std::uint64_t N);

/// Direct-summation reference value; err covers rounding and the tail.
/// Requires a admissible and N >= depth(a).
BigApprox eval_oracle(const Index& a, std::uint64_t N, long digits = 30,
                      OracleForm form = OracleForm::odd);

/// Fast-backend value of t(a) before canonicalization, at `prec` bits.
/// Depth 1 uses (1 - 2^-s) zeta(s); deeper indices go through the sign
/// expansion into alternating sums.
BigApprox eval_series(const Index& a, mpfr_prec_t prec, const Deadline& deadline = {});

/// Evaluates atoms, indices and combos to a requested number of decimal
/// digits, consulting an in-process memo and the on-disk cache. Safe to use
/// from several threads at once.
class Evaluator {
public:
    explicit Evaluator(EvalConfig cfg = {});

    [[nodiscard]] const EvalConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const std::optional<EvalCache>& cache() const noexcept { return cache_; }

    BigApprox eval_atom(const Atom& x) { return eval_atom(x, cfg_.digits); }
    BigApprox eval_atom(const Atom& x, long digits);
    BigApprox eval_index(const Index& a) { return eval_index(a, cfg_.digits); }
    BigApprox eval_index(const Index& a, long digits);
    BigApprox eval_combo(const Combo& c) { return eval_combo(c, cfg_.digits); }
    BigApprox eval_combo(const Combo& c, long digits);

    /// Number of values computed by a backend (memo and cache hits excluded).
    [[nodiscard]] std::uint64_t backend_calls() const noexcept { return backend_calls_; }
    [[nodiscard]] std::uint64_t cache_hits() const noexcept { return cache_hits_; }
    [[nodiscard]] std::uint64_t memo_hits() const noexcept { return memo_hits_; }

private:
    BigApprox compute_fast(const Index& a, long digits, CacheEntry& entry) const;

    EvalConfig cfg_;
    std::optional<EvalCache> cache_;
    std::mutex memo_mutex_;
    std::map<std::pair<std::string, long>, BigApprox> memo_;
    std::atomic<std::uint64_t> backend_calls_{0};
    std::atomic<std::uint64_t> cache_hits_{0};
    std::atomic<std::uint64_t> memo_hits_{0};
};

// One-shot conveniences that build a fresh Evaluator from cfg.
BigApprox eval_atom(const Atom& x, const EvalConfig& cfg);
BigApprox eval_index(const Index& a, const EvalConfig& cfg);
BigApprox eval_combo(const Combo& c, const EvalConfig& cfg);

} // namespace tforge
