#pragma once

#include "tforge/big_approx.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace tforge {

/// Wall-clock budget for an evaluation; check() throws PrecisionFailure
/// once it has elapsed.
class Deadline {
public:
    Deadline() = default;
    explicit Deadline(std::optional<double> seconds);
    void check() const;

private:
    std::optional<std::chrono::steady_clock::time_point> until_;
};

using Letter = int;
using Word = std::vector<Letter>;

/// Memo of iterated-integral values for one working precision.
using GMemo = std::map<Word, BigApprox>;

/// Goncharov iterated integral G(a_1, ..., a_n; 1/2) with integer letters.
/// Requires the last letter to be nonzero. Computed as a nested
/// multiple-polylogarithm series whose terms decay at least like 2^-n,
/// truncated with a rigorous tail bound.
BigApprox g_half(std::span<const Letter> letters, mpfr_prec_t prec);

/// G(a_1, ..., a_n; 1) by splitting the path at 1/2 and mapping the upper
/// piece through x -> 1 - x. Requires a_1 != 1 and a_n != 0 (convergence).
/// Integer letters keep every nonzero letter of both pieces at distance
/// >= 1 from the origin, so both series converge at least like 2^-n.
BigApprox g_one(std::span<const Letter> letters, mpfr_prec_t prec, GMemo& memo,
                const Deadline& deadline = {});

/// Alternating multiple zeta sum over n_1 > ... > n_r > 0 of
/// prod signs_i^{n_i} n_i^{-parts_i}. Requires parts_1 >= 2 or signs_1 = -1.
BigApprox alternating_zeta(std::span<const std::uint32_t> parts, std::span<const int> signs,
                           mpfr_prec_t prec, GMemo& memo, const Deadline& deadline = {});

} // namespace tforge
