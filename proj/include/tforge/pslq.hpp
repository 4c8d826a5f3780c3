#pragma once

#include "tforge/rational.hpp"
#include "tforge/real.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tforge {

struct PslqOptions {
    mpfr_prec_t prec = 256;
    /// A candidate is reported once |sum c_i x_i| (absolute) drops below
    /// 10^detect_exp.
    long detect_exp = -50;
    /// Give up once the PSLQ lower bound on any relation's Euclidean norm
    /// exceeds coeff_bound * sqrt(n).
    BigInt coeff_bound = 1000000;
    std::size_t max_iterations = 100000;
};

struct PslqResult {
    /// Relation candidate (primitive, first nonzero entry positive), if any.
    std::optional<std::vector<BigInt>> relation;
    std::size_t iterations = 0;
    /// Lower bound on the norm of any relation not yet excluded, as a double.
    double norm_bound = 0.0;
};

/// Ferguson-Bailey PSLQ with gamma = 2/sqrt(3). Deterministic: no random
/// choices, ties broken by lowest index. Requires at least two inputs.
PslqResult pslq(std::span<const Real> x, const PslqOptions& options);

/// Divides out the gcd and makes the first nonzero entry positive.
void normalize_relation(std::vector<BigInt>& c);

} // namespace tforge
