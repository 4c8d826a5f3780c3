#pragma once

#include "tforge/evaluator.hpp"
#include "tforge/relations.hpp"

#include <json.hpp>

namespace tforge {

struct WalkthroughReport {
    /// Shipped relations, stuffle relation, rewritten pair, determinant,
    /// final expressions and every numeric residual.
    nlohmann::ordered_json details;
    /// The rewritten pair, then t(5), t(2,3) and t(4,1) in the weight-5 basis.
    std::vector<std::pair<Monomial, ExactRelation>> derived;
    Rational determinant;
    bool pass = false;
};

/// End-to-end weight-5 reproduction from the shipped relations: eliminates
/// t(2)t(3) with the stuffle relation, inverts the resulting 2x2 system,
/// expresses t(5), t(2,3) and t(4,1) in the conjectural basis, and checks
/// every derived identity symbolically and to 10^-(digits - 10) numerically.
WalkthroughReport weight5_walkthrough(long digits, const std::vector<ExactRelation>& shipped,
                                      Evaluator& evaluator);

} // namespace tforge
