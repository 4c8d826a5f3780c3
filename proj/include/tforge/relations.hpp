#pragma once

#include "tforge/algebra.hpp"
#include "tforge/big_approx.hpp"
#include "tforge/evaluator.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tforge {

/// Default maximum |coefficient| for relation searches.
inline const BigInt kDefaultCoeffBound = 1000000;

/// Integer vector c with sum c_i x_i numerically zero, plus its residual
/// certificate. Coefficients are primitive with a positive leading entry.
struct NumericRelation {
    std::vector<std::string> labels;
    std::vector<BigInt> coeffs;
    BigApprox residual;
    long digits_used;
    BigInt coeff_bound;
    /// False when a random vector of this height and support would already
    /// reach within 10 orders of the detection threshold, so the hit cannot
    /// be told apart from noise at this precision.
    bool credible = true;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Searches for an integer relation among `values` with max |c_i| <=
/// coeff_bound and |sum c_i x_i| < 10^-(digits - 10). Throws PrecisionFailure
/// when some value is not known to 10^-digits, UsageError for fewer than two
/// values. Deterministic. A relation of height H on m nonzero entries is
/// marked non-credible when (m - 1) log10 H > digits - 20.
std::optional<NumericRelation> find_integer_relation(std::span<const BigApprox> values,
                                                     long digits, const BigInt& coeff_bound,
                                                     std::vector<std::string> labels = {});

enum class Provenance { paper_input, stuffle, elimination, numeric_promoted };

std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view s);

/// A nonzero weight-homogeneous Combo asserted to vanish.
struct ExactRelation {
    Combo combo;
    Provenance provenance;
    std::string source;
    /// For derived relations: combo == sum multipliers[i] * inputs[sources[i]].
    std::vector<std::size_t> sources;
    std::vector<Rational> multipliers;
    /// Residual evidence for numeric-promoted relations.
    std::optional<BigApprox> certificate;

    /// Throws UsageError when the combo is zero or not weight-homogeneous.
    void validate() const;
    [[nodiscard]] std::uint64_t weight() const { return *combo.weight(); }
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Reads the shipped relation list [{combo, provenance, source}, ...].
std::vector<ExactRelation> load_relations(const std::filesystem::path& path);
std::filesystem::path default_relations_path();

/// T(u) T(v) - stuffle(u, v) = 0.
ExactRelation stuffle_relation(const Index& u, const Index& v);
/// The stuffle relation for every unordered pair of admissible indices whose
/// weights add up to k.
std::vector<ExactRelation> stuffle_relations(std::uint32_t k);

/// For a relation with coefficient 1 on `target`, the combo it equals:
/// target = expression.
Combo solved_expression(const ExactRelation& rel, const Monomial& target);

struct EliminationResult {
    /// Derived relations, one per resolved target, in target order. Each has
    /// coefficient 1 on its target.
    std::vector<std::pair<Monomial, ExactRelation>> derived;
    std::vector<Monomial> unresolved;
};

/// Gaussian elimination over the rationals. For each target, eliminates the
/// labels in `eliminate` (in order) and the other targets, then pivots on the
/// target. Pivot rows are chosen as the lowest input position with a nonzero
/// entry.
EliminationResult exact_eliminate(const std::vector<ExactRelation>& rels,
                                  const std::vector<Monomial>& eliminate,
                                  const std::vector<Monomial>& targets);

/// derived.combo - sum multipliers * sources; zero when the derivation is exact.
Combo elimination_residual(const ExactRelation& derived, const std::vector<ExactRelation>& rels);

/// x written in the conjectural basis of its weight.
struct BasisExpression {
    Index target;
    std::vector<std::pair<Index, Rational>> coefficients;
    BigApprox residual;
    /// "basis" for basis elements, otherwise "numeric".
    std::string provenance;
    std::optional<NumericRelation> relation;

    /// t(target) - sum q_i t(basis_i) as a Combo.
    [[nodiscard]] Combo as_relation() const;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Runs find_integer_relation on [t(x)] ++ values of conjectural_basis(k).
/// Basis elements return their identity expression without a search.
/// Non-credible hits count as misses.
std::optional<BasisExpression> express_in_basis(const Index& x, std::uint32_t k, long digits,
                                                const BigInt& coeff_bound, Evaluator& evaluator);

struct IndependenceReport {
    std::uint32_t weight;
    long digits;
    BigInt coeff_bound;
    std::size_t size;
    std::optional<NumericRelation> relation;

    /// A credible relation: counterexample candidate.
    [[nodiscard]] bool relation_found() const { return relation && relation->credible; }
    /// A hit at the noise level of this precision.
    [[nodiscard]] bool inconclusive() const { return relation && !relation->credible; }
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Integer-relation search among the conjectural basis values alone. A found
/// relation is a counterexample candidate.
IndependenceReport independence_scan(std::uint32_t k, long digits, const BigInt& coeff_bound,
                                     Evaluator& evaluator);

} // namespace tforge
