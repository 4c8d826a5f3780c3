#include "tforge/relations.hpp"

#include "tforge/errors.hpp"
#include "tforge/pslq.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace tforge {

namespace {

nlohmann::ordered_json integer_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

nlohmann::ordered_json approx_json(const BigApprox& a) {
    nlohmann::ordered_json j;
    j["value"] = a.value().to_sci(6);
    const auto ve = a.value_exponent();
    j["value_exp"] = ve ? nlohmann::ordered_json(*ve) : nlohmann::ordered_json(nullptr);
    const auto ee = a.err_exponent();
    j["err_exp"] = ee ? nlohmann::ordered_json(*ee) : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace

nlohmann::ordered_json NumericRelation::to_json() const {
    nlohmann::ordered_json j;
    j["labels"] = labels;
    auto& c = j["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& v : coeffs) c.push_back(integer_json(v));
    j["residual"] = approx_json(residual);
    j["digits"] = digits_used;
    j["coeff_bound"] = integer_json(coeff_bound);
    j["credible"] = credible;
    return j;
}

std::optional<NumericRelation> find_integer_relation(std::span<const BigApprox> values,
                                                     long digits, const BigInt& coeff_bound,
                                                     std::vector<std::string> labels) {
    if (values.size() < 2) {
        throw UsageError("integer relation search needs at least two values");
    }
    if (digits <= 10) {
        throw UsageError("integer relation search needs more than 10 digits");
    }
    if (labels.empty()) {
        for (std::size_t i = 0; i < values.size(); ++i) labels.push_back("x" + std::to_string(i));
    }
    if (labels.size() != values.size()) {
        throw UsageError("one label per value required");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].err_at_most_pow10(-digits)) {
            throw PrecisionFailure("value " + labels[i] + " is not known to 10^-" +
                                   std::to_string(digits));
        }
    }
    PslqOptions options;
    options.prec = bits_for_digits(digits + 10);
    options.detect_exp = -(digits - 10);
    options.coeff_bound = coeff_bound;
    std::vector<Real> x;
    x.reserve(values.size());
    for (const auto& v : values) {
        Real r(options.prec);
        mpfr_set(r.get(), v.value().get(), MPFR_RNDN);
        x.push_back(std::move(r));
    }
    const PslqResult found = pslq(x, options);
    if (!found.relation) return std::nullopt;
    const auto& c = *found.relation;
    if (std::ranges::any_of(c, [&](const BigInt& v) { return abs(v) > coeff_bound; })) {
        return std::nullopt;
    }
    BigApprox residual = BigApprox::zero(bits_for_digits(digits + 10));
    for (std::size_t i = 0; i < c.size(); ++i) residual = residual + c[i] * values[i];
    if (!residual.abs_value_below_pow10(-(digits - 10))) return std::nullopt;
    BigInt height = 0;
    long support = 0;
    for (const auto& v : c) {
        if (v == 0) continue;
        ++support;
        height = std::max<BigInt>(height, abs(v));
    }
    const double floor_digits =
        static_cast<double>(support - 1) * std::log10(height.get_d());
    const bool credible = floor_digits <= static_cast<double>(digits - 20);
    return NumericRelation{std::move(labels), c, std::move(residual), digits, coeff_bound, credible};
}

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::paper_input: return "paper-input";
    case Provenance::stuffle: return "stuffle";
    case Provenance::elimination: return "elimination";
    case Provenance::numeric_promoted: return "numeric-promoted";
    }
    return "unknown";
}

Provenance parse_provenance(std::string_view s) {
    if (s == "paper-input") return Provenance::paper_input;
    if (s == "stuffle") return Provenance::stuffle;
    if (s == "elimination") return Provenance::elimination;
    if (s == "numeric-promoted") return Provenance::numeric_promoted;
    throw UsageError("unknown provenance '" + std::string(s) + "'");
}

void ExactRelation::validate() const {
    if (combo.is_zero()) {
        throw UsageError("relation combo must be nonzero");
    }
    if (!combo.weight()) {
        throw UsageError("relation " + combo.to_string() + " is not weight-homogeneous");
    }
    if (provenance == Provenance::numeric_promoted && !certificate) {
        throw UsageError("numeric-promoted relations need a residual certificate");
    }
}

nlohmann::ordered_json ExactRelation::to_json() const {
    nlohmann::ordered_json j;
    j["combo"] = tforge::to_json(combo);
    j["provenance"] = to_string(provenance);
    j["source"] = source;
    if (!sources.empty()) {
        j["sources"] = sources;
        auto& m = j["multipliers"] = nlohmann::ordered_json::array();
        for (const auto& q : multipliers) m.push_back(tforge::to_string(q));
    }
    if (certificate) j["certificate"] = approx_json(*certificate);
    return j;
}

std::filesystem::path default_relations_path() {
    return std::filesystem::path(TFORGE_DATA_DIR) / "paper_relations.json";
}

std::vector<ExactRelation> load_relations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open relations file " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("relations file " + path.string() + ": " + e.what());
    }
    if (!j.is_array()) {
        throw UsageError("relations file must hold a JSON array");
    }
    std::vector<ExactRelation> out;
    for (const auto& item : j) {
        try {
            ExactRelation rel{combo_from_json(item.at("combo")),
                              parse_provenance(item.at("provenance").get<std::string>()),
                              item.value("source", std::string{}), {}, {}, std::nullopt};
            rel.validate();
            out.push_back(std::move(rel));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("relations file " + path.string() + ": " + e.what());
        }
    }
    return out;
}

ExactRelation stuffle_relation(const Index& u, const Index& v) {
    Combo c = Combo::of(u) * Combo::of(v) - stuffle(u, v);
    ExactRelation rel{std::move(c), Provenance::stuffle,
                      "stuffle " + u.display() + "*" + v.display(), {}, {}, std::nullopt};
    rel.validate();
    return rel;
}

std::vector<ExactRelation> stuffle_relations(std::uint32_t k) {
    std::vector<ExactRelation> out;
    for (std::uint32_t w = 2; w + 2 <= k && w <= k - w; ++w) {
        const auto left = admissible_indices(w);
        const auto right = admissible_indices(k - w);
        for (const auto& u : left) {
            for (const auto& v : right) {
                if (w == k - w && v < u) continue;
                out.push_back(stuffle_relation(u, v));
            }
        }
    }
    return out;
}

Combo solved_expression(const ExactRelation& rel, const Monomial& target) {
    const Rational c = rel.combo.coeff(target);
    if (c == 0) {
        throw UsageError("relation does not involve " + target.key());
    }
    // c*target + rest = 0  =>  target = -(1/c) rest
    Combo rest = rel.combo - Combo(target, c);
    return Rational(-1 / c) * rest;
}

EliminationResult exact_eliminate(const std::vector<ExactRelation>& rels,
                                  const std::vector<Monomial>& eliminate,
                                  const std::vector<Monomial>& targets) {
    if (!rels.empty()) {
        const auto k = rels.front().combo.weight();
        for (const auto& r : rels) {
            if (!k || r.combo.weight() != k) {
                throw UsageError("elimination needs weight-homogeneous relations of equal weight");
            }
        }
    }
    EliminationResult result;
    for (const auto& target : targets) {
        std::vector<Monomial> columns;
        for (const auto& m : eliminate) {
            if (m != target && std::ranges::find(columns, m) == columns.end()) columns.push_back(m);
        }
        for (const auto& m : targets) {
            if (m != target && std::ranges::find(columns, m) == columns.end()) columns.push_back(m);
        }
        columns.push_back(target);

        struct Row {
            Combo combo;
            std::vector<Rational> lambda;
        };
        std::vector<Row> rows;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            std::vector<Rational> lambda(rels.size(), 0);
            lambda[i] = 1;
            rows.push_back({rels[i].combo, std::move(lambda)});
        }
        std::vector<bool> used(rows.size(), false);
        std::optional<std::size_t> target_row;
        for (const auto& col : columns) {
            std::optional<std::size_t> pivot;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!used[i] && rows[i].combo.coeff(col) != 0) {
                    pivot = i;
                    break;
                }
            }
            if (!pivot) continue;
            used[*pivot] = true;
            const Rational p = rows[*pivot].combo.coeff(col);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == *pivot) continue;
                const Rational c = rows[i].combo.coeff(col);
                if (c == 0) continue;
                const Rational f = c / p;
                rows[i].combo -= f * rows[*pivot].combo;
                for (std::size_t s = 0; s < rels.size(); ++s) {
                    rows[i].lambda[s] -= f * rows[*pivot].lambda[s];
                }
            }
            if (col == target) target_row = pivot;
        }
        if (!target_row) {
            result.unresolved.push_back(target);
            continue;
        }
        const Row& row = rows[*target_row];
        const Rational inv = 1 / row.combo.coeff(target);
        ExactRelation derived{inv * row.combo, Provenance::elimination,
                              "elimination for " + target.key(), {}, {}, std::nullopt};
        for (std::size_t s = 0; s < rels.size(); ++s) {
            if (row.lambda[s] == 0) continue;
            derived.sources.push_back(s);
            derived.multipliers.push_back(inv * row.lambda[s]);
        }
        derived.validate();
        result.derived.emplace_back(target, std::move(derived));
    }
    return result;
}

Combo elimination_residual(const ExactRelation& derived, const std::vector<ExactRelation>& rels) {
    Combo residual = derived.combo;
    for (std::size_t i = 0; i < derived.sources.size(); ++i) {
        residual -= derived.multipliers[i] * rels.at(derived.sources[i]).combo;
    }
    return residual;
}

Combo BasisExpression::as_relation() const {
    Combo c = Combo::of(target);
    for (const auto& [b, q] : coefficients) c -= Combo::of(b, q);
    return c;
}

nlohmann::ordered_json BasisExpression::to_json() const {
    nlohmann::ordered_json j;
    j["target"] = target.display();
    auto& coeffs = j["coefficients"] = nlohmann::ordered_json::object();
    for (const auto& [b, q] : coefficients) coeffs[b.display()] = tforge::to_string(q);
    j["residual"] = approx_json(residual);
    j["provenance"] = provenance;
    if (relation) j["relation"] = relation->to_json();
    return j;
}

std::optional<BasisExpression> express_in_basis(const Index& x, std::uint32_t k, long digits,
                                                const BigInt& coeff_bound, Evaluator& evaluator) {
    require_admissible(x);
    if (x.weight() != k) {
        throw UsageError(x.display() + " does not have weight " + std::to_string(k));
    }
    const auto basis = conjectural_basis(k);
    const mpfr_prec_t prec = bits_for_digits(digits + 10);
    if (std::ranges::find(basis, x) != basis.end()) {
        return BasisExpression{x, {{x, Rational(1)}}, BigApprox::zero(prec), "basis", std::nullopt};
    }
    std::vector<BigApprox> values;
    std::vector<std::string> labels;
    values.push_back(evaluator.eval_index(x, digits));
    labels.push_back(x.display());
    for (const auto& b : basis) {
        values.push_back(evaluator.eval_index(b, digits));
        labels.push_back(b.display());
    }
    auto relation = find_integer_relation(values, digits, coeff_bound, labels);
    if (!relation || !relation->credible || relation->coeffs[0] == 0) return std::nullopt;

    BasisExpression out{x, {}, values[0], "numeric", std::nullopt};
    const BigInt& lead = relation->coeffs[0];
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const BigInt& c = relation->coeffs[i + 1];
        if (c == 0) continue;
        Rational q(-c, lead);
        q.canonicalize();
        out.coefficients.emplace_back(basis[i], q);
        out.residual = out.residual - q * values[i + 1];
    }
    out.relation = std::move(relation);
    return out;
}

nlohmann::ordered_json IndependenceReport::to_json() const {
    nlohmann::ordered_json j;
    j["weight"] = weight;
    j["digits"] = digits;
    j["coeff_bound"] = integer_json(coeff_bound);
    j["size"] = size;
    j["relation_found"] = relation_found();
    j["inconclusive"] = inconclusive();
    j["relation"] = relation ? relation->to_json() : nlohmann::ordered_json(nullptr);
    return j;
}

IndependenceReport independence_scan(std::uint32_t k, long digits, const BigInt& coeff_bound,
                                     Evaluator& evaluator) {
    const auto basis = conjectural_basis(k);
    IndependenceReport report{k, digits, coeff_bound, basis.size(), std::nullopt};
    std::vector<BigApprox> values;
    std::vector<std::string> labels;
    for (const auto& b : basis) {
        values.push_back(evaluator.eval_index(b, digits));
        labels.push_back(b.display());
    }
    if (values.size() < 2) {
        // A single value is dependent only if it vanishes.
        if (values.size() == 1 && values[0].abs_value_below_pow10(-(digits - 10))) {
            report.relation = NumericRelation{labels, {BigInt(1)}, values[0], digits, coeff_bound};
        }
        return report;
    }
    report.relation = find_integer_relation(values, digits, coeff_bound, labels);
    return report;
}

} // namespace tforge
