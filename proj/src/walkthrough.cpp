#include "tforge/walkthrough.hpp"

#include "tforge/errors.hpp"
#include "tforge/report.hpp"

#include <algorithm>

namespace tforge {

namespace {

Monomial t_of(std::initializer_list<Index::Part> parts) {
    return Monomial::of(Atom::t(Index(parts)));
}

nlohmann::ordered_json residual_data(const BigApprox& r) {
    nlohmann::ordered_json j;
    j["value"] = r.value().to_sci(6);
    const auto ve = r.value_exponent();
    j["residual_exp"] = ve ? nlohmann::ordered_json(*ve) : nlohmann::ordered_json(nullptr);
    const auto ee = r.err_exponent();
    j["err_exp"] = ee ? nlohmann::ordered_json(*ee) : nlohmann::ordered_json(nullptr);
    return j;
}

bool only_basis_labels(const Combo& expression, const std::vector<Index>& basis) {
    return std::ranges::all_of(expression.terms(), [&](const auto& kv) {
        const Monomial& m = kv.first;
        return m.degree() == 1 && !m.atoms()[0].is_log2() &&
               std::ranges::find(basis, m.atoms()[0].index()) != basis.end();
    });
}

} // namespace

WalkthroughReport weight5_walkthrough(long digits, const std::vector<ExactRelation>& shipped,
                                      Evaluator& evaluator) {
    std::vector<ExactRelation> eq1;
    std::vector<ExactRelation> eq2;
    for (const auto& r : shipped) {
        if (r.source == "Eq.(1)") eq1.push_back(r);
        if (r.source == "Eq.(2)") eq2.push_back(r);
    }
    if (eq1.size() != 2 || eq2.size() != 2) {
        throw UsageError("relations file must provide two Eq.(1) and two Eq.(2) relations");
    }

    const Monomial t5 = t_of({5});
    const Monomial t23 = t_of({2, 3});
    const Monomial t32 = t_of({3, 2});
    const Monomial t212 = t_of({2, 1, 2});
    const Monomial t41 = t_of({4, 1});
    const Monomial product = t_of({2}) * t_of({3});
    const Monomial log_term = Monomial::of(Atom::log2()) * t_of({4});
    const auto basis = conjectural_basis(5);

    WalkthroughReport report;
    auto& details = report.details;
    auto checks = nlohmann::ordered_json::array();
    bool pass = true;
    auto check = [&](std::string name, bool ok, std::string detail,
                     nlohmann::ordered_json data = nullptr) {
        pass = pass && ok;
        checks.push_back(make_check(std::move(name), ok, std::move(detail), std::move(data)));
    };

    const ExactRelation stuffle_rel = stuffle_relation(Index{2}, Index{3});
    details["stuffle_relation"] = stuffle_rel.to_json();

    // Step 1: eliminate t(2)t(3) from the first pair.
    std::vector<ExactRelation> step1_inputs = eq1;
    step1_inputs.push_back(stuffle_rel);
    const auto step1 = exact_eliminate(step1_inputs, {product}, {t32, t212});
    check("rewritten pair resolved", step1.unresolved.empty(),
          std::to_string(step1.derived.size()) + " of 2 targets expressed in t(5), t(2,3)");
    if (!step1.unresolved.empty()) {
        report.pass = false;
        details["checks"] = std::move(checks);
        details["pass"] = false;
        return report;
    }
    auto pair_json = nlohmann::ordered_json::array();
    for (const auto& [target, rel] : step1.derived) {
        nlohmann::ordered_json row;
        row["target"] = target.key();
        row["expression"] = to_json(solved_expression(rel, target));
        pair_json.push_back(row);
        check("symbolic recheck " + target.key(), elimination_residual(rel, step1_inputs).is_zero(),
              "derived relation minus its source combination is the zero combo");
    }

    details["rewritten_pair"] = std::move(pair_json);

    // Step 2: the 2x2 system in (t(5), t(2,3)) and its determinant.
    const Combo e32 = solved_expression(step1.derived[0].second, t32);
    const Combo e212 = solved_expression(step1.derived[1].second, t212);
    report.determinant = e32.coeff(t5) * e212.coeff(t23) - e32.coeff(t23) * e212.coeff(t5);
    details["matrix"] = nlohmann::ordered_json::array(
        {nlohmann::ordered_json::array({to_string(e32.coeff(t5)), to_string(e32.coeff(t23))}),
         nlohmann::ordered_json::array({to_string(e212.coeff(t5)), to_string(e212.coeff(t23))})});
    details["determinant"] = to_string(report.determinant);
    details["invertible"] = report.determinant != 0;
    check("rewritten system invertible", report.determinant != 0,
          "det = " + to_string(report.determinant));

    std::vector<ExactRelation> step2_inputs{step1.derived[0].second, step1.derived[1].second};
    const auto step2 = exact_eliminate(step2_inputs, {t5, t23}, {t5, t23});

    // Step 3: t(4,1) from all four relations plus the stuffle relation.
    std::vector<ExactRelation> step3_inputs = eq1;
    step3_inputs.insert(step3_inputs.end(), eq2.begin(), eq2.end());
    step3_inputs.push_back(stuffle_rel);
    const auto step3 = exact_eliminate(step3_inputs, {product, log_term, t5, t23}, {t41});

    check("basis expressions resolved", step2.unresolved.empty() && step3.unresolved.empty(),
          "t(5), t(2,3), t(4,1) expressed in C_5");
    auto expr_json = nlohmann::ordered_json::array();
    auto record = [&](const Monomial& target, const ExactRelation& rel,
                      const std::vector<ExactRelation>& inputs) {
        const Combo expression = solved_expression(rel, target);
        nlohmann::ordered_json row;
        row["target"] = target.key();
        row["expression"] = to_json(expression);
        row["text"] = target.key() + " = " + expression.to_string();
        const bool in_basis = only_basis_labels(expression, basis);
        row["in_basis"] = in_basis;
        expr_json.push_back(row);
        check("basis labels only " + target.key(), in_basis, expression.to_string());
        check("symbolic recheck " + target.key(), elimination_residual(rel, inputs).is_zero(),
              "derived relation minus its source combination is the zero combo");
    };
    for (const auto& [target, rel] : step2.derived) record(target, rel, step2_inputs);
    for (const auto& [target, rel] : step3.derived) record(target, rel, step3_inputs);

    details["expressions"] = std::move(expr_json);

    report.derived = step1.derived;
    report.derived.insert(report.derived.end(), step2.derived.begin(), step2.derived.end());
    report.derived.insert(report.derived.end(), step3.derived.begin(), step3.derived.end());

    // Numeric certificate for every derived identity.
    for (const auto& [target, rel] : report.derived) {
        const BigApprox r = evaluator.eval_combo(rel.combo, digits);
        const bool ok = r.abs_upper_below_pow10(-(digits - 10));
        check("numeric residual " + target.key(), ok,
              "|residual| < 1e-" + std::to_string(digits - 10), residual_data(r));
    }
    report.pass = pass;
    details["checks"] = std::move(checks);
    details["pass"] = pass;
    return report;
}

} // namespace tforge
