#include "tforge/commands.hpp"

#include "tforge/errors.hpp"
#include "tforge/parallel.hpp"
#include "tforge/relations.hpp"
#include "tforge/walkthrough.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

namespace tforge {

namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json optional_exp(std::optional<long> e) { return e ? Json(*e) : Json(nullptr); }

Json evaluator_config(const Evaluator& ev) {
    const auto& cfg = ev.config();
    Json j;
    j["digits"] = cfg.digits;
    j["backend"] = to_string(cfg.backend);
    j["cutoff"] = cfg.oracle_cutoff;
    j["cache"] = cfg.cache_path ? Json(cfg.cache_path->string()) : Json(nullptr);
    j["time_budget"] = cfg.time_budget ? Json(*cfg.time_budget) : Json(nullptr);
    return j;
}

Json parts_json(const Index& a) {
    return Json(std::vector<Index::Part>(a.parts().begin(), a.parts().end()));
}

Json residual_json(const BigApprox& r) {
    Json j;
    j["value"] = r.value().to_sci(6);
    j["residual_exp"] = optional_exp(r.value_exponent());
    j["err_exp"] = optional_exp(r.err_exponent());
    return j;
}

std::string residual_text(const Json& r) {
    const auto& e = r.at("residual_exp");
    return e.is_null() ? "exact 0" : "1e" + std::to_string(e.get<long>());
}

} // namespace

RunReport cmd_basis(std::uint32_t k, bool mzv) {
    const auto start = Clock::now();
    if (k < 2 || k > kBasisWeightCap) {
        throw UsageError("--weight must lie in [2, " + std::to_string(kBasisWeightCap) + "]");
    }
    RunReport report;
    report.command = mzv ? "basis --mzv" : "basis";
    report.config["weight"] = k;
    report.config["mzv"] = mzv;
    const auto indices = mzv ? mzv_basis_indices(k) : conjectural_basis(k);
    const auto dims = predicted_dims(k);
    auto& r = report.results;
    r["weight"] = k;
    r["set"] = mzv ? "B_k" : "C_k";
    auto& list = r["indices"] = Json::array();
    for (const auto& a : indices) list.push_back(parts_json(a));
    r["count"] = indices.size();
    r["f_k"] = dims.fibonacci;
    r["d_k"] = dims.zagier;
    const std::uint64_t expected = mzv ? dims.zagier : dims.fibonacci;
    report.status = indices.size() == expected ? Status::pass : Status::fail;
    report.timing_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_eval(const std::string& index_text, Evaluator& evaluator) {
    const auto start = Clock::now();
    const Index a = Index::parse(index_text);
    require_admissible(a);
    RunReport report;
    report.command = "eval";
    report.config = evaluator_config(evaluator);
    const long digits = evaluator.config().digits;
    const BigApprox v = evaluator.eval_index(a);
    auto& r = report.results;
    r["index"] = a.to_string();
    r["display"] = a.display();
    r["weight"] = a.weight();
    r["depth"] = a.depth();
    r["digits"] = digits;
    r["backend"] = to_string(evaluator.config().backend);
    if (evaluator.config().backend == Backend::oracle) {
        r["cutoff"] = evaluator.config().oracle_cutoff;
    }
    r["value"] = v.value().to_fixed(static_cast<int>(digits));
    r["err_exp"] = optional_exp(v.err_exponent());
    report.status = Status::pass;
    report.timing_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_verify_paper(long digits, const std::filesystem::path& relations,
                           Evaluator& evaluator) {
    const auto start = Clock::now();
    if (digits <= 10) {
        throw UsageError("verify-paper needs --digits above 10");
    }
    RunReport report;
    report.command = "verify-paper";
    report.config = evaluator_config(evaluator);
    report.config["digits"] = digits;
    report.config["relations"] = relations.string();
    const long threshold = -(digits - 10);
    Json checks = Json::array();
    bool pass = true;
    auto check = [&](std::string name, bool ok, std::string detail, Json data = nullptr) {
        pass = pass && ok;
        checks.push_back(make_check(std::move(name), ok, std::move(detail), std::move(data)));
    };

    // Expected listings.
    const std::vector<std::vector<Index>> listed{
        {Index{2, 1}, Index{3}},
        {Index{2, 1, 1}, Index{2, 2}, Index{3, 1}},
        {Index{2, 1, 1, 1}, Index{2, 1, 2}, Index{2, 2, 1}, Index{3, 1, 1}, Index{3, 2}},
    };
    for (std::uint32_t k = 3; k <= 5; ++k) {
        const auto got = conjectural_basis(k);
        std::string text;
        for (const auto& a : got) text += (text.empty() ? "" : ", ") + a.display();
        check("listing C_" + std::to_string(k), got == listed[k - 3], "{" + text + "}");
    }

    // Enumeration sizes against both recurrences.
    {
        bool ok = true;
        std::uint64_t f_prev = 1, f = 2;   // f_2, f_3
        std::uint64_t d2 = 1, d3 = 1, d4 = 1;
        for (std::uint32_t k = 2; k <= 20; ++k) {
            std::uint64_t fk = 0, dk = 0;
            if (k == 2) fk = f_prev;
            else if (k == 3) fk = f;
            else {
                fk = f + f_prev;
                f_prev = f;
                f = fk;
            }
            if (k <= 4) dk = 1;
            else {
                dk = d3 + d2;
                d2 = d3;
                d3 = d4;
                d4 = dk;
            }
            ok = ok && conjectural_basis(k).size() == fk && compositions(k, {2, 3}).size() == dk &&
                 predicted_dims(k) == PredictedDims{fk, dk};
        }
        check("counts f_k and d_k for k <= 20", ok,
              "|C_k| = f_k (Fibonacci), |{2,3}-compositions of k| = d_k");
    }

    // Polar hyperplanes on the grid r <= 4, i <= r, k <= 10.
    {
        bool ok = true;
        for (std::uint32_t r = 1; r <= 4; ++r) {
            std::set<std::pair<std::uint32_t, std::uint32_t>> listed_set{{1, 0}};
            if (r >= 2) {
                listed_set.insert({2, 1});
                for (std::uint32_t j = 0; 2 * j <= 10; ++j) listed_set.insert({2, 2 * j});
            }
            for (std::uint32_t i = 3; i <= r; ++i) {
                for (std::uint32_t k = 0; k <= 10; ++k) listed_set.insert({i, k});
            }
            for (std::uint32_t i = 1; i <= r; ++i) {
                for (std::uint32_t k = 0; k <= 10; ++k) {
                    ok = ok && is_polar(r, {i, k}) == listed_set.contains({i, k});
                }
            }
        }
        check("polar hyperplane classifier", ok,
              "H_{1,0}, H_{2,1}, H_{2,2k}, H_{i,k} (3 <= i <= r) on r <= 4, k <= 10");
    }

    // t(2)t(3) = t(2,3) + t(3,2) + t(5).
    {
        const Combo product = Combo::of(Index{2}) * Combo::of(Index{3});
        const Combo expanded = Combo::of(Index{2, 3}) + Combo::of(Index{3, 2}) + Combo::of(Index{5});
        check("stuffle fact (exact)", normalize(product) == expanded,
              "normalize(t(2)*t(3)) = " + normalize(product).to_string());
        const BigApprox r = evaluator.eval_combo(product - expanded, digits);
        check("stuffle fact (numeric)", r.abs_upper_below_pow10(threshold),
              "|t(2)t(3) - t(2,3) - t(3,2) - t(5)| < 1e" + std::to_string(threshold),
              residual_json(r));
    }

    const auto shipped = load_relations(relations);
    for (const auto& rel : shipped) {
        const BigApprox r = evaluator.eval_combo(rel.combo, digits);
        check(rel.source + " residual", r.abs_upper_below_pow10(threshold),
              rel.combo.to_string() + " = 0", residual_json(r));
    }

    const auto walk = weight5_walkthrough(digits, shipped, evaluator);
    check("weight-5 walkthrough", walk.pass, "determinant " + to_string(walk.determinant));

    report.results["digits"] = digits;
    report.results["threshold_exp"] = threshold;
    report.results["checks"] = std::move(checks);
    report.results["walkthrough"] = walk.details;
    report.status = pass ? Status::pass : Status::fail;
    report.timing_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_scan(std::uint32_t k, long digits, const BigInt& coeff_bound,
                   const std::filesystem::path& relations, Evaluator& evaluator, unsigned jobs) {
    const auto start = Clock::now();
    if (k < 2 || k > kScanWeightCap) {
        throw UsageError("--weight must lie in [2, " + std::to_string(kScanWeightCap) + "]");
    }
    if (digits <= 10) {
        throw UsageError("scan needs --digits above 10");
    }
    if (coeff_bound < 1) {
        throw UsageError("--coeff-bound must be positive");
    }
    RunReport report;
    report.command = "scan";
    report.config = evaluator_config(evaluator);
    report.config["weight"] = k;
    report.config["digits"] = digits;
    report.config["coeff_bound"] = coeff_bound.get_str();
    report.config["relations"] = relations.string();
    report.config["jobs"] = jobs;
    const long threshold = -(digits - 10);

    const auto basis = conjectural_basis(k);
    const auto targets = admissible_indices(k);
    parallel_for(targets.size(), jobs, [&](std::size_t i) { evaluator.eval_index(targets[i], digits); });

    // Exact derivations from the shipped relations and stuffle products.
    std::vector<ExactRelation> rels;
    for (auto& r : load_relations(relations)) {
        if (r.weight() == k) rels.push_back(std::move(r));
    }
    if (k >= 4) {
        for (auto& r : stuffle_relations(k)) rels.push_back(std::move(r));
    }
    std::set<Monomial> basis_monomials;
    for (const auto& b : basis) basis_monomials.insert(Monomial::of(Atom::t(b)));
    std::vector<Monomial> others;
    for (const auto& rel : rels) {
        for (const auto& [m, q] : rel.combo.terms()) {
            if (!basis_monomials.contains(m) && std::ranges::find(others, m) == others.end()) {
                others.push_back(m);
            }
        }
    }
    // Products and log terms go first, then linear labels, each in monomial order.
    std::ranges::sort(others, [](const Monomial& x, const Monomial& y) {
        const bool xl = x.t_count() == 1 && x.degree() == 1;
        const bool yl = y.t_count() == 1 && y.degree() == 1;
        if (xl != yl) return !xl;
        return x < y;
    });

    IndependenceReport independence = independence_scan(k, digits, coeff_bound, evaluator);

    std::vector<std::optional<BasisExpression>> numeric(targets.size());
    parallel_for(targets.size(), jobs, [&](std::size_t i) {
        numeric[i] = express_in_basis(targets[i], k, digits, coeff_bound, evaluator);
    });

    bool fail = independence.relation_found();
    std::vector<std::string> misses;
    Json rows = Json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Index& x = targets[i];
        const Monomial tm = Monomial::of(Atom::t(x));
        std::optional<Combo> exact;
        if (!basis_monomials.contains(tm) && !rels.empty()) {
            std::vector<Monomial> eliminate;
            for (const auto& m : others) {
                if (m != tm) eliminate.push_back(m);
            }
            const auto derived = exact_eliminate(rels, eliminate, {tm});
            if (!derived.derived.empty()) {
                Combo e = solved_expression(derived.derived[0].second, tm);
                const bool in_basis = std::ranges::all_of(e.terms(), [&](const auto& kv) {
                    return basis_monomials.contains(kv.first);
                });
                if (in_basis) exact = std::move(e);
            }
        }

        Json row;
        row["target"] = x.display();
        std::vector<Rational> coeffs(basis.size(), 0);
        std::string provenance;
        std::optional<BigApprox> residual;
        if (numeric[i]) {
            for (const auto& [b, q] : numeric[i]->coefficients) {
                coeffs[static_cast<std::size_t>(std::ranges::find(basis, b) - basis.begin())] = q;
            }
            provenance = numeric[i]->provenance == "basis" ? "basis" : "numeric-promoted";
            residual = numeric[i]->residual;
        }
        if (exact) {
            std::vector<Rational> exact_coeffs(basis.size(), 0);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                exact_coeffs[j] = exact->coeff(Monomial::of(Atom::t(basis[j])));
            }
            if (numeric[i]) {
                const bool agree = exact_coeffs == coeffs;
                row["exact_matches_numeric"] = agree;
                fail = fail || !agree;
            }
            coeffs = exact_coeffs;
            provenance = "elimination";
            residual = evaluator.eval_combo(Combo::of(x) - *exact, digits);
        }
        row["found"] = residual.has_value();
        auto& cj = row["coefficients"] = Json::array();
        for (const auto& q : coeffs) cj.push_back(to_string(q));
        row["provenance"] = residual ? provenance : "none";
        if (residual) {
            row["residual"] = residual_json(*residual);
            const bool ok = residual->abs_upper_below_pow10(threshold);
            row["residual_ok"] = ok;
            fail = fail || !ok;
        } else {
            row["residual"] = nullptr;
            misses.push_back(x.display());
        }
        if (numeric[i] && numeric[i]->relation) row["relation"] = numeric[i]->relation->to_json();
        rows.push_back(std::move(row));
    }

    auto& r = report.results;
    r["weight"] = k;
    r["digits"] = digits;
    r["threshold_exp"] = threshold;
    auto& bj = r["basis"] = Json::array();
    for (const auto& b : basis) bj.push_back(b.display());
    r["independence"] = independence.to_json();
    r["counterexample_candidate"] = independence.relation_found();
    r["rows"] = std::move(rows);
    r["misses"] = misses;
    const bool inconclusive = independence.inconclusive() || !misses.empty();
    report.status = fail ? Status::fail : (inconclusive ? Status::none_found : Status::pass);
    report.timing_ms = elapsed_ms(start);
    return report;
}

namespace {

std::string render_basis(const Json& r) {
    std::ostringstream out;
    for (const auto& parts : r.at("indices")) {
        std::string s;
        for (const auto& p : parts) s += (s.empty() ? "" : ",") + std::to_string(p.get<long>());
        out << "t(" << s << ")\n";
    }
    const auto k = r.at("weight").get<long>();
    if (r.at("set") == "B_k") {
        out << "count=" << r.at("count").get<long>() << ", d_" << k << "=" << r.at("d_k").get<long>()
            << " (F_" << k << "=" << r.at("f_k").get<long>() << ")\n";
    } else {
        out << "count=" << r.at("count").get<long>() << ", F_" << k << "=" << r.at("f_k").get<long>()
            << " (d_" << k << "=" << r.at("d_k").get<long>() << ")\n";
    }
    return out.str();
}

std::string render_eval(const Json& r) {
    std::ostringstream out;
    out << r.at("display").get<std::string>() << " = " << r.at("value").get<std::string>() << "\n";
    out << "err <= "
        << (r.at("err_exp").is_null() ? std::string("0")
                                      : "1e" + std::to_string(r.at("err_exp").get<long>()))
        << "  (backend " << r.at("backend").get<std::string>();
    if (r.contains("cutoff")) out << ", cutoff " << r.at("cutoff").get<long>();
    out << ", digits " << r.at("digits").get<long>() << ")\n";
    return out.str();
}

std::string render_checks(const Json& checks) {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ") << c.at("name").get<std::string>()
            << ": " << c.at("detail").get<std::string>();
        if (c.contains("data") && c.at("data").contains("residual_exp")) {
            out << "  (residual " << residual_text(c.at("data")) << ")";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_verify(const Json& r) {
    std::ostringstream out;
    out << render_checks(r.at("checks"));
    const auto& w = r.at("walkthrough");
    out << "\nweight-5 walkthrough\n";
    if (w.contains("rewritten_pair")) {
        for (const auto& p : w.at("rewritten_pair")) {
            Combo e = combo_from_json(nlohmann::json::parse(p.at("expression").dump()));
            out << "  " << p.at("target").get<std::string>() << " = " << e.to_string() << "\n";
        }
    }
    if (w.contains("determinant")) {
        out << "  determinant " << w.at("determinant").get<std::string>() << "\n";
    }
    if (w.contains("expressions")) {
        for (const auto& e : w.at("expressions")) out << "  " << e.at("text").get<std::string>() << "\n";
    }
    out << render_checks(w.at("checks"));
    return out.str();
}

std::string render_scan(const Json& r) {
    std::ostringstream out;
    std::vector<std::string> header{"target"};
    for (const auto& b : r.at("basis")) header.push_back(b.get<std::string>());
    header.push_back("residual");
    header.push_back("provenance");
    std::vector<std::vector<std::string>> table{header};
    for (const auto& row : r.at("rows")) {
        std::vector<std::string> line{row.at("target").get<std::string>()};
        for (const auto& q : row.at("coefficients")) {
            std::string s = q.get<std::string>();
            if (s.ends_with("/1")) s.resize(s.size() - 2);
            line.push_back(s);
        }
        line.push_back(row.at("residual").is_null() ? "-" : residual_text(row.at("residual")));
        line.push_back(row.at("provenance").get<std::string>());
        table.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : table) {
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }
    for (const auto& line : table) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            out << std::left << std::setw(static_cast<int>(width[c]) + 2) << line[c];
        }
        out << "\n";
    }
    const auto& ind = r.at("independence");
    if (ind.at("relation_found").get<bool>()) {
        out << "\n!!! COUNTEREXAMPLE CANDIDATE: integer relation among the basis values: ";
        for (const auto& c : ind.at("relation").at("coeffs")) out << c.dump() << " ";
        out << "\n";
    } else if (ind.at("inconclusive").get<bool>()) {
        out << "\nindependence inconclusive: a relation of noise-level height was found; "
               "raise --digits\n";
    } else {
        out << "\nindependence: no relation among " << ind.at("size").get<long>()
            << " basis values with max |c| <= " << ind.at("coeff_bound").dump() << " at "
            << ind.at("digits").get<long>() << " digits\n";
    }
    if (!r.at("misses").empty()) {
        out << "no expression found for:";
        for (const auto& m : r.at("misses")) out << " " << m.get<std::string>();
        out << "\n";
    }
    return out.str();
}

} // namespace

std::string render_text(const RunReport& report) {
    std::string body;
    if (report.command.starts_with("basis")) body = render_basis(report.results);
    else if (report.command == "eval") body = render_eval(report.results);
    else if (report.command == "verify-paper") body = render_verify(report.results);
    else if (report.command == "scan") body = render_scan(report.results);
    return body + "status: " + to_string(report.status) + "\n";
}

} // namespace tforge
