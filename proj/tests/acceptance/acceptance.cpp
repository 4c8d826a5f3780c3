// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "tforge/evaluator.hpp"
#include "tforge/relations.hpp"
#include "tforge/walkthrough.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

using namespace tforge;

namespace {

int failures = 0;

void criterion(const char* name, double limit_s, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s >= limit_s) {
        ok = false;
        detail += " (over time limit)";
    }
    if (!ok) ++failures;
    std::printf("%s  %-28s %8.3fs / %.0fs  %s\n", ok ? "PASS" : "FAIL", name, s, limit_s, detail.c_str());
    std::fflush(stdout);
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

} // namespace

int main() {
    criterion("enumeration exactness", 1, [](std::string& d) {
        const bool ok =
            conjectural_basis(3) == std::vector<Index>{{2, 1}, {3}} &&
            conjectural_basis(4) == std::vector<Index>{{2, 1, 1}, {2, 2}, {3, 1}} &&
            conjectural_basis(5) == std::vector<Index>{{2, 1, 1, 1}, {2, 1, 2}, {2, 2, 1}, {3, 1, 1}, {3, 2}};
        d = "C_3, C_4, C_5 listed in order";
        return ok;
    });

    criterion("counting", 1, [](std::string& d) {
        std::vector<std::uint64_t> f{0, 0, 1, 2}, dk{0, 0, 1, 1, 1};
        for (std::size_t k = 4; k <= 20; ++k) f.push_back(f[k - 1] + f[k - 2]);
        for (std::size_t k = 5; k <= 20; ++k) dk.push_back(dk[k - 2] + dk[k - 3]);
        bool ok = true;
        for (std::uint32_t k = 2; k <= 20; ++k) {
            ok = ok && conjectural_basis(k).size() == f[k] && compositions(k, {2, 3}).size() == dk[k];
        }
        d = "f_20 = " + std::to_string(f[20]) + ", d_20 = " + std::to_string(dk[20]);
        return ok;
    });

    criterion("polar classifier", 1, [](std::string& d) {
        bool ok = true;
        for (std::uint32_t r = 1; r <= 4; ++r) {
            for (std::uint32_t i = 1; i <= r; ++i) {
                for (std::uint32_t k = 0; k <= 10; ++k) {
                    const bool want = (i == 1 && k == 0) || (i == 2 && (k == 1 || k % 2 == 0)) || i >= 3;
                    ok = ok && is_polar(r, {i, k}) == want;
                }
            }
        }
        for (std::uint32_t k = 3; k <= 10; k += 2) ok = ok && !is_polar(2, {2, k});
        d = "grid r <= 4, k <= 10";
        return ok;
    });

    criterion("stuffle fact", 300, [](std::string& d) {
        Evaluator ev;
        const Combo c = Combo::of(Index{2}) * Combo::of(Index{3}) - Combo::of(Index{2, 3}) -
                        Combo::of(Index{3, 2}) - Combo::of(Index{5});
        const BigApprox r = ev.eval_combo(c, 50);
        d = "|residual| <= " + r.abs_upper().to_sci(3);
        return r.abs_upper_below_pow10(-40);
    });

    criterion("relation residuals", 600, [](std::string& d) {
        Evaluator ev;
        bool ok = true;
        for (const auto& rel : load_relations(default_relations_path())) {
            const BigApprox r = ev.eval_combo(rel.combo, 50);
            ok = ok && r.abs_upper_below_pow10(-40);
            d += rel.source + " " + r.abs_upper().to_sci(2) + "  ";
        }
        return ok;
    });

    criterion("weight-5 walkthrough", 600, [](std::string& d) {
        Evaluator ev;
        const auto w = weight5_walkthrough(50, load_relations(default_relations_path()), ev);
        auto expr = [&](std::size_t i) { return solved_expression(w.derived.at(i).second, w.derived.at(i).first); };
        const bool exact =
            w.derived.size() == 5 &&
            expr(2) == Combo::of(Index{3, 2}, 7) + Combo::of(Index{2, 1, 2}, 6) &&
            expr(3) == Combo::of(Index{3, 2}, Rational(5, 2)) + Combo::of(Index{2, 1, 2}) &&
            expr(4) == Combo::of(Index{3, 2}, Rational(1, 2)) - Combo::of(Index{2, 1, 2}) +
                           Combo::of(Index{2, 2, 1}, 4);
        d = "det = " + to_string(w.determinant);
        return exact && w.pass && w.determinant != 0;
    });

    criterion("relation rediscovery", 300, [](std::string& d) {
        Evaluator ev;
        const long D = 60;
        const std::vector<BigApprox> a{ev.eval_index(Index{3, 2}, D), ev.eval_index(Index{5}, D),
                                       ev.eval_index(Index{2, 3}, D)};
        const std::vector<BigApprox> b{ev.eval_index(Index{3, 2}, D), ev.eval_index(Index{5}, D),
                                       ev.eval_combo(Combo::of(Index{2}) * Combo::of(Index{3}), D)};
        const auto ra = find_integer_relation(a, D, 1000000);
        const auto rb = find_integer_relation(b, D, 1000000);
        d = std::string(ra ? "found " : "missing ") + (rb ? "found" : "missing");
        return ra && rb && ra->coeffs == ints({8, 1, -6}) && rb->coeffs == ints({14, 7, -6});
    });

    criterion("spanning scan k = 3..6", 1800, [](std::string& d) {
        Evaluator ev;  // in-process only: cold start
        bool ok = true;
        std::size_t count = 0;
        long worst = -1000;
        for (std::uint32_t k = 3; k <= 6; ++k) {
            for (const auto& x : admissible_indices(k)) {
                const auto e = express_in_basis(x, k, 60, 1000000, ev);
                const bool hit = e && e->residual.abs_upper_below_pow10(-45);
                if (e && e->residual.value_exponent()) worst = std::max(worst, *e->residual.value_exponent());
                if (!hit) d += "miss " + x.display() + " ";
                ok = ok && hit;
                ++count;
            }
        }
        d += std::to_string(count) + " indices, worst residual exp " + std::to_string(worst);
        return ok && count == 2 + 4 + 8 + 16;
    });

    criterion("independence scan k = 3..6", 600, [](std::string& d) {
        Evaluator ev;
        bool ok = true;
        for (std::uint32_t k = 3; k <= 6; ++k) {
            const auto r = independence_scan(k, 60, 1000000, ev);
            if (r.relation) d += "relation at k=" + std::to_string(k) + " ";
            ok = ok && !r.relation;
        }
        if (ok) d = "no relation with max |c| <= 1e6";
        return ok;
    });

    criterion("backend agreement", 600, [](std::string& d) {
        Evaluator ev;
        bool ok = true;
        std::size_t count = 0;
        for (std::uint32_t k = 2; k <= 5; ++k) {
            for (const auto& a : admissible_indices(k)) {
                const bool agree = ev.eval_index(a, 50).overlaps(eval_oracle(a, 100000, 30));
                if (!agree) d += "disagree " + a.display() + " ";
                ok = ok && agree;
                ++count;
            }
        }
        d += std::to_string(count) + " indices, oracle N = 100000";
        return ok;
    });

    criterion("enclosure property", 600, [](std::string& d) {
        std::mt19937 rng(20261015);
        Evaluator ev;
        int inside = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint32_t k = std::uniform_int_distribution<std::uint32_t>(2, 8)(rng);
            const auto adm = admissible_indices(k);
            const Index a = adm[std::uniform_int_distribution<std::size_t>(0, adm.size() - 1)(rng)];
            const long D = std::uniform_int_distribution<long>(10, 100)(rng);
            const BigApprox coarse = ev.eval_index(a, D);
            const BigApprox fine = ev.eval_index(a, D + 10);
            if (coarse.contains(fine.value())) ++inside;
            else d += a.display() + "@" + std::to_string(D) + " ";
        }
        d += std::to_string(inside) + "/100 inside";
        return inside == 100;
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
