#include "tforge/errors.hpp"
#include "tforge/pslq.hpp"
#include "tforge/relations.hpp"
#include "tforge/walkthrough.hpp"

#include <doctest.h>

using namespace tforge;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

Monomial t_of(Index a) { return Monomial::of(Atom::t(std::move(a))); }

std::vector<BigApprox> values_of(Evaluator& ev, const std::vector<Combo>& xs, long d) {
    std::vector<BigApprox> out;
    for (const auto& x : xs) out.push_back(ev.eval_combo(x, d));
    return out;
}

} // namespace

TEST_SUITE("relations") {

TEST_CASE("pslq on a simple pair") {
    std::vector<Real> x{Real(300, 1), Real::parse("0.5", 300)};
    const auto r = pslq(x, PslqOptions{.prec = 300, .detect_exp = -60});
    REQUIRE(r.relation);
    CHECK(*r.relation == ints({1, -2}));
}

TEST_CASE("normalize_relation") {
    auto c = ints({0, -4, 6, 2});
    normalize_relation(c);
    CHECK(c == ints({0, 2, -3, -1}));
}

TEST_CASE("no relation among unrelated constants") {
    Real a(300), b(300), c(300);
    mpfr_sqrt_ui(a.get(), 2, MPFR_RNDN);
    mpfr_const_pi(b.get(), MPFR_RNDN);
    mpfr_const_log2(c.get(), MPFR_RNDN);
    std::vector<BigApprox> v{BigApprox(a), BigApprox(b), BigApprox(c)};
    CHECK_FALSE(find_integer_relation(v, 60, 1000000));
}

TEST_CASE("rediscovers the weight-5 relations") {
    Evaluator ev;
    const long d = 60;
    const auto v1 = values_of(ev, {Combo::of(Index{3, 2}), Combo::of(Index{5}), Combo::of(Index{2, 3})}, d);
    const auto r1 = find_integer_relation(v1, d, 1000000);
    REQUIRE(r1);
    CHECK(r1->coeffs == ints({8, 1, -6}));
    CHECK(r1->credible);
    CHECK(r1->residual.abs_value_below_pow10(-(d - 10)));

    const auto v2 = values_of(
        ev, {Combo::of(Index{3, 2}), Combo::of(Index{5}), Combo::of(Index{2}) * Combo::of(Index{3})}, d);
    const auto r2 = find_integer_relation(v2, d, 1000000);
    REQUIRE(r2);
    CHECK(r2->coeffs == ints({14, 7, -6}));

    // Same relation after scaling every input by 3.
    std::vector<BigApprox> scaled;
    for (const auto& x : v2) scaled.push_back(Rational(3) * x);
    const auto r3 = find_integer_relation(scaled, d - 2, 1000000);
    REQUIRE(r3);
    CHECK(r3->coeffs == r2->coeffs);

    CHECK_THROWS_AS(find_integer_relation(v1, d + 20, 1000000), PrecisionFailure);
    CHECK_THROWS_AS(find_integer_relation(std::span(v1).first(1), d, 1000000), UsageError);
}

TEST_CASE("coefficient bound is respected") {
    Evaluator ev;
    const auto v = values_of(ev, {Combo::of(Index{3, 2}), Combo::of(Index{5}), Combo::of(Index{2, 3})}, 60);
    CHECK_FALSE(find_integer_relation(v, 60, 5));
}

TEST_CASE("stuffle relations") {
    const auto r = stuffle_relation(Index{2}, Index{3});
    CHECK(r.provenance == Provenance::stuffle);
    CHECK(r.combo == Combo::of(Index{2}) * Combo::of(Index{3}) - Combo::of(Index{2, 3}) -
                         Combo::of(Index{3, 2}) - Combo::of(Index{5}));
    // Weight 5: t(2)t(3) and t(2)t(2,1).
    CHECK(stuffle_relations(5).size() == 2);
    CHECK(stuffle_relations(4).size() == 1);
    Evaluator ev;
    for (const auto& rel : stuffle_relations(6)) {
        CAPTURE(rel.combo.to_string());
        CHECK(ev.eval_combo(rel.combo, 40).abs_upper_below_pow10(-30));
    }
}

TEST_CASE("shipped relations") {
    const auto rels = load_relations(default_relations_path());
    REQUIRE(rels.size() == 4);
    for (const auto& r : rels) {
        CHECK(r.provenance == Provenance::paper_input);
        CHECK(r.weight() == 5);
    }
    CHECK(rels[0].combo.coeff(Monomial::parse("t(2)*t(3)")) == Rational(-3, 7));
    CHECK_THROWS_AS(load_relations("/nonexistent/relations.json"), UsageError);
}

TEST_CASE("exact elimination at weight 5") {
    const auto shipped = load_relations(default_relations_path());
    std::vector<ExactRelation> eq1{shipped[0], shipped[1], stuffle_relation(Index{2}, Index{3})};
    const Monomial product = Monomial::parse("t(2)*t(3)");
    const auto step1 = exact_eliminate(eq1, {product}, {t_of({3, 2}), t_of({2, 1, 2})});
    REQUIRE(step1.unresolved.empty());
    CHECK(solved_expression(step1.derived[0].second, t_of({3, 2})) ==
          Combo::of(Index{5}, Rational(-1, 8)) + Combo::of(Index{2, 3}, Rational(3, 4)));
    CHECK(solved_expression(step1.derived[1].second, t_of({2, 1, 2})) ==
          Combo::of(Index{5}, Rational(5, 16)) + Combo::of(Index{2, 3}, Rational(-7, 8)));
    for (const auto& [m, rel] : step1.derived) {
        CHECK(rel.provenance == Provenance::elimination);
        CHECK(elimination_residual(rel, eq1).is_zero());
    }
    // t(4,1) is out of reach of the first pair.
    const auto none = exact_eliminate(eq1, {product}, {t_of({4, 1})});
    CHECK(none.derived.empty());
    CHECK(none.unresolved == std::vector<Monomial>{t_of({4, 1})});
}

TEST_CASE("walkthrough") {
    Evaluator ev;
    const auto w = weight5_walkthrough(50, load_relations(default_relations_path()), ev);
    CHECK(w.pass);
    CHECK(w.determinant == Rational(-1, 8));
    REQUIRE(w.derived.size() == 5);
    auto expr = [&](std::size_t i) { return solved_expression(w.derived[i].second, w.derived[i].first); };
    CHECK(expr(2) == Combo::of(Index{3, 2}, 7) + Combo::of(Index{2, 1, 2}, 6));
    CHECK(expr(3) == Combo::of(Index{3, 2}, Rational(5, 2)) + Combo::of(Index{2, 1, 2}));
    CHECK(expr(4) == Combo::of(Index{3, 2}, Rational(1, 2)) - Combo::of(Index{2, 1, 2}) +
                         Combo::of(Index{2, 2, 1}, 4));

    auto half = load_relations(default_relations_path());
    half.pop_back();
    CHECK_THROWS_AS(weight5_walkthrough(50, half, ev), UsageError);
}

TEST_CASE("express in basis") {
    Evaluator ev;
    const auto t5 = express_in_basis(Index{5}, 5, 60, 1000000, ev);
    REQUIRE(t5);
    CHECK(t5->provenance == "numeric");
    CHECK(t5->as_relation() == Combo::of(Index{5}) - Combo::of(Index{3, 2}, 7) - Combo::of(Index{2, 1, 2}, 6));
    CHECK(t5->residual.abs_upper_below_pow10(-50));

    // t(2)^2 = 2 t(2,2) + t(4) and t(2,2) = pi^4/384 give t(4) = 4 t(2,2).
    const auto t4 = express_in_basis(Index{4}, 4, 60, 1000000, ev);
    REQUIRE(t4);
    CHECK(t4->as_relation() == Combo::of(Index{4}) - Combo::of(Index{2, 2}, 4));

    const auto b = express_in_basis(Index{3, 2}, 5, 60, 1000000, ev);
    REQUIRE(b);
    CHECK(b->provenance == "basis");
    CHECK(b->as_relation().is_zero());
    CHECK_THROWS_AS(express_in_basis(Index{3, 2}, 6, 60, 1000000, ev), UsageError);
}

TEST_CASE("independence at weights 5 and 6") {
    Evaluator ev;
    for (std::uint32_t k : {5u, 6u}) {
        const auto r = independence_scan(k, 60, 1000000, ev);
        CHECK(r.size == conjectural_basis(k).size());
        CHECK_FALSE(r.relation);
    }
    CHECK_FALSE(independence_scan(2, 60, 1000000, ev).relation);
}

TEST_CASE("noise-level hits are not credible") {
    // Thirteen weight-7 values at 60 digits admit height-1e4 vectors whose
    // residual lands under the detection threshold by chance.
    Evaluator ev;
    const auto low = independence_scan(7, 60, 1000000, ev);
    CHECK_FALSE(low.relation_found());
    if (low.relation) CHECK(low.inconclusive());
    const auto high = independence_scan(7, 100, 1000000, ev);
    CHECK_FALSE(high.relation);
}

}
