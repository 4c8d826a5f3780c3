#include "tforge/algebra.hpp"
#include "tforge/errors.hpp"

#include <doctest.h>

#include <random>

using namespace tforge;

namespace {

using Word = std::vector<Index::Part>;

Rational power_inv(std::uint64_t n, std::uint32_t a) {
    BigInt d = 1;
    for (std::uint32_t i = 0; i < a; ++i) d *= n;
    return Rational(1, d);
}

// Exact sum over odd n_1 > ... > n_r with n_1 <= top. Products of such
// truncations obey the quasi-shuffle rule exactly.
Rational truncated(const Word& w, std::uint64_t top, std::size_t pos = 0) {
    if (pos == w.size()) return 1;
    Rational s = 0;
    for (std::uint64_t n = 1; n <= top; n += 2) {
        if (n < 2 * (w.size() - pos) - 1) continue;
        s += power_inv(n, w[pos]) * truncated(w, n - 2, pos + 1);
    }
    return s;
}

Word random_word(std::mt19937& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<Index::Part> part(1, 3);
    Word w(len(rng));
    for (auto& p : w) p = part(rng);
    return w;
}


} // namespace

TEST_SUITE("algebra") {

TEST_CASE("stuffle examples") {
    CHECK(stuffle(Index{2}, Index{3}) ==
          Combo::of(Index{2, 3}) + Combo::of(Index{3, 2}) + Combo::of(Index{5}));
    CHECK(stuffle(Index{2}, Index{2, 1}) == Combo::of(Index{2, 2, 1}, 2) + Combo::of(Index{2, 1, 2}) +
                                                Combo::of(Index{2, 3}) + Combo::of(Index{4, 1}));
    CHECK(stuffle(Index{2}, Index{2}) == Combo::of(Index{2, 2}, 2) + Combo::of(Index{4}));
}

TEST_CASE("stuffle agrees with exact truncated odd sums") {
    std::mt19937 rng(20240501);
    for (int trial = 0; trial < 40; ++trial) {
        const Word u = random_word(rng, 3), v = random_word(rng, 2);
        CAPTURE(Index(u).display());
        CAPTURE(Index(v).display());
        const std::uint64_t top = 13;
        Rational rhs = 0;
        for (const auto& [w, n] : stuffle_words(u, v)) rhs += Rational(n) * truncated(w, top);
        CHECK(truncated(u, top) * truncated(v, top) == rhs);
    }
}

TEST_CASE("stuffle term count") {
    // Number of quasi-shuffles of lengths p and q: Delannoy numbers.
    const Word u{1, 1, 1}, v{2, 2};
    BigInt total = 0;
    for (const auto& [w, n] : stuffle_words(u, v)) total += n;
    CHECK(total == 25);
}

TEST_CASE("stuffle is commutative and associative") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const Word u = random_word(rng, 3), v = random_word(rng, 3), w = random_word(rng, 2);
        CHECK(stuffle_words(u, v) == stuffle_words(v, u));
        std::map<Word, BigInt> left, right;
        for (const auto& [x, n] : stuffle_words(u, v)) {
            for (const auto& [y, m] : stuffle_words(x, w)) left[y] += n * m;
        }
        for (const auto& [x, n] : stuffle_words(v, w)) {
            for (const auto& [y, m] : stuffle_words(u, x)) right[y] += n * m;
        }
        CHECK(left == right);
    }
}

TEST_CASE("normalize") {
    const Combo p = Combo::of(Index{2}) * Combo::of(Index{3});
    const Combo n = normalize(p);
    CHECK(n == stuffle(Index{2}, Index{3}));
    CHECK(normalize(n) == n);
    const Combo triple = p * Combo::of(Index{2});
    const Combo nt = normalize(triple);
    CHECK(nt.is_linear());
    CHECK(normalize(nt) == nt);
    CHECK(nt.homogeneous(7));
    const Combo with_log = Combo(Monomial::of(Atom::log2()), 1) * p;
    const Combo nl = normalize(with_log);
    CHECK(nl.is_linear());
    CHECK(nl == Combo(Monomial::of(Atom::log2()), 1) * n);
}

TEST_CASE("combo arithmetic and keys") {
    const Combo a = Combo::of(Index{3, 2}, Rational(1, 2));
    CHECK((a - a).is_zero());
    CHECK((a + a).coeff(Monomial::of(Atom::t(Index{3, 2}))) == 1);
    CHECK(Monomial::parse("t(2)*t(3)").key() == "t(2)*t(3)");
    CHECK(Monomial::parse("t(2)^2").key() == "t(2)^2");
    CHECK(Monomial::parse("log2*t(4)").weight() == 5);
    CHECK(Monomial::parse("1").key() == "1");
    CHECK(Monomial::parse("log2^2").log2_power() == 2);
    CHECK_THROWS_AS(Atom::t(Index{1, 2}), UsageError);
    CHECK_THROWS_AS(Monomial::parse("t(2)*"), UsageError);
    CHECK_FALSE((Combo::of(Index{2}) + Combo::of(Index{3})).weight().has_value());
}

TEST_CASE("json round trip") {
    const Combo c = Combo::of(Index{3, 2}) + Combo(Monomial::parse("log2*t(4)"), Rational(-1, 4)) +
                    Combo(Monomial::parse("t(2)*t(3)"), Rational(3, 14));
    const auto j = to_json(c);
    const std::string expected = R"j({"log2*t(4)":"-1/4","t(2)*t(3)":"3/14","t(3,2)":"1/1"})j";
    CHECK(j.dump() == expected);
    CHECK(combo_from_json(nlohmann::json::parse(j.dump())) == c);
    const auto zero_den = nlohmann::json::parse(R"j({"t(2)":"1/0"})j");
    const auto not_string = nlohmann::json::parse(R"j({"t(2)":1})j");
    CHECK_THROWS_AS(combo_from_json(zero_den), UsageError);
    CHECK_THROWS_AS(combo_from_json(not_string), UsageError);
}

}
