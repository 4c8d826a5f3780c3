#pragma once

#include "tforge/index.hpp"
#include "tforge/rational.hpp"

#include <json.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tforge {

/// Generator of the formal t-algebra: either T(a) for admissible a, or the
/// constant log 2. Log2 carries weight 1 and sorts before every T-atom.
class Atom {
public:
    static Atom log2() { return Atom(); }
    static Atom t(Index a);

    [[nodiscard]] bool is_log2() const noexcept { return !index_.has_value(); }
    /// Precondition: !is_log2().
    [[nodiscard]] const Index& index() const { return *index_; }
    [[nodiscard]] std::uint64_t weight() const noexcept { return index_ ? index_->weight() : 1; }
    /// "log2" or "t(2,3)".
    [[nodiscard]] std::string key() const;

    friend std::strong_ordering operator<=>(const Atom& x, const Atom& y);
    friend bool operator==(const Atom&, const Atom&) = default;

private:
    Atom() = default;
    explicit Atom(Index a) : index_(std::move(a)) {}
    std::optional<Index> index_;
};

/// Commutative product of atoms, stored sorted. Empty is the constant 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Atom> atoms);
    static Monomial of(const Atom& a) { return Monomial({a}); }

    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] std::size_t degree() const noexcept { return atoms_.size(); }
    [[nodiscard]] std::uint64_t weight() const noexcept;
    [[nodiscard]] std::size_t log2_power() const noexcept;
    [[nodiscard]] std::size_t t_count() const noexcept { return degree() - log2_power(); }

    /// "1", "t(2,3)", "log2*t(4)", "log2^2", "t(2)*t(3)", "t(2)^2".
    [[nodiscard]] std::string key() const;
    static Monomial parse(std::string_view key);

    friend Monomial operator*(const Monomial& x, const Monomial& y);
    /// Weight first, then atoms lexicographically.
    friend std::strong_ordering operator<=>(const Monomial& x, const Monomial& y);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Exact rational linear combination of monomials; zero coefficients are
/// never stored.
class Combo {
public:
    using Terms = std::map<Monomial, Rational>;

    Combo() = default;
    Combo(const Monomial& m, const Rational& q);
    static Combo of(const Index& a, const Rational& q = 1) {
        return Combo(Monomial::of(Atom::t(a)), q);
    }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    /// Coefficient of m (zero when absent).
    [[nodiscard]] Rational coeff(const Monomial& m) const;
    /// True when every monomial has weight k (vacuously true for zero).
    [[nodiscard]] bool homogeneous(std::uint64_t k) const;
    /// Common weight of a nonzero homogeneous combo.
    [[nodiscard]] std::optional<std::uint64_t> weight() const;
    /// Every monomial is Log2^e or Log2^e * T(a).
    [[nodiscard]] bool is_linear() const;

    void add_term(const Monomial& m, const Rational& q);

    Combo& operator+=(const Combo& other);
    Combo& operator-=(const Combo& other);
    friend Combo operator+(Combo x, const Combo& y) { return x += y; }
    friend Combo operator-(Combo x, const Combo& y) { return x -= y; }
    friend Combo operator*(const Rational& q, const Combo& c);
    friend Combo operator*(const Combo& x, const Combo& y);
    friend bool operator==(const Combo&, const Combo&) = default;

    /// "3/4*t(2,3) - 1/2*t(2)*t(3)"; "0" for the zero combo.
    [[nodiscard]] std::string to_string() const;

private:
    Terms terms_;
};

Combo add(const Combo& x, const Combo& y);
Combo scale(const Rational& q, const Combo& c);
/// Multiplies monomials as multisets; does not normalize.
Combo mul(const Combo& x, const Combo& y);

/// Quasi-shuffle product of two admissible indices as single-T-atom monomials.
Combo stuffle(const Index& u, const Index& v);

/// Quasi-shuffle on raw words (parts may start with 1). Returns word -> multiplicity.
std::map<std::vector<Index::Part>, BigInt> stuffle_words(const std::vector<Index::Part>& u,
                                                         const std::vector<Index::Part>& v);

/// Rewrites products of T-atoms by stuffle until every monomial is
/// Log2^e or Log2^e * T(a).
Combo normalize(const Combo& c);

/// JSON object {monomial key: "num/den"} in monomial order.
nlohmann::ordered_json to_json(const Combo& c);
Combo combo_from_json(const nlohmann::json& j);

} // namespace tforge
