#include "tforge/algebra.hpp"

#include "tforge/errors.hpp"

#include <algorithm>
#include <charconv>

namespace tforge {

Atom Atom::t(Index a) {
    require_admissible(a);
    return Atom(std::move(a));
}

std::string Atom::key() const { return index_ ? index_->display() : "log2"; }

std::strong_ordering operator<=>(const Atom& x, const Atom& y) {
    if (x.is_log2() || y.is_log2()) {
        return y.is_log2() <=> x.is_log2();
    }
    return *x.index_ <=> *y.index_;
}

Monomial::Monomial(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::ranges::sort(atoms_);
}

std::uint64_t Monomial::weight() const noexcept {
    std::uint64_t w = 0;
    for (const auto& a : atoms_) w += a.weight();
    return w;
}

std::size_t Monomial::log2_power() const noexcept {
    return static_cast<std::size_t>(std::ranges::count_if(atoms_, &Atom::is_log2));
}

std::string Monomial::key() const {
    if (atoms_.empty()) {
        return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < atoms_.size();) {
        std::size_t j = i;
        while (j < atoms_.size() && atoms_[j] == atoms_[i]) ++j;
        if (!s.empty()) s += '*';
        s += atoms_[i].key();
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

Monomial Monomial::parse(std::string_view key) {
    if (key == "1") {
        return {};
    }
    std::vector<Atom> atoms;
    while (!key.empty()) {
        const auto star = key.find('*');
        std::string_view factor = key.substr(0, star);
        std::size_t power = 1;
        if (const auto caret = std::ranges::find(factor, '^'); caret != factor.end()) {
            const std::string_view exp(caret + 1, factor.end());
            const auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), power);
            if (ec != std::errc{} || ptr != exp.data() + exp.size() || power == 0) {
                throw UsageError("malformed monomial power in '" + std::string(key) + "'");
            }
            factor = std::string_view(factor.begin(), caret);
        }
        Atom atom = Atom::log2();
        if (factor != "log2") {
            if (!factor.starts_with("t(")) {
                throw UsageError("malformed monomial factor '" + std::string(factor) + "'");
            }
            atom = Atom::t(Index::parse(factor));
        }
        atoms.insert(atoms.end(), power, atom);
        if (star == std::string_view::npos) break;
        key.remove_prefix(star + 1);
        if (key.empty()) {
            throw UsageError("malformed monomial: trailing '*'");
        }
    }
    return Monomial(std::move(atoms));
}

Monomial operator*(const Monomial& x, const Monomial& y) {
    std::vector<Atom> atoms;
    atoms.reserve(x.atoms_.size() + y.atoms_.size());
    std::ranges::merge(x.atoms_, y.atoms_, std::back_inserter(atoms));
    Monomial m;
    m.atoms_ = std::move(atoms);
    return m;
}

std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) {
    if (auto c = x.weight() <=> y.weight(); c != 0) return c;
    return std::lexicographical_compare_three_way(x.atoms_.begin(), x.atoms_.end(),
                                                  y.atoms_.begin(), y.atoms_.end());
}

Combo::Combo(const Monomial& m, const Rational& q) { add_term(m, q); }

Rational Combo::coeff(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool Combo::homogeneous(std::uint64_t k) const {
    return std::ranges::all_of(terms_, [k](const auto& kv) { return kv.first.weight() == k; });
}

std::optional<std::uint64_t> Combo::weight() const {
    if (terms_.empty()) return std::nullopt;
    const auto k = terms_.begin()->first.weight();
    return homogeneous(k) ? std::optional(k) : std::nullopt;
}

bool Combo::is_linear() const {
    return std::ranges::all_of(terms_, [](const auto& kv) { return kv.first.t_count() <= 1; });
}

void Combo::add_term(const Monomial& m, const Rational& q) {
    if (q == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    }
}

Combo& Combo::operator+=(const Combo& other) {
    for (const auto& [m, q] : other.terms_) add_term(m, q);
    return *this;
}

Combo& Combo::operator-=(const Combo& other) {
    for (const auto& [m, q] : other.terms_) add_term(m, -q);
    return *this;
}

Combo operator*(const Rational& q, const Combo& c) {
    Combo out;
    if (q == 0) return out;
    for (const auto& [m, coeff] : c.terms_) out.terms_.emplace(m, q * coeff);
    return out;
}

Combo operator*(const Combo& x, const Combo& y) {
    Combo out;
    for (const auto& [mx, qx] : x.terms_) {
        for (const auto& [my, qy] : y.terms_) out.add_term(mx * my, qx * qy);
    }
    return out;
}

std::string Combo::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, q] : terms_) {
        const bool negative = q < 0;
        const Rational mag = abs(q);
        if (s.empty()) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        if (m.degree() == 0) {
            s += mag.get_str();
        } else {
            if (mag != 1) s += mag.get_str() + "*";
            s += m.key();
        }
    }
    return s;
}

Combo add(const Combo& x, const Combo& y) { return x + y; }
Combo scale(const Rational& q, const Combo& c) { return q * c; }
Combo mul(const Combo& x, const Combo& y) { return x * y; }

std::map<std::vector<Index::Part>, BigInt> stuffle_words(const std::vector<Index::Part>& u,
                                                         const std::vector<Index::Part>& v) {
    std::map<std::vector<Index::Part>, BigInt> out;
    if (u.empty() || v.empty()) {
        out[u.empty() ? v : u] = 1;
        return out;
    }
    const std::vector<Index::Part> u_tail(u.begin() + 1, u.end());
    const std::vector<Index::Part> v_tail(v.begin() + 1, v.end());
    auto prepend = [&out](Index::Part head, const auto& words) {
        for (const auto& [w, mult] : words) {
            std::vector<Index::Part> word;
            word.reserve(w.size() + 1);
            word.push_back(head);
            word.insert(word.end(), w.begin(), w.end());
            out[std::move(word)] += mult;
        }
    };
    // (a,u')*(b,v') = (a, u'*(b,v')) + (b, (a,u')*v') + (a+b, u'*v')
    prepend(u.front(), stuffle_words(u_tail, v));
    prepend(v.front(), stuffle_words(u, v_tail));
    prepend(u.front() + v.front(), stuffle_words(u_tail, v_tail));
    return out;
}

Combo stuffle(const Index& u, const Index& v) {
    require_admissible(u);
    require_admissible(v);
    const std::vector<Index::Part> uw(u.parts().begin(), u.parts().end());
    const std::vector<Index::Part> vw(v.parts().begin(), v.parts().end());
    Combo out;
    for (auto& [word, mult] : stuffle_words(uw, vw)) {
        out.add_term(Monomial::of(Atom::t(Index(word))), Rational(mult));
    }
    return out;
}

Combo normalize(const Combo& c) {
    Combo out;
    for (const auto& [m, q] : c.terms()) {
        if (m.t_count() <= 1) {
            out.add_term(m, q);
            continue;
        }
        std::vector<Atom> logs;
        std::map<std::vector<Index::Part>, BigInt> product;
        bool first = true;
        for (const auto& atom : m.atoms()) {
            if (atom.is_log2()) {
                logs.push_back(atom);
                continue;
            }
            const std::vector<Index::Part> w(atom.index().parts().begin(),
                                             atom.index().parts().end());
            if (first) {
                product[w] = 1;
                first = false;
                continue;
            }
            std::map<std::vector<Index::Part>, BigInt> next;
            for (const auto& [word, mult] : product) {
                for (const auto& [sw, smult] : stuffle_words(word, w)) next[sw] += mult * smult;
            }
            product = std::move(next);
        }
        const Monomial log_part(logs);
        for (const auto& [word, mult] : product) {
            out.add_term(log_part * Monomial::of(Atom::t(Index(word))), q * Rational(mult));
        }
    }
    return out;
}

nlohmann::ordered_json to_json(const Combo& c) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [m, q] : c.terms()) j[m.key()] = tforge::to_string(q);
    return j;
}

Combo combo_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw UsageError("combo JSON must be an object");
    }
    Combo c;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_string()) {
            throw UsageError("combo coefficient for '" + key + "' must be a \"num/den\" string");
        }
        c.add_term(Monomial::parse(key), parse_rational(value.get<std::string>()));
    }
    return c;
}

} // namespace tforge
