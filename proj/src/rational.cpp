#include "tforge/rational.hpp"

#include "tforge/errors.hpp"

namespace tforge {

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    const std::string s(text);
    const auto slash = s.find('/');
    BigInt num;
    BigInt den = 1;
    try {
        if (slash == std::string::npos) {
            num.set_str(s, 10);
        } else {
            num.set_str(s.substr(0, slash), 10);
            den.set_str(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed rational '" + s + "'");
    }
    if (den == 0) {
        throw UsageError("zero denominator in '" + s + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

} // namespace tforge
