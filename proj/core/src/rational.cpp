#include "mono/rational.hpp"

namespace mono {

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw contract_error("empty rational literal");
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            if (n < 0) throw contract_error("negative rational literal");
            mpq_class q(n);
            return Rational(q);
        }
        mpz_class n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw contract_error("rational with zero denominator");
        if (n < 0 || d < 0) throw contract_error("negative rational literal");
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(q);
    } catch (const std::invalid_argument&) {
        throw contract_error("malformed rational literal '" + s + "'");
    }
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace mono
