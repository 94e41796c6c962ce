#include "qmb/rational.hpp"

namespace qmb {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
    if (v.get_den() == 0) throw std::domain_error("Rational::parse: zero denominator");
    v.canonicalize();
    return Rational(v);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw std::domain_error("Rational: 0^negative");
        return Rational(0);
    }
    mpz_class n, d;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
    mpq_class r = (e > 0) ? mpq_class(n, d) : mpq_class(d, n);
    r.canonicalize();
    return Rational(r);
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational pow(const Rational& b, long e) { return b.pow(e); }

}  // namespace qmb
