#include "qmb/qufun.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qmb {

QUFun QUFun::u_power(int k, const QFun& coeff) {
    if (k < 0) throw std::invalid_argument("QUFun::u_power: negative power of u");
    if (coeff.is_zero()) return QUFun();
    std::vector<QFun> c(static_cast<size_t>(k) + 1, QFun());
    c.back() = coeff;
    return QUFun(std::move(c));
}

QUFun QUFun::operator-() const {
    QUFun r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

QUFun& QUFun::operator+=(const QUFun& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), QFun());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QUFun& QUFun::operator-=(const QUFun& o) { return *this += -o; }

QUFun operator*(const QUFun& a, const QUFun& b) {
    if (a.is_zero() || b.is_zero()) return QUFun();
    std::vector<QFun> c(a.c_.size() + b.c_.size() - 1, QFun());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return QUFun(std::move(c));
}

QUFun QUFun::scaled(const QFun& c) const {
    if (c.is_zero()) return QUFun();
    QUFun r(*this);
    for (auto& x : r.c_) x *= c;
    return r;
}

QFun QUFun::substitute_u(const QFun& u) const {
    QFun acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * u + c_[i];
    return acc;
}

Rational QUFun::evaluate(const Rational& q, const Rational& u) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * u + c_[i].evaluate(q);
    return acc;
}

double QUFun::evaluate(double q, double u) const {
    double acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * u + c_[i].evaluate(q);
    return acc;
}

/* ---------------------------------------------------------------- */
/* Serialization                                                     */
/* ---------------------------------------------------------------- */

namespace {

/* Polynomial in (u, q) with integer coefficients, keyed ascending. */
using IntPoly = std::map<std::pair<int, int>, mpz_class>;

void print_int_poly(std::ostringstream& out, const IntPoly& p) {
    if (p.empty()) {
        out << "0";
        return;
    }
    bool first = true;
    for (const auto& [key, coeff] : p) {
        if (coeff == 0) continue;
        const auto [du, dq] = key;
        mpz_class a = coeff;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? "-" : "+");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_var = (du > 0 || dq > 0);
        bool printed = false;
        if (a != 1 || !has_var) {
            out << a.get_str();
            printed = true;
        }
        if (dq > 0) {
            if (printed) out << "*";
            out << "q";
            if (dq > 1) out << "^" << dq;
            printed = true;
        }
        if (du > 0) {
            if (printed) out << "*";
            out << "l";
            if (du > 1) out << "^" << du;
        }
    }
    if (first) out << "0";
}

}  // namespace

std::string QUFun::str() const {
    /* Common monic denominator of all u-coefficients. */
    QPoly den(Rational(1));
    for (const auto& c : c_) {
        QPoly g = poly_gcd(den, c.den());
        den = den * c.den().divexact(g);
    }
    /* Assemble the numerator as a bivariate polynomial over Q. */
    std::map<std::pair<int, int>, Rational> num;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        QPoly scaled = c_[k].num() * den.divexact(c_[k].den());
        for (int d = 0; d <= scaled.degree(); ++d) {
            Rational c = scaled.coeff(d);
            if (!c.is_zero()) num[{static_cast<int>(k), d}] = c;
        }
    }
    /* Clear rational denominators jointly, then strip integer content;
     * the sign convention is a positive leading denominator coefficient. */
    mpz_class lcm(1);
    for (const auto& [key, c] : num) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    for (int d = 0; d <= den.degree(); ++d) {
        Rational c = den.coeff(d);
        if (!c.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    IntPoly inum;
    IntPoly iden;
    mpz_class content(0);
    for (const auto& [key, c] : num) {
        mpz_class v = c.num() * (lcm / c.den());
        inum[key] = v;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    for (int d = 0; d <= den.degree(); ++d) {
        Rational c = den.coeff(d);
        if (c.is_zero()) continue;
        mpz_class v = c.num() * (lcm / c.den());
        iden[{0, d}] = v;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    if (content == 0) content = 1;
    /* sign convention: first printed denominator term is positive */
    if (iden.begin()->second < 0) content = -content;
    for (auto& [key, v] : inum) v /= content;
    for (auto& [key, v] : iden) v /= content;

    std::ostringstream out;
    bool trivial_den = (iden.size() == 1 && iden.begin()->first == std::pair<int, int>(0, 0) &&
                        iden.begin()->second == 1);
    if (trivial_den) {
        print_int_poly(out, inum);
    } else {
        out << "(";
        print_int_poly(out, inum);
        out << ")/";
        if (iden.size() > 1) {
            out << "(";
            print_int_poly(out, iden);
            out << ")";
        } else {
            print_int_poly(out, iden);
        }
    }
    return out.str();
}

/* ---------------------------------------------------------------- */
/* Parsing                                                           */
/* ---------------------------------------------------------------- */

namespace {

class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    QUFun run() {
        QUFun v = parse_poly();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            QUFun d = parse_atom_chain();
            v = divide(v, d);
        }
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("scalar parse error at offset " + std::to_string(pos_) +
                                    ": " + what + " in '" + s_ + "'");
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    long parse_int() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    mpz_class parse_bigint() {
        skip_ws();
        std::string digits;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += s_[pos_++];
        return mpz_class(digits);
    }

    /* INT | q[^e] | l[^e] | (poly) */
    QUFun parse_factor() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            QUFun v = parse_poly();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return QUFun(QFun(Rational(parse_bigint())));
        }
        if (c == 'q' || c == 'l') {
            ++pos_;
            long e = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                e = parse_int();
            }
            if (c == 'q') return QUFun(QFun::q_power(e));
            if (e < 0) fail("negative power of l");
            return QUFun::u_power(static_cast<int>(e));
        }
        fail("expected factor");
    }

    /* factor (* factor)* */
    QUFun parse_term() {
        QUFun v = parse_factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                v = v * parse_factor();
            } else if (peek() == 'q' || peek() == 'l') {
                /* implicit product as in "3l^2q^4" is not emitted but
                 * costs nothing to accept */
                v = v * parse_factor();
            } else {
                break;
            }
        }
        return v;
    }

    QUFun parse_poly() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        QUFun v = parse_term();
        if (neg) v = -v;
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            QUFun t = parse_term();
            if (c == '-') t = -t;
            v += t;
        }
        return v;
    }

    /* The denominator position: a parenthesized polynomial or a single
     * term, never a bare sum. */
    QUFun parse_atom_chain() {
        skip_ws();
        return parse_term();
    }

    static QUFun divide(const QUFun& a, const QUFun& b) {
        if (b.is_zero()) throw std::domain_error("scalar parse: division by zero");
        if (b.degree_u() > 0)
            throw std::invalid_argument("scalar parse: l in denominator");
        QFun inv = b.coeff_u(0).inv();
        return a.scaled(inv);
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

QUFun QUFun::parse(const std::string& s) {
    return ScalarParser(s).run();
}

}  // namespace qmb
