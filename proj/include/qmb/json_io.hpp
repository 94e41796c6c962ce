#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmb/kernels.hpp"
#include "qmb/qfun.hpp"
#include "qmb/qufun.hpp"
#include "qmb/rational.hpp"
#include "qmb/shape.hpp"

namespace qmb {

using Json = nlohmann::ordered_json;

/* Canonical scalar strings; exact inverses of the parse functions, so
 * serialized documents round-trip bit-exactly. */
inline std::string scalar_str(const Rational& v) { return v.str(); }
inline std::string scalar_str(const QFun& v) { return v.str(); }
inline std::string scalar_str(const QUFun& v) { return v.str(); }

template <class S>
S scalar_parse(const std::string&);
template <>
inline Rational scalar_parse<Rational>(const std::string& s) { return Rational::parse(s); }
template <>
inline QFun scalar_parse<QFun>(const std::string& s) { return QFun::parse(s); }
template <>
inline QUFun scalar_parse<QUFun>(const std::string& s) { return QUFun::parse(s); }

/* One exponent block (the z part or the zeta part of a monomial) as a
 * sparse list of triples [alpha, a, exponent], 1-based, ascending in
 * the canonical (a, then alpha) generator order. */
inline Json exponents_to_json(const Shape& sh, const std::vector<std::uint32_t>& part) {
    Json out = Json::array();
    for (int a = 1; a <= sh.n; ++a)
        for (int alpha = 1; alpha <= sh.m; ++alpha) {
            std::uint32_t e = part[static_cast<size_t>(sh.slot(alpha, a))];
            if (e != 0) out.push_back(Json::array({alpha, a, e}));
        }
    return out;
}

inline std::vector<std::uint32_t> exponents_from_json(const Shape& sh, const Json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("monomial: expected an array of triples");
    std::vector<std::uint32_t> part(static_cast<size_t>(sh.slots()), 0);
    long last_slot = -1;
    for (const Json& t : arr) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("monomial: each entry must be a triple [alpha, a, e]");
        long alpha = t[0].get<long>(), a = t[1].get<long>(), e = t[2].get<long>();
        if (alpha < 1 || alpha > sh.m || a < 1 || a > sh.n)
            throw std::invalid_argument("monomial: generator index out of range");
        if (e <= 0) throw std::invalid_argument("monomial: exponent must be positive");
        long s = sh.slot(static_cast<int>(alpha), static_cast<int>(a));
        if (s <= last_slot)
            throw std::invalid_argument("monomial: triples out of order or repeated");
        last_slot = s;
        part[static_cast<size_t>(s)] = static_cast<std::uint32_t>(e);
    }
    return part;
}

/* Serialized form of a holomorphic basis: one triple list per monomial. */
inline Json basis_to_json(const Shape& sh, const std::vector<NormalMonomial>& basis) {
    Json out = Json::array();
    for (const NormalMonomial& mono : basis) out.push_back(exponents_to_json(sh, mono.E));
    return out;
}

/* {shape, D, lambda, terms: [{degree, entries: [{left, right, coeff}]}]}.
 * Every degree 0..D is listed; entries follow the monomial order of the
 * kernel element, so output bytes are stable for a fixed series. */
template <class S>
Json kernel_series_to_json(const KernelSeries<S>& ks, const Json& lambda) {
    Json doc;
    doc["shape"] = Json{{"m", ks.shape.m}, {"n", ks.shape.n}};
    doc["D"] = ks.D;
    doc["lambda"] = lambda;
    Json terms = Json::array();
    for (int d = 0; d <= ks.D; ++d) {
        Json entries = Json::array();
        for (const auto& [mono, c] : ks.terms[static_cast<size_t>(d)].terms) {
            Json e;
            e["left"] = exponents_to_json(ks.shape, mono.left.E);
            e["right"] = exponents_to_json(ks.shape, mono.right.F);
            e["coeff"] = scalar_str(c);
            entries.push_back(std::move(e));
        }
        terms.push_back(Json{{"degree", d}, {"entries", std::move(entries)}});
    }
    doc["terms"] = std::move(terms);
    return doc;
}

template <class S>
KernelSeries<S> kernel_series_from_json(const Json& doc) {
    Shape sh(doc.at("shape").at("m").get<int>(), doc.at("shape").at("n").get<int>());
    int D = doc.at("D").get<int>();
    if (D < 0) throw std::invalid_argument("kernel series: D must be nonnegative");
    KernelSeries<S> ks{sh, D, {}};
    ks.terms.assign(static_cast<size_t>(D) + 1, KernelElement<S>{sh, {}});
    for (const Json& t : doc.at("terms")) {
        int d = t.at("degree").get<int>();
        if (d < 0 || d > D) throw std::invalid_argument("kernel series: degree out of range");
        KernelElement<S>& el = ks.terms[static_cast<size_t>(d)];
        for (const Json& e : t.at("entries")) {
            NormalMonomial left(sh), right(sh);
            left.E = exponents_from_json(sh, e.at("left"));
            right.F = exponents_from_json(sh, e.at("right"));
            S c = scalar_parse<S>(e.at("coeff").get<std::string>());
            if (!el.terms.emplace(KernelMonomial{std::move(left), std::move(right)}, std::move(c)).second)
                throw std::invalid_argument("kernel series: duplicate kernel monomial");
        }
    }
    return ks;
}

}  // namespace qmb
