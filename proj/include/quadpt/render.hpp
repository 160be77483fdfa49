#pragma once

// Deterministic text, LaTeX and JSON forms of polynomials.

#include "quadpt/graded_poly.hpp"

#include <nlohmann/json.hpp>

namespace quadpt {

inline std::string latex_symbol(const VarKey& k) {
    static const std::vector<std::string> greek = {"alpha", "beta", "gamma", "delta", "kappa", "xi", "chi"};
    bool is_greek = std::find(greek.begin(), greek.end(), k.family) != greek.end();
    std::string base = is_greek ? "\\" + k.family : k.family;
    if (k.index == 0 && !is_indexed_family(k.family)) return base;
    std::string idx = std::to_string(k.index);
    return base + "_" + (idx.size() > 1 ? "{" + idx + "}" : idx);
}

/// Signed content: gcd of numerators over lcm of denominators, carrying the
/// sign of the leading canonical term.
inline Rat content(const GradedPoly& p) {
    if (p.is_zero()) return 0;
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    g = abs(g);
    Rat out(g, l);
    out.canonicalize();
    if (p.canonical_terms().front().second < 0) out = -out;
    return out;
}

namespace detail {

inline std::string latex_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

inline std::string latex_terms(const GradedPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    const auto& table = *p.vars();
    for (const auto& [e, c] : p.canonical_terms()) {
        Rat mag = abs(c);
        if (first) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        first = false;
        bool unit = true;
        for (auto x : e) unit = unit && x == 0;
        if (mag != 1 || unit) out += latex_rat(mag);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out += latex_symbol(table[i].key());
            if (e[i] > 1) {
                std::string x = std::to_string(e[i]);
                out += "^" + (x.size() > 1 ? "{" + x + "}" : x);
            }
        }
    }
    return out;
}

}  // namespace detail

/// LaTeX with the content factored out: "-6(c_1^3 + 3c_1c_2 + 2c_3)".
/// Monomials and polynomials with unit content are written out directly.
inline std::string to_latex(const GradedPoly& p) {
    if (p.size() <= 1) return detail::latex_terms(p);
    Rat k = content(p);
    if (k == 1) return detail::latex_terms(p);
    GradedPoly primitive = p * (Rat(1) / k);
    if (k == -1) return "-(" + detail::latex_terms(primitive) + ")";
    return detail::latex_rat(k) + "(" + detail::latex_terms(primitive) + ")";
}

/// Plain-text counterpart of to_latex: "-6*(c1^3 + 3*c1*c2 + 2*c3)".
inline std::string to_factored_text(const GradedPoly& p) {
    if (p.size() <= 1) return p.to_string();
    Rat k = content(p);
    if (k == 1) return p.to_string();
    std::string inner = (p * (Rat(1) / k)).to_string();
    if (k == -1) return "-(" + inner + ")";
    return to_short_string(k) + "*(" + inner + ")";
}

/// Canonical JSON: only occurring variables are listed, in (family, index)
/// order; terms in canonical order; coefficients as "p/q".
inline nlohmann::json to_json(const GradedPoly& p) {
    nlohmann::json vars = nlohmann::json::array(), terms = nlohmann::json::array();
    auto occ = p.occurring();
    std::vector<int> ref(p.vars()->size(), -1);
    for (std::size_t k = 0; k < occ.size(); ++k) {
        auto i = *p.vars()->find(occ[k]);
        ref[i] = static_cast<int>(k);
        vars.push_back({{"family", occ[k].family}, {"index", occ[k].index}, {"weight", (*p.vars())[i].weight}});
    }
    for (const auto& [e, c] : p.canonical_terms()) {
        nlohmann::json exps = nlohmann::json::array();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) exps.push_back({ref[i], e[i]});
        terms.push_back({{"coeff", to_fraction_string(c)}, {"exps", exps}});
    }
    return {{"vars", vars}, {"terms", terms}};
}

inline GradedPoly poly_from_json(const nlohmann::json& j) {
    std::vector<Variable> vars;
    for (const auto& v : j.at("vars"))
        vars.push_back({v.at("family").get<std::string>(), v.at("index").get<int>(), v.at("weight").get<int>()});
    auto table = make_table(vars);
    std::vector<std::size_t> slot;
    for (const auto& v : vars) slot.push_back(*table->find(v.key()));
    GradedPoly out(table);
    for (const auto& t : j.at("terms")) {
        GradedPoly::Exponents e(table->size(), 0);
        for (const auto& pair : t.at("exps")) {
            auto ref = pair.at(0).get<std::size_t>();
            if (ref >= slot.size()) throw std::invalid_argument("variable reference out of range");
            e[slot[ref]] += pair.at(1).get<std::uint32_t>();
        }
        out.add_term(e, parse_rat(t.at("coeff").get<std::string>()));
    }
    return out;
}

}  // namespace quadpt
