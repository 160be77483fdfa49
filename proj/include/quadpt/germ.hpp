#pragma once

// Stable germ prototypes given by torus weights, and the interpolation
// checks run against them.

#include "quadpt/render.hpp"
#include "quadpt/thom.hpp"

#include <nlohmann/json.hpp>

namespace quadpt {

inline GradedPoly alpha() { return var("alpha"); }
inline GradedPoly alpha_i(int i) { return var("alpha", i); }
inline GradedPoly beta_i(int i) { return var("beta", i); }

/// A stable germ encoded by the weights of its maximal torus on source and
/// target. Weights are linear forms in the root symbols.
struct GermPrototype {
    std::string name;
    int ell = 0;
    std::vector<GradedPoly> source;
    std::vector<GradedPoly> target;
    int delta = 1;
    std::vector<VarKey> betas;  // the U(l)-type roots, in order

    void validate() const {
        if (static_cast<int>(target.size()) - static_cast<int>(source.size()) != ell)
            throw std::invalid_argument(name + ": target and source sizes differ by " +
                                        std::to_string(target.size() - source.size()) + ", expected l = " +
                                        std::to_string(ell));
        for (const auto& w : source)
            if (!is_linear_form(w)) throw std::invalid_argument(name + ": source weight is not a linear form");
        for (const auto& w : target)
            if (!is_linear_form(w)) throw std::invalid_argument(name + ": target weight is not a linear form");
    }

    /// Assignment sending the last `count` beta roots to zero.
    Assignment drop_last_betas(int count) const {
        Assignment a;
        for (int i = 0; i < count && i < static_cast<int>(betas.size()); ++i)
            a[betas[betas.size() - 1 - static_cast<std::size_t>(i)]] = GradedPoly();
        return a;
    }
};

/// Stable A_k germ of relative dimension l (k = 1, 2, 3), group U(1) x U(l).
/// Source: j*alpha and beta_i - j*alpha for j = 1..k.
/// Target: (k+1)*alpha, beta_i, j*alpha for j = 2..k, beta_i - j*alpha.
inline GermPrototype germ_A(int k, int ell) {
    if (k < 1 || k > 3) throw std::invalid_argument("germ_A: k must be 1, 2 or 3");
    if (ell < 0) throw std::invalid_argument("germ_A: l must be >= 0");
    GermPrototype g;
    g.name = "f_A" + std::to_string(k) + "(" + std::to_string(ell) + ")";
    g.ell = ell;
    g.delta = k + 1;
    const GradedPoly a = alpha();
    for (int i = 1; i <= ell; ++i) g.betas.push_back({"beta", i});
    for (int j = 1; j <= k; ++j) g.source.push_back(Rat(j) * a);
    for (int i = 1; i <= ell; ++i)
        for (int j = 1; j <= k; ++j) g.source.push_back(beta_i(i) - Rat(j) * a);
    g.target.push_back(Rat(k + 1) * a);
    for (int i = 1; i <= ell; ++i) g.target.push_back(beta_i(i));
    for (int j = 2; j <= k; ++j) g.target.push_back(Rat(j) * a);
    for (int i = 1; i <= ell; ++i)
        for (int j = 1; j <= k; ++j) g.target.push_back(beta_i(i) - Rat(j) * a);
    g.validate();
    return g;
}

/// Stable III_{2,2} germ of relative dimension l >= 1, group U(1)^2 x U(l-1).
inline GermPrototype germ_III22(int ell) {
    if (ell < 1) throw std::invalid_argument("germ_III22: l must be >= 1");
    GermPrototype g;
    g.name = "f_III22(" + std::to_string(ell) + ")";
    g.ell = ell;
    g.delta = 3;
    const GradedPoly a1 = alpha_i(1), a2 = alpha_i(2);
    for (int i = 1; i <= ell - 1; ++i) g.betas.push_back({"beta", i});
    g.source = {a1, a2, Rat(2) * a1 - a2, Rat(2) * a2 - a1, a1, a2};
    for (int i = 1; i <= ell - 1; ++i) {
        g.source.push_back(beta_i(i) - a1);
        g.source.push_back(beta_i(i) - a2);
    }
    g.target = {a1 + a2, Rat(2) * a1, Rat(2) * a2};
    for (int i = 1; i <= ell - 1; ++i) g.target.push_back(beta_i(i));
    for (const auto& w : std::vector<GradedPoly>{Rat(2) * a1 - a2, Rat(2) * a2 - a1, a1, a2}) g.target.push_back(w);
    for (int i = 1; i <= ell - 1; ++i) {
        g.target.push_back(beta_i(i) - a1);
        g.target.push_back(beta_i(i) - a2);
    }
    g.validate();
    return g;
}

/// The Whitney umbrella (x, y) -> (x^2, xy, y): the A_1 germ at l = 1 with a
/// single root beta.
inline GermPrototype whitney_umbrella() {
    GermPrototype g;
    g.name = "whitney";
    g.ell = 1;
    g.delta = 2;
    const GradedPoly a = alpha(), b = var("beta");
    g.betas = {{"beta", 0}};
    g.source = {a, b - a};
    g.target = {Rat(2) * a, b, b - a};
    g.validate();
    return g;
}

/// The non-proper blow-up (x, y) -> (x, xy). Not a stable germ; kept as the
/// negative control for the Euler class divisibility.
inline GermPrototype blowup_germ() {
    GermPrototype g;
    g.name = "blowup";
    g.ell = 0;
    g.delta = 0;
    const GradedPoly a = alpha(), b = var("beta");
    g.source = {a, b};
    g.target = {a, a + b};
    g.validate();
    return g;
}

inline GradedPoly euler_source(const GermPrototype& g) { return product(g.source); }
inline GradedPoly euler_target(const GermPrototype& g) { return product(g.target); }

/// Total Chern class of the virtual normal bundle up to degree maxdeg.
inline GradedPoly chern_total(const GermPrototype& g, int maxdeg) {
    return series_quotient(g.target, g.source, maxdeg);
}

struct NonExactDivision : std::domain_error {
    using std::domain_error::domain_error;
};

struct ImageClass {
    GradedPoly value;
    std::vector<GradedPoly> factors;  // linear factors of value, up to the scalar
};

/// n_1 = e(rho_1)/e(rho_0). Linear forms are primes, so the quotient is exact
/// iff every source weight is matched by a proportional target weight.
inline ImageClass n1(const GermPrototype& g) {
    std::vector<GradedPoly> remaining = g.target;
    Rat scalar = 1;
    for (const auto& w : g.source) {
        bool matched = false;
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            if (auto lambda = proportionality(w, *it)) {
                scalar *= *lambda;
                remaining.erase(it);
                matched = true;
                break;
            }
        }
        if (!matched)
            throw NonExactDivision(g.name + ": e(rho_0) does not divide e(rho_1); unmatched source weight " +
                                   w.to_string());
    }
    ImageClass out{scalar * product(remaining), remaining};
    if (out.value * euler_source(g) != euler_target(g))
        throw std::logic_error(g.name + ": n_1 * e(rho_0) != e(rho_1)");
    return out;
}

/// The class mbar_r of the r-tuple point locus in the source. Zero for
/// r > delta. For A_1 (r = 2) and A_3 (r = 4) the closure of the locus is a
/// coordinate subspace and the class is the Euler class of its normal bundle.
inline GradedPoly m_bar(const GermPrototype& g, int r) {
    if (r > g.delta) return GradedPoly();
    bool is_A1 = g.name.rfind("f_A1(", 0) == 0 || g.name == "whitney";
    bool is_A3 = g.name.rfind("f_A3(", 0) == 0;
    const GradedPoly a = alpha();
    if (is_A1 && r == 2) {
        GradedPoly out(1);
        for (const auto& b : g.betas) out = out * (GradedPoly::variable(Variable{b.family, b.index, 1}) - a);
        return out;
    }
    if (is_A3 && r == 4) {
        GradedPoly out(1);
        for (const auto& b : g.betas)
            for (int j = 1; j <= 3; ++j) out = out * (GradedPoly::variable(Variable{b.family, b.index, 1}) - Rat(j) * a);
        return out;
    }
    throw std::invalid_argument("mbar_" + std::to_string(r) + " is not available for " + g.name);
}

/// mbar_4, the quadruple point class.
inline GradedPoly m4_class(const GermPrototype& g) { return m_bar(g, 4); }

// ---------------------------------------------------------------------------
// Genotype series in the variables a, b and d_1..d_l.

struct GenotypeSeries {
    enum class Kind { aichern, i22chern, iii22chern };
    Kind kind;
    int ell;
    int r = 1;  // for aichern

    std::string name() const {
        switch (kind) {
            case Kind::aichern: return "aichern(r=" + std::to_string(r) + ")";
            case Kind::i22chern: return "i22chern";
            case Kind::iii22chern: return "iii22chern";
        }
        return {};
    }

    /// 1 + d_1 + ... + d_top
    static GradedPoly d_sum(int top) {
        GradedPoly out(1);
        for (int i = 1; i <= top; ++i) out += var("d", i);
        return out;
    }

    GradedPoly chern(int maxdeg) const {
        const GradedPoly a = var("a"), b = var("b");
        switch (kind) {
            case Kind::aichern:
                return (series_quotient({Rat(-(r + 1)) * a}, {-a}, maxdeg) * d_sum(ell)).truncated(maxdeg);
            case Kind::i22chern:
                return (series_quotient({Rat(-2) * a, Rat(-2) * b}, {-a, -b}, maxdeg) * d_sum(ell)).truncated(maxdeg);
            case Kind::iii22chern:
                return (series_quotient({Rat(-2) * a, Rat(-2) * b, -(a + b)}, {-a, -b}, maxdeg) * d_sum(ell - 1))
                    .truncated(maxdeg);
        }
        return {};
    }
};

/// Largest c-index occurring in p (0 if none).
inline int max_c_index(const GradedPoly& p) {
    int m = 0;
    for (const auto& k : p.occurring())
        if (k.family == "c") m = std::max(m, k.index);
    return m;
}

/// p(1 + x_1 + x_2 + ...) for a total class given up to the needed degree.
inline GradedPoly plug(const GradedPoly& p, const GradedPoly& total) { return plug_total_class(p, total); }

// ---------------------------------------------------------------------------
// Verification reports.

struct IdentityCheck {
    std::string name;
    bool passed = false;
    GradedPoly residual;  // lhs - rhs, or the non-vanishing specialization
    std::string note;
};

struct Report {
    std::string suite;
    int ell = 0;
    std::vector<IdentityCheck> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }

    void add(std::string name, const GradedPoly& residual, std::string note = {}) {
        checks.push_back({std::move(name), residual.is_zero(), residual, std::move(note)});
    }
    void add_bool(std::string name, bool ok, std::string note = {}) {
        checks.push_back({std::move(name), ok, GradedPoly(), std::move(note)});
    }
    void append(const Report& other) {
        for (const auto& c : other.checks) checks.push_back(c);
    }

    nlohmann::json to_json() const {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j = {{"identity", c.name}, {"passed", c.passed}, {"residual", quadpt::to_json(c.residual)}};
            if (!c.note.empty()) j["note"] = c.note;
            items.push_back(j);
        }
        return {{"suite", suite}, {"ell", ell}, {"passed", passed()}, {"checks", items}};
    }
};

/// Divisibility of `p` by every linear form in `factors`, certified by
/// vanishing on each zero locus. Returns the first non-vanishing
/// specialization, or zero.
inline GradedPoly divisibility_witness(const GradedPoly& p, const std::vector<GradedPoly>& factors) {
    for (const auto& f : factors) {
        GradedPoly r = substitute(p, zero_locus(f), Unassigned::keep);
        if (!r.is_zero()) return r;
    }
    return {};
}

// ---------------------------------------------------------------------------
// Suites.

/// c_{l+1} of f_A1(l) equals the source Euler class alpha * prod(beta_i - alpha).
inline Report verify_tpA1(int ell) {
    if (ell < 0) throw std::invalid_argument("verify_tpA1: l must be >= 0");
    Report rep{"tpa1", ell, {}};
    auto g = germ_A(1, ell);
    GradedPoly c = chern_total(g, ell + 1).homogeneous_part(ell + 1);
    rep.add("c_{l+1}(f_A1) = e(source)", c - euler_source(g));
    GradedPoly tp = thom_polynomial(ThomSeries::builtin_A(1), ell);
    rep.add("Tp(A1) = c_{l+1}", tp - cvar(ell + 1));
    return rep;
}

/// n_1 = 2 beta, mbar_2 = beta - alpha, and mbar_2 - n_1 = R_{A0^2} at c_1 = beta + alpha.
inline Report verify_whitney() {
    Report rep{"whitney", 1, {}};
    auto g = whitney_umbrella();
    const GradedPoly a = alpha(), b = var("beta");
    auto img = n1(g);
    rep.add("n_1 = 2 beta", img.value - Rat(2) * b);
    GradedPoly m2 = m_bar(g, 2);
    rep.add("mbar_2 = beta - alpha", m2 - (b - a));
    GradedPoly c = chern_total(g, 1);
    rep.add("c_1 = beta + alpha", c.homogeneous_part(1) - (a + b));
    GradedPoly R2 = plug(residue_A0r(2, 1), c.without_truncation());
    rep.add("mbar_2 - n_1 = -c_1", (m2 - img.value) - R2);
    return rep;
}

/// mbar_r(g) - R_{A0^r}(l)(c(g)) / (r-1)! is divisible by n_1(g).
inline Report verify_divisibility(const GermPrototype& g, int r) {
    if (r < 2 || r > 4) throw std::invalid_argument("verify_divisibility: r must be 2, 3 or 4");
    Report rep{"divisibility", g.ell, {}};
    int ell = g.ell;
    auto img = n1(g);  // throws NonExactDivision when e(source) does not divide e(target)
    GradedPoly mr = m_bar(g, r);
    GradedPoly R = residue_A0r(r, ell);
    GradedPoly c = chern_total(g, (r - 1) * ell);
    GradedPoly lead = plug(R, c) * (Rat(1) / Rat(factorial(r - 1)));
    GradedPoly diff = mr - lead;
    GradedPoly w = divisibility_witness(diff, img.factors);
    std::string name = g.name + ": mbar_" + std::to_string(r) + " - R_{A0^" + std::to_string(r) + "}/" +
                       factorial(r - 1).get_str() + " divisible by n_1";
    rep.add(name, w, w.is_zero() ? "" : "witness: non-zero restriction to a factor of n_1");
    return rep;
}

/// The identities (q1)-(q4) for R_{A0^4}(l), obtained from the germs
/// f_A1(l), f_A2(l), f_III22(l), f_A3(l) by sending the last beta to 0.
/// root_budget is the number of beta symbols kept symbolic; it must be at
/// least l - 1 (larger budgets add nothing after the last beta is dropped).
inline Report verify_quadruple(int ell, int root_budget = -1) {
    if (ell < 1) throw std::invalid_argument("verify_quadruple: l must be >= 1");
    if (root_budget < 0) root_budget = ell - 1;
    if (root_budget < ell - 1)
        throw std::invalid_argument("verify_quadruple: root budget must be >= l - 1");
    Report rep{"quadruple", ell, {}};
    // (q1)-(q4) hold only after one beta root is set to zero, so at most
    // l - 1 roots stay symbolic; a larger budget is clamped.
    if (root_budget > ell - 1)
        rep.add_bool("root budget", true,
                     "requested " + std::to_string(root_budget) + " beta roots, " + std::to_string(ell - 1) + " used");
    const int deg = 3 * ell;
    const GradedPoly R = residue_A0r(4, ell);
    const GradedPoly a = alpha();

    auto restricted = [&](const GermPrototype& g) {
        return substitute(chern_total(g, deg), g.drop_last_betas(1), Unassigned::keep);
    };

    rep.add("(q1) R_{A0^4} at (1+2a)prod^{l-1}(1+b_i)/(1+a) = 0", plug(R, restricted(germ_A(1, ell))));
    rep.add("(q2) R_{A0^4} at (1+3a)prod^{l-1}(1+b_i)/(1+a) = 0", plug(R, restricted(germ_A(2, ell))));

    auto g3 = germ_III22(ell);
    if (ell >= 2) {
        rep.add("(q3) R_{A0^4} at c(f_III22) with prod^{l-2} = 0", plug(R, restricted(g3)));
    } else {
        // No beta to drop at l = 1: certify divisibility by n_1 = 4(a1+a2) instead.
        GradedPoly full = plug(R, chern_total(g3, deg));
        GradedPoly w = divisibility_witness(full, {alpha_i(1) + alpha_i(2)});
        rep.add("(q3) R_{A0^4} at c(f_III22(1)) divisible by a1+a2", w,
                "l = 1 has no beta root; checked as vanishing at a2 = -a1");
    }

    auto g4 = germ_A(3, ell);
    GradedPoly lhs = plug(R, restricted(g4));
    GradedPoly rhs = Rat(-36) * a.pow(3);
    for (int i = 1; i <= ell - 1; ++i)
        for (int j = 1; j <= 3; ++j) rhs = rhs * (beta_i(i) - Rat(j) * a);
    rep.add("(q4) R_{A0^4} at (1+4a)prod^{l-1}(1+b_i)/(1+a) = -36a^3 prod(b_i-a)(b_i-2a)(b_i-3a)", lhs - rhs);
    GradedPoly m4 = substitute(m4_class(g4), g4.drop_last_betas(1), Unassigned::keep);
    rep.add("(q4) right side = 6 mbar_4(f_A3) at b_l = 0", Rat(6) * m4 - rhs);
    return rep;
}

/// s(al, be, ga) = e2^{be-l-2} h_{al-be} s(l+2,l+2) (d_ga - 2e1 d_{ga-1} + 4e2 d_{ga-2})
/// under the i22chern substitution.
inline GradedPoly factorization_residual(int ell, int al, int be, int ga, const GradedPoly& c_i22) {
    const GradedPoly a = var("a"), b = var("b");
    auto d = [&](int i) -> GradedPoly {
        if (i < 0 || i > ell) return {};
        return i == 0 ? GradedPoly(1) : var("d", i);
    };
    auto h = [&](int k) {
        GradedPoly out;
        for (int i = 0; i <= k; ++i) out += a.pow(static_cast<unsigned>(i)) * b.pow(static_cast<unsigned>(k - i));
        return out;
    };
    GradedPoly e1 = a + b, e2 = a * b;
    GradedPoly lhs = plug(schur3(al, be, ga), c_i22);
    GradedPoly rhs = e2.pow(static_cast<unsigned>(be - ell - 2)) * h(al - be) * plug(schur2(ell + 2, ell + 2), c_i22) *
                     (d(ga) - Rat(2) * e1 * d(ga - 1) + Rat(4) * e2 * d(ga - 2));
    return lhs - rhs;
}

/// The three substitution checks behind R_{III22 A0} plus spot checks of the
/// factorization formula.
inline Report verify_III22A0(int ell) {
    if (ell < 1) throw std::invalid_argument("verify_III22A0: l must be >= 1");
    Report rep{"iii22a0", ell, {}};
    const GradedPoly R = residue_III22A0(ell);
    const int deg = 3 * ell + 8;  // covers the factorization spot checks
    const GradedPoly a = var("a"), b = var("b");

    for (int r = 1; r <= 3; ++r) {
        GradedPoly c = GenotypeSeries{GenotypeSeries::Kind::aichern, ell, r}.chern(deg);
        rep.add("aichern r=" + std::to_string(r) + ": R_{III22A0} = 0", plug(R, c));
    }

    GradedPoly ci = GenotypeSeries{GenotypeSeries::Kind::i22chern, ell}.chern(deg);
    GradedPoly s_i = plug(schur2(ell + 2, ell + 2), ci);
    GradedPoly dl = var("d", ell);
    GradedPoly Ri = plug(R, ci);
    rep.add("i22chern: R_{III22A0} = -4 d_l s(l+2,l+2)", Ri + Rat(4) * dl * s_i);
    GradedPoly n_A0 = Rat(4) * dl;  // (-2a)(-2b) d_l / ((-a)(-b))
    rep.add("i22chern: R_{III22A0} + R_{III22} n_{A0} = 0", Ri + s_i * n_A0);

    GradedPoly ciii = GenotypeSeries{GenotypeSeries::Kind::iii22chern, ell}.chern(deg);
    GradedPoly Riii = plug(R, ciii);
    // iii22chern is i22chern composed with d_i -> d_i - (a+b) d_{i-1}, d_l -> -(a+b) d_{l-1}.
    Assignment compose;
    for (int i = 1; i <= ell; ++i) {
        GradedPoly prev = (i - 1 == 0) ? GradedPoly(1) : var("d", i - 1);
        GradedPoly cur = (i == ell) ? GradedPoly() : var("d", i);
        compose[{"d", i}] = cur - (a + b) * prev;
    }
    GradedPoly ci_composed = substitute(ci, compose, Unassigned::keep);
    rep.add("iii22chern = i22chern composed with d_i -> d_i - (a+b)d_{i-1}", ci_composed - ciii);
    rep.add("iii22chern: R_{III22A0} = (-4 d_l s(l+2,l+2)) composed", Riii - substitute(Rat(-4) * dl * s_i, compose, Unassigned::keep));
    GradedPoly dlm1 = (ell - 1 == 0) ? GradedPoly(1) : var("d", ell - 1);
    GradedPoly s_iii = plug(schur2(ell + 2, ell + 2), ciii);
    rep.add("iii22chern: R_{III22A0} + R_{III22} n_{A0} = 0 with n_{A0} = -4(a+b)d_{l-1}",
            Riii + s_iii * (Rat(-4) * (a + b) * dlm1));
    if (ell == 1)
        rep.add("iii22chern at l = 1: i22chern result with d_1 = -(a+b)",
                Riii - substitute(Rat(-4) * dl * s_i, {{{"d", 1}, -(a + b)}}, Unassigned::keep));

    for (int be = ell + 2; be <= ell + 3; ++be)
        for (int al = be; al <= be + 2; ++al)
            for (int ga = 0; ga <= ell; ++ga)
                rep.add("factorization s(" + std::to_string(al) + "," + std::to_string(be) + "," + std::to_string(ga) + ")",
                        factorization_residual(ell, al, be, ga, ci));
    return rep;
}

}  // namespace quadpt
