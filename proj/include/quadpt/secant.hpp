#pragma once

// Secant-plane counts for a smooth V^a in projective space.
//
// Setup for r-secant (r-2)-planes: V of dimension a in P^M, M = ra + r - 2,
// G = Gr_{r-1}(C^{M+1}), F = P(S) -> G, and B = V x_{P^M} F -> G. The map
// f: B -> G has relative dimension l = (r-1)a and
//   r! N = integral over G of n_{A0^r}(f).
// r = 4 is the 4-secant plane count; other r are experimental.

#include "quadpt/grassmann.hpp"
#include "quadpt/kazarian.hpp"
#include "quadpt/render.hpp"
#include "quadpt/thom.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <sstream>

namespace quadpt {

// ---------------------------------------------------------------------------
// chi polynomials

/// u = (u_1..u_a) is stored as the index sum_t u_t (a+1)^{t-1} of a "chi"
/// variable, so ordinary GradedPoly arithmetic applies.
using ChiIndex = std::vector<int>;

inline int chi_weight(const ChiIndex& u) {
    int w = 0;
    for (std::size_t t = 0; t < u.size(); ++t) w += static_cast<int>(t + 1) * u[t];
    return w;
}

inline int encode_chi(const ChiIndex& u) {
    const int base = static_cast<int>(u.size()) + 1;
    int code = 0, scale = 1;
    for (int x : u) {
        if (x < 0 || x >= base) throw std::invalid_argument("chi index entry out of range");
        code += x * scale;
        scale *= base;
    }
    return code;
}

inline ChiIndex decode_chi(int code, int a) {
    ChiIndex u(static_cast<std::size_t>(a));
    for (int t = 0; t < a; ++t) {
        u[static_cast<std::size_t>(t)] = code % (a + 1);
        code /= a + 1;
    }
    return u;
}

inline std::string chi_index_string(const ChiIndex& u) {
    std::string s;
    for (std::size_t t = 0; t < u.size(); ++t) s += (t ? "," : "") + std::to_string(u[t]);
    return s;
}

struct MissingChi : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class ChiPolynomial {
public:
    explicit ChiPolynomial(int a, GradedPoly p = {}) : a_(a), poly_(std::move(p)) {
        if (a < 1) throw std::invalid_argument("chi polynomials need a >= 1");
    }

    static ChiPolynomial chi(const ChiIndex& u) {
        if (chi_weight(u) > static_cast<int>(u.size()))
            throw std::invalid_argument("chi_" + chi_index_string(u) + " has weight above a");
        return ChiPolynomial(static_cast<int>(u.size()), GradedPoly::variable(Variable{"chi", encode_chi(u), 1}));
    }

    int a() const { return a_; }
    const GradedPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    /// Highest chi-degree (each chi has weight 1).
    int chi_degree() const { return poly_.is_zero() ? 0 : poly_.degree(); }

    /// Coefficient of a product of chi's, listed with multiplicity.
    Rat coefficient(const std::vector<ChiIndex>& monomial) const {
        std::map<int, unsigned> exps;
        for (const auto& u : monomial) ++exps[encode_chi(u)];
        std::vector<std::pair<VarKey, unsigned>> m;
        for (const auto& [code, x] : exps) m.push_back({VarKey{"chi", code}, x});
        return poly_.coefficient(m);
    }

    friend ChiPolynomial operator+(const ChiPolynomial& x, const ChiPolynomial& y) {
        return ChiPolynomial(check(x, y), x.poly_ + y.poly_);
    }
    friend ChiPolynomial operator-(const ChiPolynomial& x, const ChiPolynomial& y) {
        return ChiPolynomial(check(x, y), x.poly_ - y.poly_);
    }
    friend ChiPolynomial operator*(const ChiPolynomial& x, const ChiPolynomial& y) {
        return ChiPolynomial(check(x, y), x.poly_ * y.poly_);
    }
    friend ChiPolynomial operator*(const ChiPolynomial& x, const Rat& s) { return ChiPolynomial(x.a_, x.poly_ * s); }
    bool operator==(const ChiPolynomial& o) const { return a_ == o.a_ && poly_ == o.poly_; }

    Rat evaluate(const std::map<ChiIndex, Rat>& values) const {
        return quadpt::evaluate<Rat>(
            poly_,
            [&](const Variable& v) {
                auto u = decode_chi(v.index, a_);
                auto it = values.find(u);
                if (it == values.end()) throw MissingChi("no value for chi_(" + chi_index_string(u) + ")");
                return it->second;
            },
            Rat(1));
    }

    std::string symbol(const VarKey& k, bool tex) const {
        std::string idx = chi_index_string(decode_chi(k.index, a_));
        return tex ? "\\chi_{" + idx + "}" : "chi[" + idx + "]";
    }

    std::string to_string() const { return render(false); }
    std::string to_latex() const { return render(true); }

    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        const auto& table = *poly_.vars();
        for (const auto& [e, c] : poly_.canonical_terms()) {
            nlohmann::json mono = nlohmann::json::array();
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) mono.push_back({decode_chi(table[i].index, a_), e[i]});
            terms.push_back({{"coeff", to_fraction_string(c)}, {"monomial", mono}});
        }
        return {{"a", a_}, {"terms", terms}};
    }

    static ChiPolynomial from_json(const nlohmann::json& j) {
        int a = j.at("a").get<int>();
        ChiPolynomial out(a);
        for (const auto& t : j.at("terms")) {
            GradedPoly m(parse_rat(t.at("coeff").get<std::string>()));
            for (const auto& f : t.at("monomial")) {
                auto u = f.at(0).get<ChiIndex>();
                if (static_cast<int>(u.size()) != a) throw std::invalid_argument("chi index has the wrong length");
                m = m * chi(u).poly_.pow(f.at(1).get<int>());
            }
            out.poly_ = out.poly_ + m;
        }
        return out;
    }

    /// Parses sums of terms like "-36*chi[1,0]*chi[0,1] + 3*chi[0,1]^2".
    static ChiPolynomial parse(std::string_view text, int a);

private:
    static int check(const ChiPolynomial& x, const ChiPolynomial& y) {
        if (x.a_ != y.a_) throw std::invalid_argument("chi polynomials for different a");
        return x.a_;
    }

    std::string render(bool tex) const {
        if (poly_.is_zero()) return "0";
        const auto& table = *poly_.vars();
        std::string out;
        bool first = true;
        for (const auto& [e, c] : poly_.canonical_terms()) {
            Rat mag = abs(c);
            out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            first = false;
            bool unit = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
            bool need_star = false;
            if (mag != 1 || unit) {
                out += tex ? detail::latex_rat(mag) : to_short_string(mag);
                need_star = !tex;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (need_star) out += "*";
                out += symbol(table[i].key(), tex);
                if (e[i] > 1) out += tex ? "^{" + std::to_string(e[i]) + "}" : "^" + std::to_string(e[i]);
                need_star = !tex;
            }
        }
        return out;
    }

    int a_;
    GradedPoly poly_;
};

inline ChiPolynomial ChiPolynomial::parse(std::string_view text, int a) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("chi polynomial: " + what + " at position " + std::to_string(pos));
    };
    auto integer = [&] {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a number");
        return std::string(text.substr(start, pos - start));
    };
    ChiPolynomial out(a);
    skip();
    bool first = true;
    while (pos < text.size()) {
        Rat sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        GradedPoly term(sign);
        bool expect_factor = true;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = integer();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                num += "/" + integer();
            }
            term = term * parse_rat(num);
            skip();
            expect_factor = pos < text.size() && text[pos] == '*';
            if (expect_factor) ++pos;
        }
        while (expect_factor) {
            skip();
            if (text.substr(pos, 4) != "chi[") fail("expected chi[...]");
            pos += 4;
            ChiIndex u;
            while (true) {
                skip();
                u.push_back(std::stoi(integer()));
                skip();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < text.size() && text[pos] == ']') {
                    ++pos;
                    break;
                }
                fail("malformed chi index");
            }
            if (static_cast<int>(u.size()) != a) fail("chi index has the wrong length");
            int power = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                power = std::stoi(integer());
            }
            term = term * chi(u).poly_.pow(power);
            skip();
            expect_factor = pos < text.size() && text[pos] == '*';
            if (expect_factor) ++pos;
        }
        out.poly_ = out.poly_ + term;
        skip();
    }
    return out;
}

/// Reads {"(1,0)": "12/1", ...}.
inline std::map<ChiIndex, Rat> chi_values_from_json(const nlohmann::json& j) {
    std::map<ChiIndex, Rat> out;
    for (const auto& [key, value] : j.items()) {
        std::string k = key;
        if (k.size() < 2 || k.front() != '(' || k.back() != ')') throw std::invalid_argument("bad chi key " + key);
        ChiIndex u;
        std::stringstream ss(k.substr(1, k.size() - 2));
        std::string part;
        while (std::getline(ss, part, ',')) u.push_back(std::stoi(part));
        out[u] = value.is_string() ? parse_rat(value.get<std::string>()) : Rat(value.get<long>());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Problem data

struct SecantProblem {
    int a;
    int r = 4;

    int M() const { return r * a + r - 2; }        // projective ambient dimension
    int n() const { return M() + 1; }               // ambient vector space
    int k() const { return r - 1; }                 // rank of S
    int ell() const { return (r - 1) * a; }         // relative dimension of f
    int codimV() const { return M() - a; }
    GrassRing ring() const { return GrassRing(k(), n()); }
    /// Highest xi power that can survive pi_!(H^{codimV} ...).
    int max_xi() const { return n() - 1 - codimV(); }

    void validate() const {
        if (a < 1) throw std::invalid_argument("a must be at least 1");
        if (r < 3) throw std::invalid_argument("r must be at least 3");
        if (r - 2 + a > 16) throw std::invalid_argument("problem too large for the packed monomial layout");
    }
};

// ---------------------------------------------------------------------------
// Polynomials in k_1..k_{r-2} (Chern classes of kappa) and n_1..n_a, with
// n-monomials of weight above a discarded.

class NuPoly {
public:
    using Key = std::array<std::uint8_t, 16>;  // k exponents first, then n exponents

    NuPoly() = default;
    NuPoly(int kcount, int a) : kcount_(kcount), a_(a) {}

    static NuPoly constant(int kcount, int a, const Rat& c) {
        NuPoly p(kcount, a);
        if (c != 0) p.terms_[Key{}] = c;
        return p;
    }
    static NuPoly k(int kcount, int a, int i) {
        NuPoly p(kcount, a);
        Key key{};
        key[static_cast<std::size_t>(i - 1)] = 1;
        p.terms_[key] = 1;
        return p;
    }
    static NuPoly n(int kcount, int a, int t) {
        NuPoly p(kcount, a);
        if (t > a) return p;
        Key key{};
        key[static_cast<std::size_t>(kcount + t - 1)] = 1;
        p.terms_[key] = 1;
        return p;
    }

    int kcount() const { return kcount_; }
    int a() const { return a_; }
    const std::map<Key, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int n_weight(const Key& key) const {
        int w = 0;
        for (int t = 1; t <= a_; ++t) w += t * key[static_cast<std::size_t>(kcount_ + t - 1)];
        return w;
    }
    int k_degree(const Key& key) const {
        int w = 0;
        for (int i = 1; i <= kcount_; ++i) w += i * key[static_cast<std::size_t>(i - 1)];
        return w;
    }
    int degree(const Key& key) const { return n_weight(key) + k_degree(key); }

    bool is_homogeneous_of_degree(int d) const {
        for (const auto& [key, c] : terms_)
            if (degree(key) != d) return false;
        return true;
    }

    void add(const Key& key, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend NuPoly operator+(NuPoly x, const NuPoly& y) {
        x.adopt(y);
        for (const auto& [key, c] : y.terms_) x.add(key, c);
        return x;
    }
    friend NuPoly operator*(NuPoly x, const Rat& s) {
        if (s == 0) x.terms_.clear();
        for (auto& [key, c] : x.terms_) c *= s;
        return x;
    }
    friend NuPoly operator*(const NuPoly& x, const NuPoly& y) {
        NuPoly out(std::max(x.kcount_, y.kcount_), std::max(x.a_, y.a_));
        // Pre-split by n-weight so that overweight pairs are skipped cheaply.
        std::vector<std::pair<const Key*, const Rat*>> ys;
        std::vector<int> yw;
        for (const auto& [key, c] : y.terms_) {
            ys.emplace_back(&key, &c);
            yw.push_back(out.n_weight(key));
        }
        for (const auto& [kx, cx] : x.terms_) {
            int wx = out.n_weight(kx);
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (wx + yw[j] > out.a_) continue;
                Key key;
                for (std::size_t s = 0; s < key.size(); ++s)
                    key[s] = static_cast<std::uint8_t>(kx[s] + (*ys[j].first)[s]);
                out.add(key, cx * *ys[j].second);
            }
        }
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [key, c] = *it;
            out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            first = false;
            std::string mono;
            for (int i = 1; i <= kcount_; ++i)
                if (int e = key[static_cast<std::size_t>(i - 1)])
                    mono += (mono.empty() ? "" : "*") + std::string("k") + std::to_string(i) + (e > 1 ? "^" + std::to_string(e) : "");
            for (int t = 1; t <= a_; ++t)
                if (int e = key[static_cast<std::size_t>(kcount_ + t - 1)])
                    mono += (mono.empty() ? "" : "*") + std::string("n") + std::to_string(t) + (e > 1 ? "^" + std::to_string(e) : "");
            Rat m = abs(c);
            if (mono.empty()) out += to_short_string(m);
            else out += (m != 1 ? to_short_string(m) + "*" : "") + mono;
        }
        return out;
    }

    bool operator==(const NuPoly& o) const { return terms_ == o.terms_; }

private:
    void adopt(const NuPoly& y) {
        kcount_ = std::max(kcount_, y.kcount_);
        a_ = std::max(a_, y.a_);
    }

    int kcount_ = 0;
    int a_ = 0;
    std::map<Key, Rat> terms_;
};

/// c_1(nu_f), ..., c_maxdeg(nu_f) for nu_f = p^*(nu_i) - kappa:
/// c(nu_f) = (1 + n_1 + ... + n_a) / (1 + k_1 + ... + k_{r-2}).
inline std::vector<NuPoly> nu_f_chern(const SecantProblem& pr, int maxdeg) {
    pr.validate();
    const int K = pr.k() - 1, a = pr.a;
    std::vector<NuPoly> inv{NuPoly::constant(K, a, 1)};
    for (int m = 1; m <= maxdeg; ++m) {
        NuPoly s(K, a);
        for (int i = 1; i <= std::min(K, m); ++i) s = s + NuPoly::k(K, a, i) * inv[static_cast<std::size_t>(m - i)] * Rat(-1);
        inv.push_back(s);
    }
    std::vector<NuPoly> out;
    for (int m = 1; m <= maxdeg; ++m) {
        NuPoly c = inv[static_cast<std::size_t>(m)];
        for (int t = 1; t <= std::min(a, m); ++t) c = c + NuPoly::n(K, a, t) * inv[static_cast<std::size_t>(m - t)];
        out.push_back(c);
    }
    return out;
}

/// A chi-linear combination of Grassmannian classes, or more generally a
/// polynomial in chi with class coefficients. Keys are sorted chi codes.
using ChiClass = std::map<std::vector<int>, GrassClass>;

struct DimensionMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// Evaluates a residue polynomial at nu_f and pushes it forward to G.
class SecantPipeline {
public:
    explicit SecantPipeline(SecantProblem pr, Orientation o = Orientation::dual)
        : pr_(pr), orientation_(o), ring_(pr.ring()) {
        pr_.validate();
        kappa_ = kappa_chern(ring_, pr_.max_xi());
    }

    const SecantProblem& problem() const { return pr_; }

    /// f_!(R(nu_f)) for a residue polynomial R of degree `degree` in c.
    ChiClass gysin(const GradedPoly& residue, int degree) {
        if (!residue.is_homogeneous_of_degree(degree))
            throw DimensionMismatch("residue polynomial is not homogeneous of the expected degree");
        ensure_nu(degree);
        NuPoly value = quadpt::evaluate<NuPoly>(
            residue,
            [&](const Variable& v) {
                if (v.family != "c" || v.index < 1 || v.index > degree)
                    throw std::invalid_argument("residue polynomial has a non-Chern variable");
                return nu_[static_cast<std::size_t>(v.index - 1)];
            },
            NuPoly::constant(pr_.k() - 1, pr_.a, 1));
        if (!value.is_homogeneous_of_degree(degree))
            throw DimensionMismatch("class on B is not homogeneous");

        // Group by the n-monomial, collect the kappa part as a fiber class.
        const int K = pr_.k() - 1;
        std::map<std::vector<int>, FiberClass> by_n;
        for (const auto& [key, c] : value.terms()) {
            std::vector<int> nexp(key.begin() + K, key.begin() + K + pr_.a);
            std::vector<int> kexp(key.begin(), key.begin() + K);
            auto it = by_n.try_emplace(nexp, ring_, pr_.max_xi()).first;
            it->second.add_scaled(kappa_power(kexp), c);
        }
        ChiClass out;
        for (const auto& [nexp, fiber] : by_n) {
            int w = chi_weight(nexp);
            GrassClass pushed = pushforward_with_hyperplane(fiber, pr_.codimV() + w, orientation_);
            if (pushed.is_zero()) continue;
            if (!pushed.is_homogeneous_of_degree(degree + pr_.ell()))
                throw DimensionMismatch("pushforward landed in the wrong degree");
            auto [it, inserted] = out.try_emplace({encode_chi(nexp)}, pushed);
            if (!inserted) it->second += pushed;
        }
        return out;
    }

private:
    void ensure_nu(int degree) {
        if (static_cast<int>(nu_.size()) < degree) nu_ = nu_f_chern(pr_, degree);
    }

    const FiberClass& kappa_power(const std::vector<int>& e) {
        auto it = powers_.find(e);
        if (it != powers_.end()) return it->second;
        std::size_t i = 0;
        while (i < e.size() && e[i] == 0) ++i;
        FiberClass value = FiberClass::pullback(GrassClass::one(ring_), pr_.max_xi());
        if (i < e.size()) {
            std::vector<int> lower = e;
            --lower[i];
            value = kappa_power(lower) * kappa_[i];
        }
        return powers_.emplace(e, std::move(value)).first->second;
    }

    SecantProblem pr_;
    Orientation orientation_;
    GrassRing ring_;
    std::vector<FiberClass> kappa_;
    std::vector<NuPoly> nu_;
    std::map<std::vector<int>, FiberClass> powers_;
};

inline ChiClass chi_class_mul(const ChiClass& x, const ChiClass& y) {
    ChiClass out;
    for (const auto& [mx, gx] : x)
        for (const auto& [my, gy] : y) {
            std::vector<int> m = mx;
            m.insert(m.end(), my.begin(), my.end());
            std::sort(m.begin(), m.end());
            GrassClass g = class_mul(gx, gy);
            if (g.is_zero()) continue;
            auto [it, inserted] = out.try_emplace(m, g);
            if (!inserted) it->second += g;
        }
    return out;
}

inline ChiPolynomial chi_integrate_product(const ChiClass& x, const ChiClass& y, int a) {
    ChiPolynomial out(a);
    for (const auto& [mx, gx] : x)
        for (const auto& [my, gy] : y) {
            Rat v = integrate_product(gx, gy);
            if (v == 0) continue;
            GradedPoly mono(v);
            for (int code : mx) mono = mono * GradedPoly::variable(Variable{"chi", code, 1});
            for (int code : my) mono = mono * GradedPoly::variable(Variable{"chi", code, 1});
            out = out + ChiPolynomial(a, mono);
        }
    return out;
}

struct SecantResult {
    SecantProblem problem;
    ChiPolynomial rfactorial_N;                  // r! N, the integral of n_{A0^r}
    std::vector<std::pair<int, double>> timings; // per S_k, seconds
};

/// r! N for r-secant (r-2)-planes. Residues R_{A0^k} come from `table`
/// (k >= 5 needs plug-in series there).
inline SecantResult count_rsecant(const SecantProblem& pr, const ResidueTable& table,
                                  Orientation o = Orientation::dual) {
    pr.validate();
    SecantPipeline pipe(pr, o);
    const int ell = pr.ell();
    std::map<int, ChiClass> S;
    SecantResult result{pr, ChiPolynomial(pr.a), {}};
    for (int k = 1; k <= pr.r; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        auto m = MultiSingularity::A0_power(k);
        GradedPoly R = k == 1 ? GradedPoly(1) : table(m, ell);
        S.emplace(k, pipe.gysin(R, (k - 1) * ell));
        for (const auto& [mono, g] : S.at(k))
            if (mono.size() != 1 || !g.is_homogeneous_of_degree(k * ell))
                throw DimensionMismatch("S_k must be chi-linear of degree k*l");
        result.timings.emplace_back(k, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }

    // Integrate each product of S symbols; the product is split into two
    // halves whose classes are multiplied and then paired.
    std::map<std::vector<int>, ChiClass> products;
    std::function<const ChiClass&(const std::vector<int>&)> product_of = [&](const std::vector<int>& ks) -> const ChiClass& {
        auto it = products.find(ks);
        if (it != products.end()) return it->second;
        ChiClass value;
        if (ks.size() == 1) {
            value = S.at(ks[0]);
        } else {
            std::vector<int> head(ks.begin(), ks.end() - 1);
            value = chi_class_mul(product_of(head), S.at(ks.back()));
        }
        return products.emplace(ks, std::move(value)).first->second;
    };

    const FormalExpansion expansion = expand_n(MultiSingularity::A0_power(pr.r));
    for (const auto& [prod, coeff] : expansion.terms()) {
        std::vector<int> ks;
        for (const auto& s : prod) {
            if (s.kind != Symbol::Kind::S || s.multi.a0_power() == 0)
                throw std::logic_error("unexpected symbol in the A0^r expansion");
            ks.push_back(s.multi.a0_power());
        }
        std::sort(ks.begin(), ks.end());
        int total = 0;
        for (int k : ks) total += k * ell;
        if (total != pr.ring().dim()) throw DimensionMismatch("integrand is not of top degree");
        std::size_t half = ks.size() / 2;
        ChiPolynomial value(pr.a);
        if (ks.size() == 1) {
            value = chi_integrate_product(S.at(ks[0]), ChiClass{{{}, GrassClass::one(pr.ring())}}, pr.a);
        } else {
            std::vector<int> left(ks.begin(), ks.begin() + static_cast<long>(half));
            std::vector<int> right(ks.begin() + static_cast<long>(half), ks.end());
            value = chi_integrate_product(product_of(left), product_of(right), pr.a);
        }
        result.rfactorial_N = result.rfactorial_N + value * coeff;
    }
    return result;
}

/// 4! N_a for 4-secant planes to V^a in P^{4a+2}.
inline ChiPolynomial count_4secant(int a, Orientation o = Orientation::dual) {
    ResidueTable table;
    return count_rsecant(SecantProblem{a, 4}, table, o).rfactorial_N;
}

/// N_a evaluated at numeric chi values.
inline Rat count_4secant_value(int a, const std::map<ChiIndex, Rat>& chi, Orientation o = Orientation::dual) {
    return count_4secant(a, o).evaluate(chi) / Rat(24);
}

// ---------------------------------------------------------------------------
// Hilbert-scheme variables for surfaces: d, pi, kappa, e.

struct LehnForm {
    GradedPoly value;        // in families d, pi, kappa, e (index 0)
    bool round_trip = false; // converting back reproduces the input
    std::string text() const;
    std::string latex() const;
};

inline GradedPoly lehn_var(const std::string& name) { return GradedPoly::variable(Variable{name, 0, 1}); }

inline std::string lehn_symbol(const VarKey& k, bool tex) {
    if (k.family == "pi" || k.family == "kappa") return tex ? "\\" + k.family : k.family;
    return k.family;
}

inline std::string render_named(const GradedPoly& p, bool tex) {
    if (p.is_zero()) return "0";
    const auto& table = *p.vars();
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.canonical_terms()) {
        Rat mag = abs(c);
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        bool unit = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
        bool star = false;
        if (mag != 1 || unit) {
            out += tex ? detail::latex_rat(mag) : to_short_string(mag);
            star = !tex;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (star) out += tex ? " " : "*";
            out += lehn_symbol(table[i].key(), tex);
            if (e[i] > 1) out += tex ? "^{" + std::to_string(e[i]) + "}" : "^" + std::to_string(e[i]);
            star = true;
        }
    }
    return out;
}

inline std::string LehnForm::text() const { return render_named(value, false); }
inline std::string LehnForm::latex() const { return render_named(value, true); }

/// Rewrites a chi polynomial for a = 2 in d, pi, kappa, e via
/// chi_00 = d, chi_10 = pi + 11d, chi_20 = kappa + 22pi + 121d,
/// chi_01 = -e + kappa + 11pi + 55d.
inline LehnForm lehn_crosscheck(const ChiPolynomial& p) {
    if (p.a() != 2) throw std::invalid_argument("the Hilbert-scheme variables apply to a = 2");
    GradedPoly d = lehn_var("d"), pi = lehn_var("pi"), kappa = lehn_var("kappa"), e = lehn_var("e");
    std::map<int, GradedPoly> forward{
        {encode_chi({0, 0}), d},
        {encode_chi({1, 0}), pi + d * Rat(11)},
        {encode_chi({2, 0}), kappa + pi * Rat(22) + d * Rat(121)},
        {encode_chi({0, 1}), e * Rat(-1) + kappa + pi * Rat(11) + d * Rat(55)},
    };
    auto image = [&](const Variable& v) {
        auto it = forward.find(v.index);
        if (it == forward.end()) throw MissingChi("no Hilbert-scheme expression for this chi");
        return it->second;
    };
    LehnForm out{evaluate<GradedPoly>(p.poly(), image, GradedPoly(1)), false};

    auto c = [](int u1, int u2) { return ChiPolynomial::chi({u1, u2}).poly(); };
    std::map<std::string, GradedPoly> back{
        {"d", c(0, 0)},
        {"pi", c(1, 0) - c(0, 0) * Rat(11)},
        {"kappa", c(2, 0) - c(1, 0) * Rat(22) + c(0, 0) * Rat(121)},
        {"e", c(0, 1) * Rat(-1) + c(2, 0) - c(1, 0) * Rat(11) + c(0, 0) * Rat(55)},
    };
    GradedPoly restored =
        evaluate<GradedPoly>(out.value, [&](const Variable& v) { return back.at(v.family); }, GradedPoly(1));
    out.round_trip = restored == p.poly();
    return out;
}

}  // namespace quadpt
