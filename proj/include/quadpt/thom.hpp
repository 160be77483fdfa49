#pragma once

// Thom series of A0..A3 (plus plug-in series), and the residue polynomials
// built from them.

#include "quadpt/graded_poly.hpp"
#include "quadpt/multising.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>

namespace quadpt {

// ---------------------------------------------------------------------------
// Truncated bivariate power series, used for the a_{i,j} generating function.

class Series2 {
public:
    explicit Series2(int maxdeg) : n_(maxdeg), c_(static_cast<std::size_t>((maxdeg + 1) * (maxdeg + 1))) {}

    int maxdeg() const { return n_; }
    Rat& at(int i, int j) { return c_[static_cast<std::size_t>(i * (n_ + 1) + j)]; }
    const Rat& at(int i, int j) const { return c_[static_cast<std::size_t>(i * (n_ + 1) + j)]; }

    static Series2 u(int maxdeg) {
        Series2 s(maxdeg);
        if (maxdeg >= 1) s.at(1, 0) = 1;
        return s;
    }
    static Series2 v(int maxdeg) {
        Series2 s(maxdeg);
        if (maxdeg >= 1) s.at(0, 1) = 1;
        return s;
    }
    static Series2 constant(int maxdeg, const Rat& x) {
        Series2 s(maxdeg);
        s.at(0, 0) = x;
        return s;
    }

    friend Series2 operator+(Series2 a, const Series2& b) {
        for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
        return a;
    }
    friend Series2 operator-(Series2 a, const Series2& b) {
        for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] -= b.c_[k];
        return a;
    }
    friend Series2 operator*(const Series2& a, const Series2& b) {
        Series2 out(a.n_);
        for (int i1 = 0; i1 <= a.n_; ++i1)
            for (int j1 = 0; i1 + j1 <= a.n_; ++j1) {
                if (a.at(i1, j1) == 0) continue;
                for (int i2 = 0; i1 + i2 <= a.n_; ++i2)
                    for (int j2 = 0; i1 + j1 + i2 + j2 <= a.n_; ++j2)
                        if (b.at(i2, j2) != 0) out.at(i1 + i2, j1 + j2) += a.at(i1, j1) * b.at(i2, j2);
            }
        return out;
    }

    /// Multiplicative inverse; the constant term must be non-zero.
    Series2 inverse() const {
        if (at(0, 0) == 0) throw std::domain_error("Series2: constant term is zero");
        Series2 out(n_);
        Rat inv0 = 1 / at(0, 0);
        for (int d = 0; d <= n_; ++d)
            for (int i = 0; i <= d; ++i) {
                int j = d - i;
                Rat acc = (d == 0) ? Rat(1) : Rat(0);
                for (int i2 = 0; i2 <= i; ++i2)
                    for (int j2 = 0; j2 <= j; ++j2) {
                        if (i2 == i && j2 == j) continue;
                        acc -= at(i - i2, j - j2) * out.at(i2, j2);
                    }
                out.at(i, j) = acc * inv0;
            }
        return out;
    }

private:
    int n_;
    std::vector<Rat> c_;
};

namespace detail {

inline Series2 a_generating_function(int maxdeg) {
    auto u = Series2::u(maxdeg), v = Series2::v(maxdeg), one = Series2::constant(maxdeg, 1),
         three = Series2::constant(maxdeg, 3);
    auto num = u * (one - u) * (one - three * u).inverse() + v * (one - v) * (one - three * v).inverse();
    return num * (one - u - v).inverse();
}

}  // namespace detail

/// Coefficient of u^i v^j in (u(1-u)/(1-3u) + v(1-v)/(1-3v)) / (1-u-v).
inline Rat a_coeff(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("a_coeff: negative index");
    static std::mutex mu;
    static std::shared_ptr<const Series2> cache;
    std::lock_guard lock(mu);
    if (!cache || cache->maxdeg() < i + j) {
        int n = std::max(i + j, cache ? 2 * cache->maxdeg() : 16);
        cache = std::make_shared<const Series2>(detail::a_generating_function(n));
    }
    return cache->at(i, j);
}

// ---------------------------------------------------------------------------
// Thom series.

struct SeriesTerm {
    Rat coeff;
    std::vector<int> d;  // d-indices, one per factor
};

struct DegreeBoundExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A Thom series in the d-variables. Built-in families A0..A3 generate their
/// terms on demand; plug-in series are a finite term list that is trusted up
/// to a stated degree.
class ThomSeries {
public:
    enum class Source { builtin, plugin };

    static ThomSeries builtin_A(int k) {
        if (k < 0 || k > 3) throw std::invalid_argument("built-in Thom series exist for A0..A3 only");
        ThomSeries ts;
        ts.name_ = "A" + std::to_string(k);
        ts.delta_ = k + 1;
        ts.builtin_k_ = k;
        ts.source_ = Source::builtin;
        return ts;
    }

    static ThomSeries plugin(std::string name, int delta, std::vector<SeriesTerm> terms, int valid_up_to) {
        ThomSeries ts;
        ts.name_ = std::move(name);
        ts.delta_ = delta;
        ts.source_ = Source::plugin;
        ts.valid_up_to_ = valid_up_to;
        for (const auto& t : terms)
            if (static_cast<int>(t.d.size()) != delta - 1)
                throw std::invalid_argument("series term has " + std::to_string(t.d.size()) +
                                            " factors, expected " + std::to_string(delta - 1));
        ts.terms_ = std::move(terms);
        return ts;
    }

    /// {"name": "A4", "delta": 5, "validUpToDegree": D,
    ///  "terms": [{"coeff": "p/q", "dIndices": [..]}, ...]}
    static ThomSeries from_json(const nlohmann::json& j) {
        if (!j.is_object() || !j.contains("terms") || !j.contains("validUpToDegree"))
            throw std::invalid_argument("series file needs 'terms' and 'validUpToDegree'");
        std::vector<SeriesTerm> terms;
        for (const auto& t : j.at("terms")) {
            SeriesTerm st;
            st.coeff = parse_rat(t.at("coeff").get<std::string>());
            st.d = t.at("dIndices").get<std::vector<int>>();
            terms.push_back(std::move(st));
        }
        int delta = j.contains("delta") ? j.at("delta").get<int>()
                                        : (terms.empty() ? 1 : static_cast<int>(terms.front().d.size()) + 1);
        return plugin(j.value("name", std::string("plugin")), delta, std::move(terms),
                      j.at("validUpToDegree").get<int>());
    }

    static ThomSeries from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open series file " + path);
        return from_json(nlohmann::json::parse(in));
    }

    const std::string& name() const { return name_; }
    int delta() const { return delta_; }
    Source source() const { return source_; }
    std::optional<int> valid_up_to() const { return valid_up_to_; }

    /// The terms that survive d_j -> c_{j+shift} with c_{<0} = 0.
    std::vector<SeriesTerm> terms_for_shift(int shift) const {
        if (source_ == Source::plugin) {
            std::vector<SeriesTerm> out;
            for (const auto& t : terms_) {
                bool alive = true;
                for (int j : t.d) alive = alive && j + shift >= 0;
                if (alive) out.push_back(t);
            }
            return out;
        }
        return builtin_terms(builtin_k_, shift);
    }

    /// Weighted degree after substituting d_j -> c_{j+shift}.
    int instantiated_degree(int shift) const { return (delta_ - 1) * shift; }

    /// sum coeff * prod c_{j+shift}, with c_0 = 1 and c_{<0} = 0.
    GradedPoly instantiate(int shift) const {
        if (source_ == Source::plugin) {
            int deg = instantiated_degree(shift);
            if (deg > *valid_up_to_)
                throw DegreeBoundExceeded("series " + name_ + " is valid up to degree " +
                                          std::to_string(*valid_up_to_) + ", requested " +
                                          std::to_string(deg));
        }
        GradedPoly out;
        for (const auto& t : terms_for_shift(shift)) {
            GradedPoly term(t.coeff);
            for (int j : t.d) term = term * cvar(j + shift);
            out += term;
        }
        return out;
    }

private:
    static std::vector<SeriesTerm> builtin_terms(int k, int s) {
        std::vector<SeriesTerm> out;
        switch (k) {
            case 0:
                out.push_back({Rat(1), {}});
                break;
            case 1:
                out.push_back({Rat(1), {0}});
                break;
            case 2:
                out.push_back({Rat(1), {0, 0}});
                for (int i = 1; i <= s; ++i) out.push_back({Rat(mpz_class(1) << (i - 1)), {-i, i}});
                break;
            case 3: {
                for (int i = 0; i <= s; ++i) out.push_back({Rat(mpz_class(1) << i), {-i, 0, i}});
                for (int i = 1; i <= s; ++i)
                    for (int j = 1; j <= s; ++j) {
                        mpz_class p3;
                        mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(j));
                        out.push_back({Rat(mpz_class((mpz_class(1) << i) * p3), 3), {-i, -j, i + j}});
                    }
                for (int i = 0; i <= s; ++i)
                    for (int j = 0; i + j <= s; ++j) {
                        Rat a = a_coeff(i, j);
                        if (a != 0) out.push_back({a / 2, {-i - j, i, j}});
                    }
                break;
            }
            default:
                break;
        }
        for (auto& t : out) t.coeff.canonicalize();
        return out;
    }

    std::string name_;
    int delta_ = 1;
    int builtin_k_ = -1;
    Source source_ = Source::builtin;
    std::optional<int> valid_up_to_;
    std::vector<SeriesTerm> terms_;
};

/// Thom polynomial at relative dimension l: d_j -> c_{j+l+1}.
inline GradedPoly thom_polynomial(const ThomSeries& ts, int ell) {
    if (ell < 0) throw std::invalid_argument("relative dimension must be >= 0");
    return ts.instantiate(ell + 1);
}

// ---------------------------------------------------------------------------
// Residue polynomials.

struct MissingSeries : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// R_{A0^r}(l) = (-1)^{r-1} (r-1)! ts(A_{r-1}) under d_j -> c_{j+l}. For r >= 5
/// the Thom series of A_{r-1} must be supplied; such results are conditional
/// on that series.
inline GradedPoly residue_A0r(int r, int ell, const ThomSeries* plugin = nullptr) {
    if (r < 1 || r > 7) throw std::invalid_argument("residue_A0r: r must be in 1..7");
    if (r == 1) return GradedPoly(1);
    if (ell < 1) throw std::invalid_argument("residue_A0r: l must be >= 1");
    ThomSeries ts;
    if (r <= 4) {
        ts = ThomSeries::builtin_A(r - 1);
    } else {
        if (!plugin) throw MissingSeries("R_{A0^" + std::to_string(r) + "} needs the Thom series of A" +
                                         std::to_string(r - 1) + " (--series-file)");
        if (plugin->delta() != r)
            throw std::invalid_argument("plug-in series has delta " + std::to_string(plugin->delta()) +
                                        ", expected " + std::to_string(r));
        ts = *plugin;
    }
    Rat sign = (r % 2 == 0) ? Rat(-1) : Rat(1);
    return (sign * Rat(factorial(r - 1))) * ts.instantiate(ell);
}

/// Closed forms for r = 2, 3 stated independently of the Thom series route:
/// -c_l and 2(c_l^2 + sum_{i>=0} 2^i c_{l-1-i} c_{l+1+i}).
inline GradedPoly residue_A0r_closed(int r, int ell) {
    if (r == 2) return -cvar(ell);
    if (r == 3) {
        GradedPoly s = cvar(ell) * cvar(ell);
        for (int i = 0; i <= ell - 1; ++i) s += Rat(mpz_class(1) << i) * cvar(ell - 1 - i) * cvar(ell + 1 + i);
        return Rat(2) * s;
    }
    throw std::invalid_argument("closed form available for r = 2, 3 only");
}

/// -2(c_l c_{l+1} + sum_{i=0}^{l-1} 2^i c_{l-1-i} c_{l+2+i})
inline GradedPoly residue_A0A1(int ell) {
    if (ell < 1) throw std::invalid_argument("residue_A0A1: l must be >= 1");
    GradedPoly s = cvar(ell) * cvar(ell + 1);
    for (int i = 0; i <= ell - 1; ++i) s += Rat(mpz_class(1) << i) * cvar(ell - 1 - i) * cvar(ell + 2 + i);
    return Rat(-2) * s;
}

/// Giambelli-Thom-Porteous: s(l+2, l+2).
inline GradedPoly residue_III22(int ell) {
    if (ell < 0) throw std::invalid_argument("residue_III22: l must be >= 0");
    return schur2(ell + 2, ell + 2);
}

/// -sum_{i>=1} 2^{i+1} s(l+1+i, l+2, l+1-i). Terms with i > l+1 have an
/// identically zero third row; the loop runs until that happens.
inline GradedPoly residue_III22A0(int ell) {
    if (ell < 1) throw std::invalid_argument("residue_III22A0: l must be >= 1");
    GradedPoly out;
    for (int i = 1;; ++i) {
        GradedPoly term = schur3(ell + 1 + i, ell + 2, ell + 1 - i);
        if (ell + 1 - i < 0) {
            if (!term.is_zero()) throw std::logic_error("residue_III22A0: sum did not terminate");
            break;
        }
        out -= Rat(mpz_class(1) << (i + 1)) * term;
    }
    return out;
}

/// Residue polynomials keyed by multisingularity, generated for any l.
class ResidueTable {
public:
    using Generator = std::function<GradedPoly(int)>;

    /// A0^1..A0^4, A0A1, III22, III22A0 and the monosingularities A1..A3
    /// (whose residue is the Thom polynomial). A plug-in series for A_k adds
    /// A0^{k+1} and A_k.
    explicit ResidueTable(std::vector<ThomSeries> plugins = {}) : plugins_(std::move(plugins)) {
        for (int r = 1; r <= 4; ++r)
            add(MultiSingularity::A0_power(r), [r](int ell) { return residue_A0r(r, ell); });
        for (int k = 1; k <= 3; ++k)
            add(MultiSingularity({A(k)}), [k](int ell) { return thom_polynomial(ThomSeries::builtin_A(k), ell); });
        add(MultiSingularity::parse("A0A1"), residue_A0A1);
        add(MultiSingularity::parse("III22"), residue_III22);
        add(MultiSingularity::parse("III22A0"), residue_III22A0);
        for (std::size_t p = 0; p < plugins_.size(); ++p) {
            int delta = plugins_[p].delta();
            const ThomSeries* ts = &plugins_[p];
            if (delta >= 5 && delta <= 7) {
                add(MultiSingularity::A0_power(delta), [delta, ts](int ell) { return residue_A0r(delta, ell, ts); });
                add(MultiSingularity({A(delta - 1)}), [ts](int ell) { return thom_polynomial(*ts, ell); });
            }
        }
    }

    ResidueTable(const ResidueTable&) = delete;
    ResidueTable& operator=(const ResidueTable&) = delete;

    void add(const MultiSingularity& m, Generator g) { gens_[m.multiset()] = std::move(g); }

    bool contains(const MultiSingularity& m) const { return gens_.count(m.multiset()) > 0; }

    /// Residues for r >= 5 depend on a supplied series.
    static bool is_conditional(const MultiSingularity& m) { return m.a0_power() >= 5; }

    GradedPoly operator()(const MultiSingularity& m, int ell) const {
        auto it = gens_.find(m.multiset());
        if (it == gens_.end()) {
            int r = m.a0_power();
            if (r >= 5 && r <= 7)
                throw MissingSeries("R_{" + m.label() + "} needs the Thom series of A" + std::to_string(r - 1) +
                                    " (--series-file)");
            throw std::invalid_argument("no residue polynomial known for " + m.label());
        }
        return it->second(ell);
    }

private:
    std::vector<ThomSeries> plugins_;
    std::map<std::vector<Singularity>, Generator> gens_;
};

}  // namespace quadpt
