#pragma once

// Formal expansion of multisingularity classes into residue and
// image-class symbols.

#include "quadpt/render.hpp"
#include "quadpt/thom.hpp"

#include <map>
#include <sstream>

namespace quadpt {

/// A formal factor: S_b (target class pushed forward from a residue), n_b
/// (target multisingularity class), f^*(n_b) and R_b. Barred variants carry
/// the 1/#Aut normalization.
struct Symbol {
    enum class Kind { R, S, n, fstar_n };
    Kind kind;
    MultiSingularity multi;
    bool barred = false;

    auto operator<=>(const Symbol&) const = default;
    bool operator==(const Symbol&) const = default;

    std::string text() const { return render(false); }
    std::string latex() const { return render(true); }

private:
    std::string render(bool tex) const {
        int k = multi.a0_power();
        std::string sub = k > 0 ? std::to_string(k) : (tex ? multi.latex() : multi.label());
        auto wrap = [&](const std::string& s) { return (tex && s.size() > 1) ? "{" + s + "}" : s; };
        std::string bar = barred ? (tex ? "\\bar " : "~") : "";
        switch (kind) {
            case Kind::S:
                return (k > 0 ? std::string("s") : std::string("S")) + "_" + wrap(sub);
            case Kind::n:
                return bar + "n_" + wrap(sub);
            case Kind::fstar_n:
                return tex ? "f^*(" + bar + "n_" + wrap(sub) + ")" : "f*(" + bar + "n_" + sub + ")";
            case Kind::R:
                return "R_" + wrap(tex ? multi.latex() : multi.label());
        }
        return {};
    }
};

/// Linear combination of products of formal symbols; a product is a sorted
/// list of symbols (so commuting factors collect).
class FormalExpansion {
public:
    using Product = std::vector<Symbol>;

    void add(Product p, const Rat& c) {
        std::sort(p.begin(), p.end());
        auto [it, inserted] = terms_.try_emplace(std::move(p), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<Product, Rat>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of the product given as a multiset of symbols.
    Rat coefficient(Product p) const {
        std::sort(p.begin(), p.end());
        auto it = terms_.find(p);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    friend FormalExpansion operator*(const FormalExpansion& a, const FormalExpansion& b) {
        FormalExpansion out;
        for (const auto& [pa, ca] : a.terms_)
            for (const auto& [pb, cb] : b.terms_) {
                Product p = pa;
                p.insert(p.end(), pb.begin(), pb.end());
                out.add(std::move(p), ca * cb);
            }
        return out;
    }
    FormalExpansion& operator+=(const FormalExpansion& b) {
        for (const auto& [p, c] : b.terms_) add(p, c);
        return *this;
    }

    /// Highest total degree first, then by symbol order.
    std::vector<std::pair<Product, Rat>> ordered() const {
        std::vector<std::pair<Product, Rat>> out(terms_.begin(), terms_.end());
        std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
            auto weight = [](const Product& p) {
                int w = 0;
                for (const auto& s : p) w += s.multi.size();
                return w;
            };
            if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
            return weight(x.first) > weight(y.first);
        });
        return out;
    }

    std::string render(bool tex) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, c] : ordered()) {
            Rat mag = abs(c);
            if (first) os << (c < 0 ? "-" : "");
            else os << (c < 0 ? " - " : " + ");
            first = false;
            if (mag != 1) {
                if (tex && mag.get_den() != 1)
                    os << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
                else
                    os << to_short_string(mag) << (tex ? "" : "*");
            }
            for (std::size_t i = 0; i < p.size();) {
                std::size_t j = i;
                while (j < p.size() && p[j] == p[i]) ++j;
                if (i > 0 && !tex) os << "*";
                os << (tex ? p[i].latex() : p[i].text());
                if (j - i > 1) os << (tex ? "^{" : "^") << (j - i) << (tex ? "}" : "");
                i = j;
            }
        }
        return os.str();
    }

private:
    std::map<Product, Rat> terms_;
};

namespace detail {

/// Calls fn(J, Jbar) for every J with 0 in J, J a proper subset of
/// {0..r-1}; positions are listed in increasing order.
template <class Fn>
void for_each_proper_subset_with_first(int r, Fn&& fn) {
    for (unsigned mask = 0; mask < (1U << (r - 1)); ++mask) {
        std::vector<int> J{0}, Jbar;
        for (int i = 1; i < r; ++i) ((mask >> (i - 1)) & 1U ? J : Jbar).push_back(i);
        if (Jbar.empty()) continue;
        fn(J, Jbar);
    }
}

}  // namespace detail

/// n_a = S_a + sum_{0 in J proper} S_{a_J} n_{a_Jbar}, expanded fully into
/// products of S symbols.
inline FormalExpansion expand_n(const MultiSingularity& m) {
    static std::mutex mu;
    static std::map<MultiSingularity, FormalExpansion> memo;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(m); it != memo.end()) return it->second;
    }
    FormalExpansion out;
    out.add({Symbol{Symbol::Kind::S, m}}, 1);
    detail::for_each_proper_subset_with_first(m.size(), [&](const std::vector<int>& J, const std::vector<int>& Jbar) {
        FormalExpansion s;
        s.add({Symbol{Symbol::Kind::S, m.restrict(J)}}, 1);
        out += s * expand_n(m.restrict(Jbar));
    });
    std::lock_guard lock(mu);
    memo.emplace(m, out);
    return out;
}

/// The uncollected m-expansion: one (R_{a_J}, a_Jbar) pair per J containing
/// the distinguished element, J = everything giving (R_a, none).
inline std::vector<std::pair<MultiSingularity, std::optional<MultiSingularity>>> expand_m_raw(
    const MultiSingularity& m) {
    std::vector<std::pair<MultiSingularity, std::optional<MultiSingularity>>> out;
    out.emplace_back(m, std::nullopt);
    detail::for_each_proper_subset_with_first(m.size(), [&](const std::vector<int>& J, const std::vector<int>& Jbar) {
        out.emplace_back(m.restrict(J), m.restrict(Jbar));
    });
    return out;
}

/// m_a = R_a + sum_{0 in J proper} R_{a_J} f^*(n_{a_Jbar}).
/// With barred = true, returns mbar_a = m_a / #Aut(a_2..a_r) written in the
/// barred image classes nbar_b = n_b / #Aut(b).
inline FormalExpansion expand_m(const MultiSingularity& m, bool barred = false) {
    FormalExpansion out;
    Rat scale = 1;
    if (barred) {
        std::vector<Singularity> rest(m.parts().begin() + 1, m.parts().end());
        scale = rest.empty() ? Rat(1) : Rat(1) / Rat(aut_count(MultiSingularity(rest)));
    }
    out.add({Symbol{Symbol::Kind::R, m}}, scale);
    detail::for_each_proper_subset_with_first(m.size(), [&](const std::vector<int>& J, const std::vector<int>& Jbar) {
        auto mj = m.restrict(J), mbar = m.restrict(Jbar);
        Rat c = scale;
        if (barred) c *= Rat(aut_count(mbar));
        out.add({Symbol{Symbol::Kind::R, mj}, Symbol{Symbol::Kind::fstar_n, mbar, barred}}, c);
    });
    // R_{A0} = 1 is the unit; drop it from products.
    FormalExpansion cleaned;
    for (const auto& [p, c] : out.terms()) {
        FormalExpansion::Product q;
        for (const auto& s : p)
            if (!(s.kind == Symbol::Kind::R && s.multi.size() == 1 && s.multi.distinguished() == Singularity::A0))
                q.push_back(s);
        cleaned.add(q, c);
    }
    return cleaned;
}

/// One term of an m-expansion with its residue coefficient resolved.
struct ResolvedTerm {
    GradedPoly coefficient;              // polynomial in c
    std::optional<Symbol> image_class;   // f^*(n_b), absent for the pure residue
};

/// Resolves every R symbol of expand_m through the residue table.
inline std::vector<ResolvedTerm> resolve_m(const MultiSingularity& m, int ell, const ResidueTable& table,
                                          bool barred = false) {
    std::vector<ResolvedTerm> out;
    const FormalExpansion expansion = expand_m(m, barred);
    for (const auto& [p, c] : expansion.terms()) {
        GradedPoly coeff(c);
        std::optional<Symbol> img;
        for (const auto& s : p) {
            if (s.kind == Symbol::Kind::R) coeff = coeff * table(s.multi, ell);
            else img = s;
        }
        out.push_back({coeff, img});
    }
    // f^*(n) with the largest multisingularity first, residue last.
    std::sort(out.begin(), out.end(), [](const ResolvedTerm& x, const ResolvedTerm& y) {
        int wx = x.image_class ? x.image_class->multi.size() : 0;
        int wy = y.image_class ? y.image_class->multi.size() : 0;
        return wx > wy;
    });
    return out;
}

/// The quadruple point formula m_4 = f^*(n_3) + 3R_{A0^2} f^*(n_2) +
/// 3R_{A0^3} f^*(n_1) + R_{A0^4}, in multiplicity (unbarred) form.
inline std::vector<ResolvedTerm> quadruple_formula(int ell, const ResidueTable& table) {
    if (ell < 1) throw std::invalid_argument("quadruple formula needs l >= 1");
    return resolve_m(MultiSingularity::A0_power(4), ell, table, false);
}

inline std::string render_m(const std::vector<ResolvedTerm>& terms, bool tex, const std::string& lhs) {
    std::string out = lhs + " =";
    bool first = true;
    for (const auto& t : terms) {
        std::string coeff = tex ? to_latex(t.coefficient)
                                : (t.image_class ? to_factored_text(t.coefficient) : t.coefficient.to_string());
        std::string img = t.image_class ? (tex ? t.image_class->latex() : t.image_class->text()) : "";
        std::string term;
        if (!t.image_class) {
            term = coeff;
        } else if (t.coefficient == GradedPoly(1)) {
            term = img;
        } else {
            bool wrap = t.coefficient.size() > 1 && coeff.back() != ')';
            if (wrap) coeff = (tex ? "\\left(" : "(") + coeff + (tex ? "\\right)" : ")");
            term = coeff + (tex ? "" : "*") + img;
        }
        if (term.front() == '-') out += (first ? " -" : " - ") + term.substr(1);
        else out += (first ? " " : " + ") + term;
        first = false;
    }
    return out;
}

inline std::string emit_quadruple_formula(int ell, bool tex = true) {
    ResidueTable table;
    return render_m(quadruple_formula(ell, table), tex, "m_4");
}

}  // namespace quadpt
