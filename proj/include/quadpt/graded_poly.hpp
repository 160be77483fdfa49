#pragma once

// Sparse multivariate polynomials over Q with weighted grading.
//
// A GradedPoly owns a shared, immutable VarTable and a map from dense
// exponent vectors (one slot per table entry) to non-zero rationals.
// Arithmetic between polynomials over different tables merges the tables, so
// c_1 + alpha "just works"; a symbol appearing with two different weights is
// rejected with IncompatibleTables.

#include "quadpt/rational.hpp"
#include "quadpt/var_table.hpp"

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace quadpt {

struct MissingAssignment : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class GradedPoly {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, Rat>;

    GradedPoly() : vars_(empty_table()) {}
    explicit GradedPoly(VarTablePtr vars, std::optional<int> trunc = std::nullopt)
        : vars_(std::move(vars)), trunc_(trunc) {}
    GradedPoly(const Rat& c) : vars_(empty_table()) {  // NOLINT: implicit scalar lift
        if (c != 0) terms_.emplace(Exponents{}, c);
    }
    GradedPoly(long c) : GradedPoly(Rat(c)) {}  // NOLINT
    GradedPoly(int c) : GradedPoly(Rat(c)) {}   // NOLINT

    static GradedPoly variable(const Variable& v) {
        GradedPoly p(make_table({v}));
        p.terms_.emplace(Exponents{1}, Rat(1));
        return p;
    }
    static GradedPoly variable(const std::string& family, int index = 0) {
        return variable(Variable{family, index, default_weight(family, index)});
    }
    /// c_i with the conventions c_0 = 1 and c_{<0} = 0.
    static GradedPoly chern(int i, const std::string& family = "c") {
        if (i < 0) return {};
        if (i == 0) return GradedPoly(1);
        return variable(Variable{family, i, i});
    }

    const VarTablePtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::optional<int> trunc() const { return trunc_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    int weighted_degree(const Exponents& e) const {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<int>(e[i]) * (*vars_)[i].weight;
        return d;
    }

    /// Largest weighted degree of a term; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, weighted_degree(e));
        return d;
    }

    /// Zero counts as homogeneous.
    bool is_homogeneous() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int w = weighted_degree(e);
            if (d >= 0 && w != d) return false;
            d = w;
        }
        return true;
    }

    bool is_homogeneous_of_degree(int d) const {
        for (const auto& [e, c] : terms_)
            if (weighted_degree(e) != d) return false;
        return true;
    }

    GradedPoly homogeneous_part(int d) const {
        GradedPoly out(vars_);
        for (const auto& [e, c] : terms_)
            if (weighted_degree(e) == d) out.terms_.emplace(e, c);
        return out;
    }

    GradedPoly truncated(int maxdeg) const {
        GradedPoly out(vars_, maxdeg);
        if (trunc_ && *trunc_ < maxdeg) out.trunc_ = trunc_;
        for (const auto& [e, c] : terms_)
            if (weighted_degree(e) <= *out.trunc_) out.terms_.emplace(e, c);
        return out;
    }

    GradedPoly without_truncation() const {
        GradedPoly out = *this;
        out.trunc_.reset();
        return out;
    }

    Rat constant_term() const {
        for (const auto& [e, c] : terms_) {
            bool all_zero = true;
            for (auto x : e) all_zero = all_zero && x == 0;
            if (all_zero) return c;
        }
        return 0;
    }

    /// Coefficient of the monomial given as (symbol, exponent) pairs.
    Rat coefficient(const std::vector<std::pair<VarKey, unsigned>>& monomial) const {
        Exponents e(vars_->size(), 0);
        for (const auto& [k, x] : monomial) {
            auto i = vars_->find(k);
            if (!i) return x == 0 ? coefficient({}) : Rat(0);
            e[*i] += x;
        }
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// Variables with a non-zero exponent in at least one term.
    std::vector<VarKey> occurring() const {
        std::vector<bool> seen(vars_->size(), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i) seen[i] = seen[i] || e[i] != 0;
        std::vector<VarKey> out;
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (seen[i]) out.push_back((*vars_)[i].key());
        return out;
    }

    /// Same polynomial over a superset table.
    GradedPoly rebased(const VarTablePtr& table) const {
        if (table == vars_) return *this;
        std::vector<std::size_t> slot(vars_->size());
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            auto j = table->find((*vars_)[i].key());
            if (!j) throw IncompatibleTables("target table lacks " + var_name((*vars_)[i].key()));
            if ((*table)[*j].weight != (*vars_)[i].weight)
                throw IncompatibleTables("weight mismatch for " + var_name((*vars_)[i].key()));
            slot[i] = *j;
        }
        GradedPoly out(table, trunc_);
        for (const auto& [e, c] : terms_) {
            Exponents f(table->size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) f[slot[i]] = e[i];
            out.terms_.emplace(std::move(f), c);
        }
        return out;
    }

    /// Terms in canonical order: descending weighted degree, then descending
    /// lexicographic on exponents in (family, index) order.
    std::vector<std::pair<Exponents, Rat>> canonical_terms() const {
        std::vector<std::pair<Exponents, Rat>> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end(), [this](const auto& x, const auto& y) {
            int dx = weighted_degree(x.first), dy = weighted_degree(y.first);
            if (dx != dy) return dx > dy;
            return x.first > y.first;
        });
        return out;
    }

    /// Adds c * x^e; drops the term if it exceeds the truncation degree.
    void add_term(const Exponents& e, const Rat& c) {
        if (c == 0) return;
        if (trunc_ && weighted_degree(e) > *trunc_) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GradedPoly& operator+=(const GradedPoly& q) { return *this = *this + q; }
    GradedPoly& operator-=(const GradedPoly& q) { return *this = *this - q; }
    GradedPoly& operator*=(const GradedPoly& q) { return *this = *this * q; }

    GradedPoly& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    GradedPoly operator-() const {
        GradedPoly out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    friend GradedPoly operator+(const GradedPoly& p, const GradedPoly& q) {
        auto [a, b] = aligned(p, q);
        a.trunc_ = min_trunc(p.trunc_, q.trunc_);
        if (a.trunc_) a = a.truncated(*a.trunc_);
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }

    friend GradedPoly operator-(const GradedPoly& p, const GradedPoly& q) { return p + (-q); }

    friend GradedPoly operator*(const GradedPoly& p, const GradedPoly& q) {
        auto [a, b] = aligned(p, q);
        GradedPoly out(a.vars_, min_trunc(p.trunc_, q.trunc_));
        const std::size_t n = out.vars_->size();
        std::vector<int> wa, wb;
        if (out.trunc_) {
            for (const auto& [e, c] : a.terms_) wa.push_back(out.weighted_degree(e));
            for (const auto& [e, c] : b.terms_) wb.push_back(out.weighted_degree(e));
        }
        Exponents prod(n);
        std::size_t ia = 0;
        for (const auto& [ea, ca] : a.terms_) {
            std::size_t ib = 0;
            for (const auto& [eb, cb] : b.terms_) {
                if (out.trunc_ && wa[ia] + wb[ib] > *out.trunc_) {
                    ++ib;
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) prod[i] = ea[i] + eb[i];
                Rat c = ca * cb;
                auto [it, inserted] = out.terms_.try_emplace(prod, c);
                if (!inserted) {
                    it->second += c;
                    if (it->second == 0) out.terms_.erase(it);
                }
                ++ib;
            }
            ++ia;
        }
        return out;
    }

    friend GradedPoly operator*(const Rat& s, const GradedPoly& p) {
        GradedPoly out = p;
        out *= s;
        return out;
    }
    friend GradedPoly operator*(const GradedPoly& p, const Rat& s) { return s * p; }

    GradedPoly pow(unsigned k) const {
        GradedPoly out = GradedPoly(1).truncated_like(*this);
        GradedPoly base = *this;
        while (k) {
            if (k & 1U) out = out * base;
            k >>= 1U;
            if (k) base = base * base;
        }
        return out;
    }

    /// Equality of the polynomials as functions of their symbols; the
    /// truncation bound is not compared.
    friend bool operator==(const GradedPoly& p, const GradedPoly& q) {
        if (p.vars_ == q.vars_) return p.terms_ == q.terms_;
        if (p.terms_.size() != q.terms_.size()) return false;
        auto [a, b] = aligned(p, q);
        return a.terms_ == b.terms_;
    }

    /// Plain text, canonical order: "c1^3 + 3*c1*c2 + 2*c3".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : canonical_terms()) {
            Rat mag = abs(c);
            bool unit_monomial = true;
            for (auto x : e) unit_monomial = unit_monomial && x == 0;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            bool need_star = false;
            if (mag != 1 || unit_monomial) {
                os << to_short_string(mag);
                need_star = true;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (need_star) os << "*";
                os << var_name((*vars_)[i].key());
                if (e[i] > 1) os << "^" << e[i];
                need_star = true;
            }
        }
        return os.str();
    }

private:
    GradedPoly truncated_like(const GradedPoly& other) const {
        GradedPoly out = *this;
        out.trunc_ = other.trunc_;
        return out;
    }

    static std::optional<int> min_trunc(std::optional<int> a, std::optional<int> b) {
        if (a && b) return std::min(*a, *b);
        return a ? a : b;
    }

    static std::pair<GradedPoly, GradedPoly> aligned(const GradedPoly& p, const GradedPoly& q) {
        if (p.vars_ == q.vars_) return {p, q};
        auto t = merge_tables(p.vars_, q.vars_);
        return {p.rebased(t), q.rebased(t)};
    }

    VarTablePtr vars_;
    TermMap terms_;
    std::optional<int> trunc_;
};

inline GradedPoly var(const std::string& family, int index = 0) {
    return GradedPoly::variable(family, index);
}

/// c_i with c_0 = 1, c_{<0} = 0.
inline GradedPoly cvar(int i) { return GradedPoly::chern(i); }

// ---------------------------------------------------------------------------
// Evaluation in an arbitrary commutative ring.

/// Evaluates p with every variable replaced by image(variable). The Ring needs
/// +, * and multiplication by Rat. Powers are cached per variable.
template <class Ring, class ImageFn>
Ring evaluate(const GradedPoly& p, ImageFn&& image, const Ring& one) {
    const auto& table = *p.vars();
    std::vector<std::vector<Ring>> powers(table.size());
    std::vector<bool> loaded(table.size(), false);
    auto power = [&](std::size_t i, std::uint32_t k) -> const Ring& {
        if (!loaded[i]) {
            powers[i].push_back(one);
            powers[i].push_back(image(table[i]));
            loaded[i] = true;
        }
        while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * powers[i][1]);
        return powers[i][k];
    };
    Ring total = one * Rat(0);
    for (const auto& [e, c] : p.terms()) {
        Ring term = one;
        bool first = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (first) {
                term = power(i, e[i]);
                first = false;
            } else {
                term = term * power(i, e[i]);
            }
        }
        total = total + term * c;
    }
    return total;
}

using Assignment = std::map<VarKey, GradedPoly>;

enum class Unassigned { error, keep };

/// Composes p with the assignment. By default every occurring variable must be
/// assigned; with Unassigned::keep missing variables map to themselves.
inline GradedPoly substitute(const GradedPoly& p, const Assignment& assignment,
                             Unassigned policy = Unassigned::error) {
    return evaluate<GradedPoly>(
        p,
        [&](const Variable& v) -> GradedPoly {
            auto it = assignment.find(v.key());
            if (it != assignment.end()) return it->second;
            if (policy == Unassigned::keep) return GradedPoly::variable(v);
            throw MissingAssignment("no assignment for " + var_name(v.key()));
        },
        GradedPoly(1));
}

/// p(1 + x_1 + x_2 + ...): substitutes c_i by the degree-i part of a total
/// class. A truncated total class must be known up to every occurring index.
inline GradedPoly plug_total_class(const GradedPoly& p, const GradedPoly& total,
                                   const std::string& family = "c") {
    Assignment assignment;
    for (const auto& k : p.occurring()) {
        if (k.family != family) continue;
        if (total.trunc() && *total.trunc() < k.index)
            throw std::invalid_argument("total class known only up to degree " +
                                        std::to_string(*total.trunc()) + ", need " +
                                        var_name(k));
        assignment[k] = total.homogeneous_part(k.index).without_truncation();
    }
    return substitute(p, assignment, Unassigned::keep);
}

// ---------------------------------------------------------------------------
// Series of products of linear factors.

/// True when p is a non-zero homogeneous form of weighted degree 1.
inline bool is_linear_form(const GradedPoly& p) {
    return !p.is_zero() && p.is_homogeneous_of_degree(1);
}

/// prod(1 + w_t) / prod(1 + v_s), expanded up to weighted degree maxdeg.
/// Factors shared by numerator and denominator cancel before expansion.
inline GradedPoly series_quotient(std::vector<GradedPoly> numerator,
                                  std::vector<GradedPoly> denominator, int maxdeg) {
    if (maxdeg < 0) throw std::invalid_argument("series_quotient: negative degree");
    for (const auto& f : numerator)
        if (!f.is_zero() && !is_linear_form(f))
            throw std::invalid_argument("series_quotient: factor is not a linear form");
    for (const auto& f : denominator)
        if (!f.is_zero() && !is_linear_form(f))
            throw std::invalid_argument("series_quotient: factor is not a linear form");
    for (auto it = denominator.begin(); it != denominator.end();) {
        auto match = std::find(numerator.begin(), numerator.end(), *it);
        if (match != numerator.end()) {
            numerator.erase(match);
            it = denominator.erase(it);
        } else {
            ++it;
        }
    }
    GradedPoly out = GradedPoly(1).truncated(maxdeg);
    for (const auto& w : numerator) out = out * (GradedPoly(1) + w).truncated(maxdeg);
    for (const auto& v : denominator) {
        // 1/(1+v) = sum (-v)^k
        GradedPoly inv = GradedPoly(1).truncated(maxdeg);
        GradedPoly pw = GradedPoly(1).truncated(maxdeg);
        for (int k = 1; k <= maxdeg; ++k) {
            pw = pw * (-v);
            inv += pw;
        }
        out = out * inv;
    }
    return out;
}

/// Product of the given forms (an equivariant Euler class).
inline GradedPoly product(const std::vector<GradedPoly>& factors) {
    GradedPoly out(1);
    for (const auto& f : factors) out = out * f;
    return out;
}

/// If q = lambda * p for a rational lambda, returns lambda.
inline std::optional<Rat> proportionality(const GradedPoly& p, const GradedPoly& q) {
    if (p.is_zero() || q.is_zero() || p.size() != q.size()) return std::nullopt;
    auto t = merge_tables(p.vars(), q.vars());
    auto a = p.rebased(t), b = q.rebased(t);
    std::optional<Rat> lambda;
    for (const auto& [e, c] : a.terms()) {
        auto it = b.terms().find(e);
        if (it == b.terms().end()) return std::nullopt;
        Rat r = it->second / c;
        if (lambda && *lambda != r) return std::nullopt;
        lambda = r;
    }
    return lambda;
}

/// The substitution that makes a linear form vanish: its last variable (in
/// table order) is solved for.
inline Assignment zero_locus(const GradedPoly& form) {
    if (!is_linear_form(form)) throw std::invalid_argument("zero_locus: not a linear form");
    const auto& table = *form.vars();
    std::size_t pivot = 0;
    Rat pivot_coeff;
    for (const auto& [e, c] : form.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] == 1 && i >= pivot) {
                pivot = i;
                pivot_coeff = c;
            }
    GradedPoly rest = form - pivot_coeff * GradedPoly::variable(table[pivot]);
    return {{table[pivot].key(), (Rat(-1) / pivot_coeff) * rest}};
}

/// True iff p becomes identically zero under each of the substitutions.
inline bool vanishes_under(const GradedPoly& p, const std::vector<Assignment>& specializations) {
    for (const auto& s : specializations)
        if (!substitute(p, s, Unassigned::keep).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Determinantal Schur polynomials in c-variables.

/// det [[c_i, c_{i+1}], [c_{j-1}, c_j]]
inline GradedPoly schur2(int i, int j) {
    return cvar(i) * cvar(j) - cvar(i + 1) * cvar(j - 1);
}

/// det [[c_i, c_{i+1}, c_{i+2}], [c_{j-1}, c_j, c_{j+1}], [c_{k-2}, c_{k-1}, c_k]]
inline GradedPoly schur3(int i, int j, int k) {
    // Rows whose entries all have negative index vanish identically.
    if (k < 0 || j + 1 < 0 || i + 2 < 0) return {};
    const GradedPoly m[3][3] = {{cvar(i), cvar(i + 1), cvar(i + 2)},
                                {cvar(j - 1), cvar(j), cvar(j + 1)},
                                {cvar(k - 2), cvar(k - 1), cvar(k)}};
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// ---------------------------------------------------------------------------
// Parsing of plain-text expressions ("-6*(c1^3 + 3*c1*c2 + 2*c3)").

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    GradedPoly parse() {
        GradedPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + what +
                                    " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    GradedPoly expr() {
        GradedPoly out;
        bool negate = false;
        if (eat('-')) negate = true;
        else eat('+');
        out = negate ? -term() : term();
        for (;;) {
            if (eat('+')) out += term();
            else if (eat('-')) out -= term();
            else break;
        }
        return out;
    }
    GradedPoly term() {
        GradedPoly out = factor();
        while (eat('*')) out = out * factor();
        return out;
    }
    unsigned integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    }
    GradedPoly factor() {
        GradedPoly base = primary();
        if (eat('^')) base = base.pow(integer());
        return base;
    }
    GradedPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            GradedPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            return GradedPoly(parse_rat(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string family(s_.substr(start, pos_ - start));
            std::size_t istart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            int index = istart == pos_ ? 0 : std::stoi(std::string(s_.substr(istart, pos_ - istart)));
            if (is_indexed_family(family) && index == 0) return GradedPoly(1);
            return GradedPoly::variable(family, index);
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses sums of products of rationals and symbols. Symbols are a family name
/// followed by an optional index: c12, d3, alpha, beta2. Indexed families
/// (c, d, e, h, k, n) get weight = index, everything else weight 1.
inline GradedPoly parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace quadpt
