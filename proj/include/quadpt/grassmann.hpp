#pragma once

// Cohomology of Gr_k(C^n) in the Schur basis, and the projectivization
// P(S) -> Gr_k(C^n) of the tautological subbundle.
//
// Conventions: s_lambda for lambda inside the k x (n-k) box, with the
// integral of the full-box class equal to 1; c_i(Q) = s_(i) and
// c_i(S) = (-1)^i s_(1^i).

#include "quadpt/rational.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadpt {

/// Weakly decreasing parts, padded with zeros to the number of rows k.
using Partition = std::vector<int>;

inline int size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline std::string partition_string(const Partition& p) {
    std::string out = "(";
    bool first = true;
    for (int x : p) {
        if (x == 0) break;
        if (!first) out += ",";
        out += std::to_string(x);
        first = false;
    }
    return out + ")";
}

struct RingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class GrassRing {
public:
    GrassRing(int k, int n) : k_(k), n_(n) {
        if (!(0 < k && k < n)) throw std::invalid_argument("Gr_k(C^n) needs 0 < k < n");
    }
    int k() const { return k_; }
    int n() const { return n_; }
    int cols() const { return n_ - k_; }
    int dim() const { return k_ * (n_ - k_); }

    bool fits(const Partition& p) const {
        if (static_cast<int>(p.size()) != k_) return false;
        for (int i = 0; i < k_; ++i) {
            if (p[i] < 0 || p[i] > cols()) return false;
            if (i > 0 && p[i] > p[i - 1]) return false;
        }
        return true;
    }

    /// Pads a partition to k rows; nullopt if it has too many rows or does
    /// not fit the box.
    std::optional<Partition> normalize(Partition p) const {
        while (!p.empty() && p.back() == 0) p.pop_back();
        if (static_cast<int>(p.size()) > k_) return std::nullopt;
        p.resize(static_cast<std::size_t>(k_), 0);
        if (!fits(p)) return std::nullopt;
        return p;
    }

    Partition box() const { return Partition(static_cast<std::size_t>(k_), cols()); }
    Partition empty_partition() const { return Partition(static_cast<std::size_t>(k_), 0); }

    /// Complement in the box: (n-k-lambda_k, ..., n-k-lambda_1).
    Partition dual(const Partition& p) const {
        Partition out(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) out[static_cast<std::size_t>(i)] = cols() - p[static_cast<std::size_t>(k_ - 1 - i)];
        return out;
    }

    /// All partitions in the box of the given size (all sizes if size < 0).
    std::vector<Partition> basis(int degree = -1) const {
        std::vector<Partition> out;
        Partition cur(static_cast<std::size_t>(k_), 0);
        auto rec = [&](auto&& self, int row, int maxpart, int used) -> void {
            if (row == k_) {
                if (degree < 0 || used == degree) out.push_back(cur);
                return;
            }
            for (int x = maxpart; x >= 0; --x) {
                if (degree >= 0 && used + x > degree) continue;
                cur[static_cast<std::size_t>(row)] = x;
                self(self, row + 1, x, used + x);
            }
            cur[static_cast<std::size_t>(row)] = 0;
        };
        rec(rec, 0, cols(), 0);
        return out;
    }

    bool operator==(const GrassRing&) const = default;

private:
    int k_, n_;
};

// ---------------------------------------------------------------------------
// Littlewood-Richardson coefficients.

namespace detail {

/// c^nu_{lambda,mu} for all nu with at most `rows` rows, counted by
/// LR tableaux: mu_i boxes labelled i are added as horizontal strips, and
/// the reading word (rows top to bottom, right to left) is a lattice word.
inline std::map<Partition, long> lr_expand(const Partition& lambda, const Partition& mu, int rows) {
    std::map<Partition, long> out;
    Partition shape = lambda;
    shape.resize(static_cast<std::size_t>(rows), 0);
    std::vector<int> m;
    for (int x : mu)
        if (x > 0) m.push_back(x);
    if (static_cast<int>(m.size()) > rows) return out;
    const int L = static_cast<int>(m.size());
    // count[i][r] = number of label i+1 in row r
    std::vector<std::vector<int>> count(static_cast<std::size_t>(L), std::vector<int>(static_cast<std::size_t>(rows), 0));

    // Place label `i` row by row; `left` boxes of this label still to place.
    auto place = [&](auto&& self, int i, int r, int left, const Partition& before) -> void {
        if (i == L) {
            ++out[shape];
            return;
        }
        if (r == rows) {
            if (left == 0) {
                const Partition snapshot = shape;  // the strip rule compares with the shape before this label
                self(self, i + 1, 0, i + 1 < L ? m[static_cast<std::size_t>(i + 1)] : 0, snapshot);
            }
            return;
        }
        // Label i+1 can only appear in rows >= i (0-based).
        int cap = (r < i) ? 0 : left;
        // Horizontal strip: row r may grow up to the length row r-1 had
        // before this label was added.
        if (r > 0) cap = std::min(cap, before[static_cast<std::size_t>(r - 1)] - shape[static_cast<std::size_t>(r)]);
        for (int t = cap; t >= 0; --t) {
            if (i > 0 && t > 0) {
                int seen_i = t, seen_prev = 0;
                for (int q = 0; q < r; ++q) seen_i += count[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
                for (int q = 0; q < r; ++q) seen_prev += count[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(q)];
                if (seen_i > seen_prev) continue;
            }
            shape[static_cast<std::size_t>(r)] += t;
            count[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] = t;
            self(self, i, r + 1, left - t, before);
            shape[static_cast<std::size_t>(r)] -= t;
            count[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] = 0;
        }
    };
    if (L == 0) {
        out[shape] = 1;
        return out;
    }
    Partition before = shape;
    place(place, 0, 0, m[0], before);
    return out;
}

}  // namespace detail

/// Cached product of two Schur classes in the ring, truncated to the box.
inline const std::vector<std::pair<Partition, long>>& schur_product(const GrassRing& ring, const Partition& lambda,
                                                                    const Partition& mu) {
    using Key = std::tuple<int, int, Partition, Partition>;
    static std::mutex mu_lock;
    static std::map<Key, std::vector<std::pair<Partition, long>>> cache;
    Key key{ring.k(), ring.n(), lambda, mu};
    std::lock_guard lock(mu_lock);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<Partition, long>> out;
    if (size(lambda) + size(mu) <= ring.dim())
        for (const auto& [nu, c] : detail::lr_expand(lambda, mu, ring.k()))
            if (nu[0] <= ring.cols()) out.emplace_back(nu, c);
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

class GrassClass {
public:
    explicit GrassClass(GrassRing ring) : ring_(ring) {}

    static GrassClass one(const GrassRing& ring) { return schur(ring, ring.empty_partition()); }

    static GrassClass schur(const GrassRing& ring, const Partition& p, const Rat& c = 1) {
        GrassClass out(ring);
        auto q = ring.normalize(p);
        if (!q) throw std::invalid_argument("partition " + partition_string(p) + " is outside the box");
        out.add(*q, c);
        return out;
    }

    const GrassRing& ring() const { return ring_; }
    const std::map<Partition, Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rat coefficient(const Partition& p) const {
        auto q = ring_.normalize(p);
        if (!q) return 0;
        auto it = coeffs_.find(*q);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    /// Adds c * s_p; p must be a box partition already padded to k rows.
    void add(const Partition& p, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    bool is_homogeneous_of_degree(int d) const {
        for (const auto& [p, c] : coeffs_)
            if (size(p) != d) return false;
        return true;
    }

    GrassClass homogeneous_part(int d) const {
        GrassClass out(ring_);
        for (const auto& [p, c] : coeffs_)
            if (size(p) == d) out.coeffs_.emplace(p, c);
        return out;
    }

    GrassClass& operator+=(const GrassClass& o) {
        check(o);
        for (const auto& [p, c] : o.coeffs_) add(p, c);
        return *this;
    }
    GrassClass& operator-=(const GrassClass& o) {
        check(o);
        for (const auto& [p, c] : o.coeffs_) add(p, -c);
        return *this;
    }
    GrassClass& operator*=(const Rat& s) {
        if (s == 0) coeffs_.clear();
        for (auto& [p, c] : coeffs_) c *= s;
        return *this;
    }
    /// this += s * o
    void add_scaled(const GrassClass& o, const Rat& s) {
        check(o);
        if (s == 0) return;
        for (const auto& [p, c] : o.coeffs_) add(p, c * s);
    }

    friend GrassClass operator+(GrassClass a, const GrassClass& b) { return a += b; }
    friend GrassClass operator-(GrassClass a, const GrassClass& b) { return a -= b; }
    friend GrassClass operator*(GrassClass a, const Rat& s) { return a *= s; }
    friend GrassClass operator*(const Rat& s, GrassClass a) { return a *= s; }
    friend GrassClass operator*(const GrassClass& x, const GrassClass& y) { return class_mul(x, y); }

    friend GrassClass class_mul(const GrassClass& x, const GrassClass& y) {
        x.check(y);
        GrassClass out(x.ring_);
        for (const auto& [lp, lc] : x.coeffs_)
            for (const auto& [mp, mc] : y.coeffs_) {
                Rat c = lc * mc;
                for (const auto& [nu, k] : schur_product(x.ring_, lp, mp)) out.add(nu, c * k);
            }
        return out;
    }

    bool operator==(const GrassClass& o) const { return ring_ == o.ring_ && coeffs_ == o.coeffs_; }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const auto& [p, c] = *it;
            if (!first) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            first = false;
            Rat m = abs(c);
            if (m != 1) out += to_short_string(m) + "*";
            out += "s" + partition_string(p);
        }
        return out;
    }

private:
    void check(const GrassClass& o) const {
        if (!(ring_ == o.ring_)) throw RingMismatch("classes live in different Grassmannians");
    }

    GrassRing ring_;
    std::map<Partition, Rat> coeffs_;
};

/// Coefficient of the full-box class.
inline Rat integrate(const GrassClass& x) { return x.coefficient(x.ring().box()); }

/// integral of x*y, by Poincare duality: sum_lambda x_lambda y_{lambda dual}.
inline Rat integrate_product(const GrassClass& x, const GrassClass& y) {
    if (!(x.ring() == y.ring())) throw RingMismatch("classes live in different Grassmannians");
    Rat out = 0;
    for (const auto& [p, c] : x.coeffs()) {
        auto it = y.coeffs().find(x.ring().dual(p));
        if (it != y.coeffs().end()) out += c * it->second;
    }
    return out;
}

inline GrassClass chern_Q(const GrassRing& ring, int i) {
    if (i < 0 || i > ring.n() - ring.k()) throw std::out_of_range("c_i(Q): index out of range");
    GrassClass out(ring);
    out.add(*ring.normalize({i}), 1);
    return out;
}

inline GrassClass chern_S(const GrassRing& ring, int i) {
    if (i < 0 || i > ring.k()) throw std::out_of_range("c_i(S): index out of range");
    GrassClass out(ring);
    if (i > ring.cols()) return out;  // s_(1^i) outside the box
    out.add(*ring.normalize(Partition(static_cast<std::size_t>(i), 1)), (i % 2 == 0) ? Rat(1) : Rat(-1));
    return out;
}

/// c_i(Q) for any i: zero when i < 0 or i exceeds the rank.
inline GrassClass chern_Q_or_zero(const GrassRing& ring, int i) {
    if (i < 0 || i > ring.cols()) return GrassClass(ring);
    return chern_Q(ring, i);
}

// ---------------------------------------------------------------------------
// P(S) over the Grassmannian.

/// Convention for xi = c_1(l) under the pushforward.
///  * dual (calibrated default): the hyperplane class pulls back to H = -xi
///    and pi_!(H^w) = c_{w-k+1}(Q), so pi_!(xi^w) = (-1)^w c_{w-k+1}(Q).
///  * literal: q^*(h) = xi and pi_!(xi^w) = c_{w-k+1}(Q).
/// Only the dual rule is compatible with the relation sum_i c_i(S)(-xi)^{k-i} = 0.
enum class Orientation { dual, literal };

/// Polynomial in xi with GrassClass coefficients, optionally truncated in the
/// xi-degree (terms xi^j, j > max_xi, are dropped).
class FiberClass {
public:
    explicit FiberClass(GrassRing ring, std::optional<int> max_xi = std::nullopt) : ring_(ring), max_xi_(max_xi) {}

    static FiberClass pullback(const GrassClass& g, std::optional<int> max_xi = std::nullopt) {
        FiberClass out(g.ring(), max_xi);
        out.set(0, g);
        return out;
    }
    static FiberClass xi_power(const GrassRing& ring, int w, std::optional<int> max_xi = std::nullopt) {
        FiberClass out(ring, max_xi);
        out.set(w, GrassClass::one(ring));
        return out;
    }

    const GrassRing& ring() const { return ring_; }
    std::optional<int> max_xi() const { return max_xi_; }
    int xi_degree() const { return static_cast<int>(coef_.size()) - 1; }

    const GrassClass& operator[](int j) const {
        static thread_local std::map<std::pair<int, int>, GrassClass> zeros;
        if (j >= 0 && j < static_cast<int>(coef_.size())) return coef_[static_cast<std::size_t>(j)];
        return zeros.try_emplace({ring_.k(), ring_.n()}, ring_).first->second;
    }

    void set(int j, const GrassClass& g) {
        if (max_xi_ && j > *max_xi_) return;
        while (static_cast<int>(coef_.size()) <= j) coef_.emplace_back(ring_);
        coef_[static_cast<std::size_t>(j)] = g;
        trim();
    }
    void add(int j, const GrassClass& g, const Rat& s = 1) {
        if (max_xi_ && j > *max_xi_) return;
        while (static_cast<int>(coef_.size()) <= j) coef_.emplace_back(ring_);
        coef_[static_cast<std::size_t>(j)].add_scaled(g, s);
    }

    FiberClass& operator+=(const FiberClass& o) {
        for (int j = 0; j <= o.xi_degree(); ++j) add(j, o[j]);
        trim();
        return *this;
    }
    void add_scaled(const FiberClass& o, const Rat& s) {
        for (int j = 0; j <= o.xi_degree(); ++j) add(j, o[j], s);
        trim();
    }

    friend FiberClass operator*(const FiberClass& x, const FiberClass& y) {
        std::optional<int> m = x.max_xi_;
        if (y.max_xi_ && (!m || *y.max_xi_ < *m)) m = y.max_xi_;
        FiberClass out(x.ring_, m);
        for (int i = 0; i <= x.xi_degree(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j <= y.xi_degree(); ++j) {
                if (m && i + j > *m) break;
                if (y[j].is_zero()) continue;
                out.add(i + j, class_mul(x[i], y[j]));
            }
        }
        out.trim();
        return out;
    }

    bool operator==(const FiberClass& o) const {
        int d = std::max(xi_degree(), o.xi_degree());
        for (int j = 0; j <= d; ++j)
            if (!((*this)[j] == o[j])) return false;
        return true;
    }

    /// Reduces xi^j for j >= k with sum_i c_i(S) (-xi)^{k-i} = 0, i.e.
    /// xi^k = -sum_{i>=1} (-1)^i c_i(S) xi^{k-i}.
    FiberClass grothendieck_reduced() const {
        const int k = ring_.k();
        std::vector<GrassClass> c = coef_;
        for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) {
            GrassClass top = c[static_cast<std::size_t>(j)];
            if (top.is_zero()) continue;
            c[static_cast<std::size_t>(j)] = GrassClass(ring_);
            for (int i = 1; i <= k; ++i) {
                Rat sign = (i % 2 == 0) ? Rat(-1) : Rat(1);  // -(-1)^i
                c[static_cast<std::size_t>(j - i)].add_scaled(class_mul(top, chern_S(ring_, i)), sign);
            }
        }
        FiberClass out(ring_, max_xi_);
        for (int j = 0; j < static_cast<int>(c.size()); ++j) out.set(j, c[static_cast<std::size_t>(j)]);
        return out;
    }

private:
    void trim() {
        while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
    }

    GrassRing ring_;
    std::optional<int> max_xi_;
    std::vector<GrassClass> coef_;
};

/// pi_!(xi^w) for the chosen orientation.
inline GrassClass pushforward_xi_power(const GrassRing& ring, int w, Orientation o = Orientation::dual) {
    GrassClass out = chern_Q_or_zero(ring, w - ring.k() + 1);
    if (o == Orientation::dual && w % 2 != 0) out *= Rat(-1);
    return out;
}

/// pi_!(x), linear over the GrassClass coefficients.
inline GrassClass pushforward(const FiberClass& x, Orientation o = Orientation::dual) {
    GrassClass out(x.ring());
    for (int j = 0; j <= x.xi_degree(); ++j) {
        if (x[j].is_zero()) continue;
        out += class_mul(x[j], pushforward_xi_power(x.ring(), j, o));
    }
    return out;
}

/// pi_!(H^w x) where H is the pulled-back hyperplane class.
inline GrassClass pushforward_with_hyperplane(const FiberClass& x, int w, Orientation o = Orientation::dual) {
    GrassClass out(x.ring());
    // H = -xi (dual) or xi (literal)
    Rat hsign = (o == Orientation::dual && w % 2 != 0) ? Rat(-1) : Rat(1);
    for (int j = 0; j <= x.xi_degree(); ++j) {
        if (x[j].is_zero()) continue;
        out.add_scaled(class_mul(x[j], pushforward_xi_power(x.ring(), j + w, o)), hsign);
    }
    return out;
}

/// Chern classes of the relative tangent bundle kappa = l^* (x) (pi^*S / l),
/// of rank k-1: c(kappa) = sum_i c_i(E) (1 - xi)^{k-1-i} with
/// c(E) = pi^*c(S) / (1 + xi). Returns c_1(kappa), ..., c_{k-1}(kappa).
inline std::vector<FiberClass> kappa_chern(const GrassRing& ring, std::optional<int> max_xi = std::nullopt) {
    const int k = ring.k();
    // c_i(E) = sum_{m<=i} c_m(S) (-xi)^{i-m}
    std::vector<FiberClass> E;
    for (int i = 0; i <= k - 1; ++i) {
        FiberClass e(ring, max_xi);
        for (int m = 0; m <= i; ++m) e.add(i - m, chern_S(ring, m), ((i - m) % 2 == 0) ? Rat(1) : Rat(-1));
        E.push_back(e);
    }
    std::vector<FiberClass> out;
    for (int j = 1; j <= k - 1; ++j) {
        // coefficient of degree j in sum_i c_i(E) (1 - xi)^{k-1-i}
        FiberClass cj(ring, max_xi);
        for (int i = 0; i <= j; ++i) {
            int t = j - i;  // power of (-xi)
            mpz_class bin = binomial(k - 1 - i, t);
            if (bin == 0) continue;
            Rat s = Rat(bin) * ((t % 2 == 0) ? Rat(1) : Rat(-1));
            cj.add_scaled(E[static_cast<std::size_t>(i)] * FiberClass::xi_power(ring, t, max_xi), s);
        }
        out.push_back(cj);
    }
    return out;
}

}  // namespace quadpt
