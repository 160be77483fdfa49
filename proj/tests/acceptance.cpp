// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include "quadpt/germ.hpp"
#include "quadpt/grassmann.hpp"
#include "quadpt/kazarian.hpp"
#include "quadpt/secant.hpp"
#include "quadpt/thom.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace quadpt;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

GradedPoly c(int i) { return cvar(i); }

std::string read_golden(const std::string& name) {
    std::ifstream in(std::string(QUADPT_GOLDEN_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing golden file " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Schur polynomials in k variables by Jacobi-Trudi, multiplied and decomposed
// again by peeling off leading monomials.
class SymOracle {
public:
    SymOracle(int k, int n) : k_(k), cols_(n - k) {}

    GradedPoly h(int m, int vars) {
        if (m < 0) return {};
        if (m == 0) return GradedPoly(1);
        if (vars == 0) return {};
        auto key = std::make_pair(m, vars);
        if (auto it = h_.find(key); it != h_.end()) return it->second;
        GradedPoly out;
        GradedPoly y = var("y", vars);
        for (int j = 0; j <= m; ++j) out = out + y.pow(static_cast<unsigned>(j)) * h(m - j, vars - 1);
        return h_.emplace(key, out).first->second;
    }

    GradedPoly schur(const Partition& lambda) {
        if (auto it = s_.find(lambda); it != s_.end()) return it->second;
        const int n = static_cast<int>(lambda.size());
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        GradedPoly out;
        do {
            int inv = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) inv += sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)];
            GradedPoly term(inv % 2 ? -1 : 1);
            for (int i = 0; i < n; ++i)
                term = term * h(lambda[static_cast<std::size_t>(i)] - i + sigma[static_cast<std::size_t>(i)], k_);
            out = out + term;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return s_.emplace(lambda, out).first->second;
    }

    std::map<Partition, Rat> decompose(GradedPoly p) {
        std::map<Partition, Rat> out;
        while (!p.is_zero()) {
            auto [e, coeff] = p.canonical_terms().front();
            Partition mu(static_cast<std::size_t>(k_), 0);
            const auto& table = *p.vars();
            for (std::size_t i = 0; i < e.size(); ++i) mu[static_cast<std::size_t>(table[i].index - 1)] = static_cast<int>(e[i]);
            p = p - coeff * schur(mu);
            if (mu[0] <= cols_) out[mu] += coeff;
        }
        return out;
    }

    // Integral = coefficient of the full box.
    Rat integrate(const GradedPoly& p) {
        auto d = decompose(p);
        auto it = d.find(Partition(static_cast<std::size_t>(k_), cols_));
        return it == d.end() ? Rat(0) : it->second;
    }

private:
    int k_, cols_;
    std::map<std::pair<int, int>, GradedPoly> h_;
    std::map<Partition, GradedPoly> s_;
};

using Criterion = std::function<void(Outcome&)>;

void criterion_1(Outcome& o) {
    GradedPoly expect = Rat(-6) * (c(1).pow(3) + Rat(3) * c(1) * c(2) + Rat(2) * c(3));
    o.expect(residue_A0r(4, 1) == expect, "R_{A0^4}(1)");
}

void criterion_2(Outcome& o) {
    GradedPoly expect = Rat(-6) * (c(2).pow(3) + Rat(3) * c(1) * c(2) * c(3) + Rat(7) * c(2) * c(4) +
                                   Rat(2) * c(1) * c(1) * c(4) + Rat(10) * c(1) * c(5) + Rat(12) * c(6) + c(3) * c(3));
    o.expect(residue_A0r(4, 2) == expect, "R_{A0^4}(2)");
}

void criterion_3(Outcome& o) {
    const std::vector<std::vector<int>> rows = {{0}, {1, 1}, {3, 2, 3}, {9, 5, 5, 9}, {27, 14, 10, 14, 27}};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j <= i; ++j)
            o.expect(a_coeff(i - j, j) == rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                     "a(" + std::to_string(i - j) + "," + std::to_string(j) + ")");
}

void criterion_4(Outcome& o) {
    for (int ell = 1; ell <= 5; ++ell) {
        o.expect(residue_A0r(2, ell) == -c(ell), "r=2 l=" + std::to_string(ell));
        GradedPoly s = c(ell) * c(ell);
        for (int i = 0; i <= ell - 1; ++i) s = s + Rat(mpz_class(1) << i) * c(ell - 1 - i) * c(ell + 1 + i);
        o.expect(residue_A0r(3, ell) == Rat(2) * s, "r=3 l=" + std::to_string(ell));
    }
}

void require_report(Outcome& o, const Report& r) {
    for (const auto& ch : r.checks) o.expect(ch.passed, r.suite + " l=" + std::to_string(r.ell) + ": " + ch.name);
    o.expect(r.passed(), r.suite + " report");
}

void criterion_5(Outcome& o) {
    for (int ell = 1; ell <= 3; ++ell) require_report(o, verify_quadruple(ell));
}

void criterion_6(Outcome& o) {
    for (int ell = 0; ell <= 3; ++ell) {
        auto g = germ_A(1, ell);
        GradedPoly expect = alpha();
        for (int i = 1; i <= ell; ++i) expect = expect * (beta_i(i) - alpha());
        o.expect(chern_total(g, ell + 1).homogeneous_part(ell + 1) == expect, "c_{l+1}(f_A1) l=" + std::to_string(ell));
    }
}

void criterion_7(Outcome& o) {
    auto g = whitney_umbrella();
    GradedPoly a = alpha(), b = var("beta");
    o.expect(n1(g).value == Rat(2) * b, "n_1 = 2 beta");
    o.expect(m_bar(g, 2) == b - a, "double point class");
    GradedPoly c1 = chern_total(g, 1).homogeneous_part(1);
    o.expect(c1 == a + b, "c_1 = alpha + beta");
    o.expect((b - a) - Rat(2) * b == -c1, "(beta - alpha) - 2 beta = -c_1");
}

void criterion_8(Outcome& o) {
    auto n4 = expand_n(MultiSingularity::A0_power(4));
    auto S = [](int k) { return Symbol{Symbol::Kind::S, MultiSingularity::A0_power(k)}; };
    o.expect(n4.size() == 5, "five terms");
    o.expect(n4.coefficient({S(4)}) == 1, "s_4");
    o.expect(n4.coefficient({S(1), S(3)}) == 4, "s_1 s_3");
    o.expect(n4.coefficient({S(1), S(1), S(2)}) == 6, "s_1^2 s_2");
    o.expect(n4.coefficient({S(2), S(2)}) == 3, "s_2^2");
    o.expect(n4.coefficient({S(1), S(1), S(1), S(1)}) == 1, "s_1^4");
}

void criterion_9(Outcome& o) {
    for (int ell = 1; ell <= 3; ++ell) require_report(o, verify_III22A0(ell));
}

void criterion_10(Outcome& o) {
    {
        GrassRing r(2, 4);
        SymOracle oracle(2, 4);
        GrassClass s1 = GrassClass::schur(r, {1});
        o.expect(integrate(s1 * s1 * s1 * s1) == 2, "sigma_1^4 = 2");
        o.expect(oracle.integrate(oracle.schur({1, 0}).pow(4)) == 2, "oracle sigma_1^4");
        for (const auto& l : r.basis())
            for (const auto& m : r.basis())
                o.expect((GrassClass::schur(r, l) * GrassClass::schur(r, m)).coeffs() ==
                             oracle.decompose(oracle.schur(l) * oracle.schur(m)),
                         "Gr(2,4) " + partition_string(l) + "*" + partition_string(m));
    }
    {
        GrassRing r(3, 7);
        SymOracle oracle(3, 7);
        for (const auto& l : r.basis())
            for (const auto& m : r.basis()) {
                if (size(l) + size(m) > 6) continue;
                o.expect((GrassClass::schur(r, l) * GrassClass::schur(r, m)).coeffs() ==
                             oracle.decompose(oracle.schur(l) * oracle.schur(m)),
                         "Gr(3,7) " + partition_string(l) + "*" + partition_string(m));
            }
    }
    {
        GrassRing r(3, 6);
        for (const auto& l : r.basis())
            for (const auto& m : r.basis())
                o.expect(integrate(GrassClass::schur(r, l) * GrassClass::schur(r, m)) == (m == r.dual(l) ? 1 : 0),
                         "pairing " + partition_string(l) + "," + partition_string(m));
    }
}

void criterion_11(Outcome& o) {
    for (int a = 1; a <= 4; ++a) {
        auto t0 = std::chrono::steady_clock::now();
        auto expect = ChiPolynomial::parse(read_golden("secant_N" + std::to_string(a) + ".txt"), a);
        auto got = count_4secant(a);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "    N_" << a << ": " << (got == expect ? "match" : "MISMATCH") << " (" << std::fixed
                  << std::setprecision(3) << secs << " s)\n";
        o.expect(got == expect, "4!N_" + std::to_string(a));
    }
}

void criterion_12(Outcome& o) {
    auto g = blowup_germ();
    bool rejected = false;
    try {
        (void)n1(g);
    } catch (const NonExactDivision&) {
        rejected = true;
    }
    o.expect(rejected, "blow-up weights must fail the Euler class precondition");
}

GradedPoly random_poly(std::mt19937& rng) {
    static const std::vector<GradedPoly> gens = {c(1), c(2), c(3), var("alpha"), var("beta")};
    std::uniform_int_distribution<int> coeff(-5, 5), pick(0, static_cast<int>(gens.size()) - 1), len(0, 3);
    GradedPoly p;
    for (int t = 0; t < 4; ++t) {
        GradedPoly m(coeff(rng));
        int l = len(rng);
        for (int i = 0; i < l; ++i) m = m * gens[static_cast<std::size_t>(pick(rng))];
        p = p + m;
    }
    return p;
}

void criterion_13(Outcome& o) {
    ResidueTable table;
    for (const char* name : {"A0^2", "A0^3", "A0^4", "A1", "A2", "A3", "A0A1", "III22", "III22A0"}) {
        auto m = MultiSingularity::parse(name);
        for (int ell = 1; ell <= 4; ++ell)
            o.expect(table(m, ell).is_homogeneous_of_degree(codim(m, ell)),
                     std::string("homogeneity ") + name + " l=" + std::to_string(ell));
    }
    // classes entering the secant integral
    for (int a = 1; a <= 2; ++a) {
        SecantProblem pr{a};
        SecantPipeline pipe(pr);
        for (int k = 1; k <= 4; ++k) {
            GradedPoly R = k == 1 ? GradedPoly(1) : table(MultiSingularity::A0_power(k), pr.ell());
            for (const auto& [mono, g] : pipe.gysin(R, (k - 1) * pr.ell()))
                o.expect(mono.size() == 1 && g.is_homogeneous_of_degree(k * pr.ell()),
                         "S_" + std::to_string(k) + " at a=" + std::to_string(a));
        }
    }
    std::mt19937 rng(20240601);
    for (int t = 0; t < 60; ++t) {
        GradedPoly x = random_poly(rng), y = random_poly(rng), z = random_poly(rng);
        o.expect(x * y == y * x && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z, "ring axioms");
        Assignment s{{VarKey{"alpha", 0}, random_poly(rng)}, {VarKey{"c", 1}, var("alpha") + var("beta")}};
        auto sub = [&](const GradedPoly& p) { return substitute(p, s, Unassigned::keep); };
        o.expect(sub(x * y) == sub(x) * sub(y) && sub(x + y) == sub(x) + sub(y), "substitution morphism");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Criterion>> criteria = {
        {"quadruple residue, l = 1", criterion_1},
        {"quadruple residue, l = 2", criterion_2},
        {"a_ij triangle rows 0..4", criterion_3},
        {"r = 2, 3 consistency for l = 1..5", criterion_4},
        {"(q1)-(q4) for l = 1..3", criterion_5},
        {"Tp(A1) identity for l = 0..3", criterion_6},
        {"Whitney umbrella chain", criterion_7},
        {"target coefficients of A0^4", criterion_8},
        {"III22A0 suite for l = 1..3", criterion_9},
        {"Grassmannian oracle", criterion_10},
        {"4-secant golden polynomials a = 1..4", criterion_11},
        {"blow-up negative control", criterion_12},
        {"property suites", criterion_13},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << std::setw(2) << i + 1 << " " << criteria[i].first << " ("
                  << std::fixed << std::setprecision(3) << secs << " s)";
        if (!o.ok) std::cout << ": " << o.detail;
        std::cout << "\n";
        failures += !o.ok;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
