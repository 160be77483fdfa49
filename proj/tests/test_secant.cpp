#include "quadpt/secant.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace quadpt;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ChiPolynomial golden(int a) {
    return ChiPolynomial::parse(read_file(std::string(QUADPT_GOLDEN_DIR) + "/secant_N" + std::to_string(a) + ".txt"), a);
}

// binom(x, k) as a polynomial in x, so negative x is fine.
Rat binom_poly(long x, int k) {
    Rat num = 1;
    for (int i = 0; i < k; ++i) num *= Rat(x - i);
    for (int i = 2; i <= k; ++i) num /= Rat(i);
    return num;
}

// Castelnuovo's count of e-secant (e-2)-planes to a curve of degree d and
// genus g in P^{2e-2}.
Rat castelnuovo(int e, long d, long g) {
    Rat s = 0;
    for (int al = 0; 2 * al <= e; ++al)
        s += Rat(al % 2 ? -1 : 1) * binom_poly(g, al) * binom_poly(d - e - 2 * al + 1, e - 2 * al);
    return s;
}

// chi_0 = deg V, chi_1 = deg c_1(normal bundle) = (M+1)d + 2g - 2 for a curve in P^M.
std::map<ChiIndex, Rat> curve_chi(int M, long d, long g) {
    return {{{0}, Rat(d)}, {{1}, Rat((M + 1) * d + 2 * g - 2)}};
}

}  // namespace

TEST_CASE("golden files parse with the expected number of terms", "[secant]") {
    const std::vector<std::size_t> counts = {8, 15, 24, 36};
    for (int a = 1; a <= 4; ++a) {
        auto g = golden(a);
        CHECK(g.poly().size() == counts[static_cast<std::size_t>(a - 1)]);
        CHECK(g.chi_degree() == 4);
    }
}

TEST_CASE("4!N_1 matches the golden polynomial", "[secant][reference]") { CHECK(count_4secant(1) == golden(1)); }
TEST_CASE("4!N_2 matches the golden polynomial", "[secant][reference]") { CHECK(count_4secant(2) == golden(2)); }
TEST_CASE("4!N_3 matches the golden polynomial", "[secant][reference]") { CHECK(count_4secant(3) == golden(3)); }
TEST_CASE("4!N_4 matches the golden polynomial", "[secant][reference]") { CHECK(count_4secant(4) == golden(4)); }

TEST_CASE("curves: 4-secant planes agree with Castelnuovo's formula", "[secant]") {
    auto N = count_4secant(1);
    for (long d = 0; d <= 6; ++d)
        for (long g = 0; g <= 6; ++g) {
            INFO("d = " << d << ", g = " << g);
            CHECK(N.evaluate(curve_chi(6, d, g)) == Rat(24) * castelnuovo(4, d, g));
        }
    // rational normal sextic: no 4-secant planes; a general degree 8 genus 0 curve
    CHECK(count_4secant_value(1, curve_chi(6, 6, 0)) == 0);
    CHECK(count_4secant_value(1, curve_chi(6, 8, 0)) == castelnuovo(4, 8, 0));
}

TEST_CASE("curves: trisecant lines in P^4 agree with Berzolari's formula", "[secant]") {
    ResidueTable table;
    auto res = count_rsecant(SecantProblem{1, 3}, table);
    for (long d = 0; d <= 5; ++d)
        for (long g = 0; g <= 5; ++g) {
            Rat berzolari = Rat((d - 2) * (d - 3) * (d - 4)) - Rat(6 * g * (d - 4));
            CHECK(res.rfactorial_N.evaluate(curve_chi(4, d, g)) == berzolari);
            CHECK(castelnuovo(3, d, g) * Rat(6) == berzolari);
        }
}

TEST_CASE("problem dimensions", "[secant]") {
    for (int a = 1; a <= 4; ++a) {
        SecantProblem pr{a};
        CHECK(pr.M() == 4 * a + 2);
        CHECK(pr.ell() == 3 * a);
        CHECK(pr.ring().dim() == 3 * (4 * a + 3 - 3));
        CHECK(pr.ring().dim() == 4 * pr.ell());
        CHECK(pr.max_xi() == a);
    }
    CHECK_THROWS(SecantProblem{0}.validate());
    CHECK_THROWS(SecantProblem{1, 2}.validate());
}

TEST_CASE("Chern classes of the normal bundle of f", "[secant]") {
    SecantProblem pr{2};
    auto nu = nu_f_chern(pr, 2);
    const int K = 2, a = 2;
    auto k = [&](int i) { return NuPoly::k(K, a, i); };
    auto n = [&](int t) { return NuPoly::n(K, a, t); };
    // c(nu) = (1 + n1 + n2) / (1 + k1 + k2)
    CHECK(nu[0] == n(1) + k(1) * Rat(-1));
    CHECK(nu[1] == n(2) + n(1) * k(1) * Rat(-1) + k(1) * k(1) + k(2) * Rat(-1));
    for (int m = 1; m <= 2; ++m) CHECK(nu[static_cast<std::size_t>(m - 1)].is_homogeneous_of_degree(m));

    // for a = 1 the n-weight cap removes n1^2
    auto nu1 = nu_f_chern(SecantProblem{1}, 3);
    CHECK((NuPoly::n(2, 1, 1) * NuPoly::n(2, 1, 1)).is_zero());
    CHECK(NuPoly::n(2, 1, 2).is_zero());
    for (const auto& [key, c] : nu1[2].terms()) CHECK(nu1[2].n_weight(key) <= 1);
}

TEST_CASE("Gysin images of simple classes for a = 1", "[secant]") {
    SecantProblem pr{1};
    SecantPipeline pipe(pr);
    GrassRing G = pr.ring();
    // f_!(1) = pi_!(H^5) chi_0 = c_3(Q) chi_0
    auto s1 = pipe.gysin(GradedPoly(1), 0);
    REQUIRE(s1.size() == 1);
    CHECK(s1.begin()->first == std::vector<int>{encode_chi({0})});
    CHECK(s1.begin()->second == chern_Q(G, 3));

    // the n_1 part of f_!(c_1(nu)) is pi_!(H^6) chi_1 = c_4(Q) chi_1
    auto c1 = pipe.gysin(cvar(1), 1);
    CHECK(c1.at({encode_chi({1})}) == chern_Q(G, 4));
    CHECK_THROWS_AS(pipe.gysin(cvar(1) + GradedPoly(1), 1), DimensionMismatch);
}

TEST_CASE("every S_k is chi-linear of degree k*l", "[secant][property]") {
    for (int a = 1; a <= 2; ++a) {
        SecantProblem pr{a};
        SecantPipeline pipe(pr);
        ResidueTable table;
        for (int k = 1; k <= 4; ++k) {
            GradedPoly R = k == 1 ? GradedPoly(1) : table(MultiSingularity::A0_power(k), pr.ell());
            auto S = pipe.gysin(R, (k - 1) * pr.ell());
            CHECK_FALSE(S.empty());
            for (const auto& [mono, g] : S) {
                CHECK(mono.size() == 1);
                CHECK(g.is_homogeneous_of_degree(k * pr.ell()));
            }
        }
    }
}

TEST_CASE("the literal orientation does not reproduce N_1", "[secant]") {
    CHECK_FALSE(count_4secant(1, Orientation::literal) == golden(1));
}

TEST_CASE("evaluation", "[secant]") {
    auto N = count_4secant(1);
    std::map<ChiIndex, Rat> zero{{{0}, 0}, {{1}, 0}};
    CHECK(N.evaluate(zero) == 0);
    CHECK_THROWS_AS(N.evaluate({{{0}, 1}}), MissingChi);
    CHECK(count_4secant_value(1, curve_chi(6, 9, 1)) == castelnuovo(4, 9, 1));
}

TEST_CASE("chi polynomials: parsing, rendering and JSON", "[secant]") {
    auto p = ChiPolynomial::parse("- 36*chi[1,0]*chi[0,1] + chi[0,0]^4 + 1/2*chi[2,0]", 2);
    CHECK(p.coefficient({{1, 0}, {0, 1}}) == -36);
    CHECK(p.coefficient({{0, 0}, {0, 0}, {0, 0}, {0, 0}}) == 1);
    CHECK(p.coefficient({{2, 0}}) == Rat(1, 2));
    CHECK(ChiPolynomial::parse(p.to_string(), 2) == p);
    CHECK(ChiPolynomial::from_json(p.to_json()) == p);
    CHECK(ChiPolynomial::from_json(nlohmann::json::parse(p.to_json().dump())) == p);
    CHECK(ChiPolynomial::chi({1, 0}).to_latex() == "\\chi_{1,0}");
    CHECK(ChiPolynomial::chi({0}).to_string() == "chi[0]");
    CHECK_THROWS(ChiPolynomial::parse("chi[1]", 2));
    CHECK_THROWS(ChiPolynomial::parse("3 chi[0]", 1));
    CHECK_THROWS(ChiPolynomial::chi({2, 1}));
    for (int a = 1; a <= 4; ++a) CHECK(ChiPolynomial::from_json(golden(a).to_json()) == golden(a));

    auto values = chi_values_from_json(nlohmann::json{{"(1,0)", "12/1"}, {"(0,0)", 3}});
    CHECK(values.at({1, 0}) == 12);
    CHECK(values.at({0, 0}) == 3);
}

TEST_CASE("Hilbert-scheme variables for surfaces", "[secant]") {
    auto N2 = golden(2);
    auto form = lehn_crosscheck(N2);
    CHECK(form.round_trip);
    // the substitution is triangular: chi_00 maps to d alone
    CHECK(lehn_crosscheck(ChiPolynomial::chi({0, 0})).value == lehn_var("d"));
    CHECK(lehn_crosscheck(ChiPolynomial::chi({0, 1})).value ==
          lehn_var("kappa") - lehn_var("e") + Rat(11) * lehn_var("pi") + Rat(55) * lehn_var("d"));
    // N_2 has no constant term, so neither does its image
    CHECK(form.value.coefficient({}) == 0);
    CHECK(form.value.is_homogeneous() == false);
    CHECK_THROWS(lehn_crosscheck(golden(1)));
}
