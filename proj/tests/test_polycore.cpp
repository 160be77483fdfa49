#include "quadpt/graded_poly.hpp"
#include "quadpt/render.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace quadpt;

namespace {

GradedPoly random_poly(std::mt19937& rng, int terms = 4) {
    static const std::vector<GradedPoly> gens = {cvar(1), cvar(2), cvar(3), var("alpha"), var("beta")};
    std::uniform_int_distribution<int> coeff(-5, 5), pick(0, static_cast<int>(gens.size()) - 1), len(0, 3);
    GradedPoly p;
    for (int t = 0; t < terms; ++t) {
        GradedPoly m(coeff(rng));
        int l = len(rng);
        for (int i = 0; i < l; ++i) m = m * gens[static_cast<std::size_t>(pick(rng))];
        p = p + m;
    }
    return p;
}

}  // namespace

TEST_CASE("ring axioms hold on random polynomials", "[polycore][property]") {
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 60; ++trial) {
        GradedPoly x = random_poly(rng), y = random_poly(rng), z = random_poly(rng);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == GradedPoly());
        CHECK(x * GradedPoly(1) == x);
        CHECK((x * y).is_zero() == (x.is_zero() || y.is_zero()));
    }
}

TEST_CASE("substitution is a ring homomorphism", "[polycore][property]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Assignment s{{VarKey{"alpha", 0}, random_poly(rng, 2)},
                     {VarKey{"c", 1}, var("alpha") + var("beta")},
                     {VarKey{"c", 2}, random_poly(rng, 2)}};
        GradedPoly x = random_poly(rng), y = random_poly(rng);
        auto sub = [&](const GradedPoly& p) { return substitute(p, s, Unassigned::keep); };
        CHECK(sub(x + y) == sub(x) + sub(y));
        CHECK(sub(x * y) == sub(x) * sub(y));
        CHECK(sub(GradedPoly(3)) == GradedPoly(3));
    }
}

TEST_CASE("substitution reports unassigned variables", "[polycore]") {
    GradedPoly p = cvar(1) * cvar(2);
    CHECK_THROWS_AS(substitute(p, {{VarKey{"c", 1}, var("alpha")}}), MissingAssignment);
    CHECK(substitute(p, {{VarKey{"c", 1}, var("alpha")}}, Unassigned::keep) == var("alpha") * cvar(2));
}

TEST_CASE("weighted degree and homogeneity", "[polycore]") {
    GradedPoly p = cvar(1) * cvar(1) * cvar(1) + Rat(3) * cvar(1) * cvar(2) + Rat(2) * cvar(3);
    CHECK(p.degree() == 3);
    CHECK(p.is_homogeneous_of_degree(3));
    CHECK_FALSE((p + cvar(1)).is_homogeneous());
    CHECK((p + cvar(1)).homogeneous_part(1) == cvar(1));
    CHECK(GradedPoly(5).degree() == 0);
}

TEST_CASE("truncation drops high degrees consistently", "[polycore]") {
    GradedPoly x = (GradedPoly(1) + var("alpha")).truncated(3);
    GradedPoly p = x.pow(5);
    // (1+a)^5 up to degree 3: 1 + 5a + 10a^2 + 10a^3
    GradedPoly expect = GradedPoly(1) + Rat(5) * var("alpha") + Rat(10) * var("alpha").pow(2) +
                        Rat(10) * var("alpha").pow(3);
    CHECK(p.without_truncation() == expect);
}

TEST_CASE("series_quotient for the Whitney umbrella", "[polycore]") {
    GradedPoly a = var("alpha"), b = var("beta");
    // c(f) = (1+2a)(1+b)(1+b-a) / ((1+a)(1+b-a)) = (1+2a)(1+b)/(1+a)
    GradedPoly c = series_quotient({Rat(2) * a, b, b - a}, {a, b - a}, 2);
    CHECK(c.homogeneous_part(1) == a + b);
    CHECK(c.homogeneous_part(2) == a * b - a * a);
    // shared factors cancel exactly, so the quotient is a polynomial here
    CHECK(series_quotient({a, b}, {a}, 5).without_truncation() == GradedPoly(1) + b);
}

TEST_CASE("series_quotient inverses and the A1 example", "[polycore][property]") {
    GradedPoly a = var("alpha"), b1 = var("beta", 1), b2 = var("beta", 2);
    std::vector<GradedPoly> F = {Rat(2) * a, b1, b2 - a}, G = {a, b1 - Rat(3) * a};
    for (int d = 0; d <= 5; ++d)
        CHECK((series_quotient(F, G, d) * series_quotient(G, F, d)).truncated(d).without_truncation() == GradedPoly(1));
    CHECK(series_quotient(F, F, 4).without_truncation() == GradedPoly(1));
    // (1+2a)(1+b1)(1+b2)/(1+a) with b_i the Chern roots: c_1 = b_1 + a, c_2 = b_2 + b_1 a - a^2
    // in terms of the elementary symmetric b_1 = beta1 + beta2, b_2 = beta1 beta2.
    GradedPoly c = series_quotient({Rat(2) * a, b1, b2}, {a}, 2);
    GradedPoly e1 = b1 + b2, e2 = b1 * b2;
    CHECK(c.homogeneous_part(1) == e1 + a);
    CHECK(c.homogeneous_part(2) == e2 + e1 * a - a * a);
}

TEST_CASE("series_quotient rejects non-linear factors", "[polycore]") {
    CHECK_THROWS(series_quotient({var("alpha") * var("beta")}, {}, 3));
}

TEST_CASE("Schur determinants agree with the permutation expansion", "[polycore]") {
    // Independent oracle: det over S_n of c_{lambda_i - i + sigma(i)}.
    auto perm_det = [](std::vector<int> lambda) {
        const int n = static_cast<int>(lambda.size());
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        GradedPoly out;
        do {
            int inversions = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) inversions += sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)];
            GradedPoly term(inversions % 2 ? -1 : 1);
            for (int i = 0; i < n; ++i) term = term * cvar(lambda[static_cast<std::size_t>(i)] - i + sigma[static_cast<std::size_t>(i)]);
            out = out + term;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return out;
    };
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j) CHECK(schur2(i, j) == perm_det({i, j}));
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; k <= 3; ++k) CHECK(schur3(i, j, k) == perm_det({i, j, k}));
    CHECK(schur2(1, 1) == cvar(1) * cvar(1) - cvar(2));
    CHECK(schur3(1, 1, 1) == cvar(1).pow(3) - Rat(2) * cvar(1) * cvar(2) + cvar(3));
    CHECK(schur3(4, 2, 0) == schur2(4, 2));
}

TEST_CASE("parsing and text rendering round-trip", "[polycore]") {
    GradedPoly p = parse_poly("-6*(c1^3 + 3*c1*c2 + 2*c3)");
    CHECK(p == Rat(-6) * cvar(1).pow(3) - Rat(18) * cvar(1) * cvar(2) - Rat(12) * cvar(3));
    CHECK(parse_poly(p.to_string()) == p);
    CHECK(p.to_string() == "-6*c1^3 - 18*c1*c2 - 12*c3");
    CHECK(to_factored_text(p) == "-6*(c1^3 + 3*c1*c2 + 2*c3)");
    CHECK(parse_poly("c0") == GradedPoly(1));
    CHECK(parse_poly("1/2*alpha + beta2") == Rat(1, 2) * var("alpha") + var("beta", 2));
    CHECK_THROWS(parse_poly("c1 +"));
}

TEST_CASE("LaTeX rendering factors out the content", "[polycore]") {
    CHECK(to_latex(parse_poly("-6*c1^3 - 18*c1*c2 - 12*c3")) == "-6(c_1^3 + 3c_1c_2 + 2c_3)");
    CHECK(to_latex(parse_poly("alpha*beta1 - alpha^2")) == "-(\\alpha^2 - \\alpha\\beta_1)");
    CHECK(to_latex(parse_poly("c12")) == "c_{12}");
    CHECK(to_latex(GradedPoly()) == "0");
}

TEST_CASE("JSON round-trip is exact", "[polycore]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        GradedPoly p = random_poly(rng) * Rat(1, 3);
        auto j = to_json(p);
        CHECK(poly_from_json(j) == p);
        CHECK(poly_from_json(nlohmann::json::parse(j.dump())) == p);
    }
    auto j = to_json(Rat(-1, 2) * cvar(2));
    CHECK(j["terms"][0]["coeff"] == "-1/2");
}

TEST_CASE("proportionality and zero loci", "[polycore]") {
    GradedPoly a = var("alpha"), b = var("beta");
    CHECK(proportionality(a + b, Rat(3) * (a + b)) == Rat(3));
    CHECK_FALSE(proportionality(a + b, a - b).has_value());
    auto z = zero_locus(b - Rat(2) * a);
    CHECK(substitute(b - Rat(2) * a, z, Unassigned::keep).is_zero());
    CHECK(vanishes_under((b - a) * a, {zero_locus(b - a), zero_locus(a)}));
}

TEST_CASE("tables merge across families", "[polycore]") {
    GradedPoly p = cvar(1) + var("alpha");
    GradedPoly q = var("beta", 3);
    GradedPoly r = p * q;
    CHECK(r.size() == 2);
    CHECK(r.coefficient({{VarKey{"c", 1}, 1}, {VarKey{"beta", 3}, 1}}) == 1);
    CHECK(r.coefficient({{VarKey{"gamma", 0}, 1}}) == 0);
}
