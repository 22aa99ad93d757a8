#include "doctest.h"

#include "fourman/error.hpp"
#include "fourman/ringcalc.hpp"

using namespace fourman;

namespace {

CohomologyModel k3_model(int cap) {
    StandardFormDescriptor d;
    d.parity = FormParity::Even;
    d.e8Count = -2;
    d.hCount = 3;
    return make_model(0, build_standard_lattice(d).gram, {}, cap);
}

// The rational cohomology of the four-torus: four odd generators, Lambda^2
// pairing on H^2 (a sum of three hyperbolic planes in the e_{ij} basis
// e12,e13,e14,e23,e24,e34), and gamma_i gamma_j = e_{i+1,j+1}.
CohomologyModel t4_model(int cap) {
    GramMatrix Q(6, std::vector<long long>(6, 0));
    Q[0][5] = Q[5][0] = 1;   // e12 . e34
    Q[1][4] = Q[4][1] = -1;  // e13 . e24
    Q[2][3] = Q[3][2] = 1;   // e14 . e23
    std::vector<std::pair<std::pair<int, int>, LatticeVector>> cups;
    auto basis = [](int k) {
        LatticeVector v(6, 0);
        v[k] = 1;
        return v;
    };
    cups.push_back({{0, 1}, basis(0)});
    cups.push_back({{0, 2}, basis(1)});
    cups.push_back({{0, 3}, basis(2)});
    cups.push_back({{1, 2}, basis(3)});
    cups.push_back({{1, 3}, basis(4)});
    cups.push_back({{2, 3}, basis(5)});
    return make_model(4, Q, cups, cap);
}

LatticeVector k3_c1t() {
    LatticeVector v(22, 0);
    v[0] = v[2] = v[4] = 1;
    return v;
}

BigradedClass mu_poly(std::vector<Rational> coeffs) {
    BigradedClass out;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        RingTerm t;
        t.muPow = static_cast<int>(k);
        out.terms.emplace(t, coeffs[k]);
    }
    return out;
}

}  // namespace

TEST_CASE("model validation: alternation of the quadruple products") {
    GramMatrix Q(6, std::vector<long long>(6, 0));
    Q[0][5] = Q[5][0] = 1;
    Q[1][4] = Q[4][1] = 1;  // breaks Q(g01,g23) = -Q(g02,g13)
    Q[2][3] = Q[3][2] = 1;
    std::vector<std::pair<std::pair<int, int>, LatticeVector>> cups;
    for (int i = 0, k = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j, ++k) {
            LatticeVector v(6, 0);
            v[k] = 1;
            cups.push_back({{i, j}, v});
        }
    CHECK_THROWS_AS(make_model(4, Q, cups, 2), CalcError);

    // Duplicate rows and out-of-range indices are rejected too.
    CohomologyModel ok = t4_model(2);
    CHECK(ok.chi == 0);
    CHECK(ok.sigma == 0);
    auto cups2 = cups;
    cups2[1] = cups2[0];
    CHECK_THROWS_AS(make_model(4, Q, cups2, 2), CalcError);
}

TEST_CASE("graded commutation between the two odd families") {
    CohomologyModel m = t4_model(3);
    // gammaX_i and gammaJ_j anticommute: both are odd.
    BigradedClass xj = mul(m, bc_gammaX(0), bc_gammaJ(1));
    BigradedClass jx = mul(m, bc_gammaJ(1), bc_gammaX(0));
    CHECK(xj == scale(Rational(-1), jx));

    // gammaJ with even classes commutes.
    BigradedClass a = mul(m, bc_mu(1), bc_gammaJ(0));
    BigradedClass b = mul(m, bc_gammaJ(0), bc_mu(1));
    CHECK(a == b);

    // Odd squares vanish.
    CHECK(mul(m, bc_gammaX(2), bc_gammaX(2)).is_zero());
    CHECK(mul(m, bc_gammaJ(2), bc_gammaJ(2)).is_zero());
}

TEST_CASE("four-torus quadruple evaluation") {
    CohomologyModel m = t4_model(3);

    BigradedClass p = mul(m, mul(m, bc_gammaX(0), bc_gammaX(1)),
                          mul(m, bc_gammaX(2), bc_gammaX(3)));
    // (g0 g1)(g2 g3) evaluates to Q(g01, g34-row) = Q(e12, e34) = +1 point.
    CHECK(p == bc_point(Rational(1)));
    CHECK(slant_fundamental(m, p) == bc_scalar(Rational(1)));

    // Interleaved order picks up one crossing.
    BigradedClass q = mul(m, mul(m, bc_gammaX(0), bc_gammaX(2)),
                          mul(m, bc_gammaX(1), bc_gammaX(3)));
    CHECK(q == bc_point(Rational(-1)));

    // A pair against an H^2 class: gamma0 gamma1 e34 = Q(e12, e34) pt.
    LatticeVector e34(6, 0);
    e34[5] = 1;
    BigradedClass r = mul(m, mul(m, bc_gammaX(0), bc_gammaX(1)), bc_h2(e34));
    CHECK(r == bc_point(Rational(1)));

    // H^2 against H^2.
    LatticeVector e12(6, 0);
    e12[0] = 1;
    CHECK(mul(m, bc_h2(e12), bc_h2(e34)) == bc_point(Rational(1)));
    CHECK(mul(m, bc_h2(e12), bc_h2(e12)).is_zero());
}

TEST_CASE("associativity on a model with cup products") {
    CohomologyModel m = t4_model(3);
    std::vector<BigradedClass> gens = {
        bc_gammaX(0), bc_gammaJ(0), bc_mu(1),
        add(m, bc_gammaX(1), bc_gammaJ(2)),
        add(m, bc_h2(LatticeVector{1, 0, 0, 0, 0, -2}), bc_gammaX(3)),
    };
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens)
                CHECK(mul(m, mul(m, a, b), c) == mul(m, a, mul(m, b, c)));
}

TEST_CASE("exponential identities") {
    CohomologyModel m = k3_model(3);
    CHECK(exp_class(m, BigradedClass{}) == bc_unit());

    BigradedClass mu = bc_mu(1);
    BigradedClass em = exp_class(m, mu);
    BigradedClass emNeg = exp_class(m, scale(Rational(-1), mu));
    CHECK(mul(m, em, emNeg) == bc_unit());

    // exp(mu) truncates at the cap: 1 + mu + mu^2/2 + mu^3/6.
    CHECK(em == mu_poly({Rational(1), Rational(1), Rational(1, 2), Rational(1, 6)}));

    CHECK_THROWS_AS(exp_class(m, bc_unit()), CalcError);
}

TEST_CASE("reference structure on the K3 form: both routes agree") {
    CohomologyModel m = k3_model(2);
    LatticeVector c1s(22, 0);
    LatticeVector c1t = k3_c1t();

    auto [nsP, nsPP] = ns_indices(m, c1s, c1t);
    CHECK(nsP == 2);
    CHECK(nsPP == -1);

    BigradedClass pipe = ch_normal_pipeline(m, c1s, c1t, Rational(0));
    BigradedClass direct = ch_normal_direct(m, c1s, c1t, Rational(0));
    BigradedClass expect = mu_poly({Rational(1), Rational(3), Rational(7, 2)});
    CHECK(pipe == expect);
    CHECK(direct == expect);

    BigradedClass chern = chern_from_character(m, pipe, Rational(1));
    CHECK(chern == mu_poly({Rational(1), Rational(3), Rational(1)}));
    CHECK(chern == c_normal_closed_form(m, 2, -1));

    // Newton identities invert exactly.
    CHECK(character_from_chern(m, chern, Rational(1)) == pipe);
}

TEST_CASE("closed form matches the character route for split ranks") {
    CohomologyModel m = k3_model(2);
    // ch(L_2 + L_1) with c1 = 2mu and mu: rank 2, c1 = 3mu.
    BigradedClass ch = mu_poly({Rational(2), Rational(3), Rational(5, 2)});
    BigradedClass chern = chern_from_character(m, ch, Rational(2));
    CHECK(chern == c_normal_closed_form(m, 1, 1));
    CHECK(character_from_chern(m, chern, Rational(2)) == ch);
}

TEST_CASE("index of the family twisted by W+") {
    CohomologyModel m = k3_model(2);
    // Trivial rank-one twist: the integral reduces to -sigma/8 = 2.
    CHECK(ch_index_family(m, bc_unit(), LatticeVector(22, 0)) == bc_scalar(Rational(2)));

    // e^{c1/2} with c1 = c1t shifts by c1t^2/8 = -6/8 in the mu^0 part.
    BigradedClass tw = ch_index_family(m, bc_unit(), k3_c1t());
    CHECK(tw == bc_scalar(make_rational(5, 4)));
}

TEST_CASE("slant helpers on universal classes") {
    CohomologyModel m = t4_model(2);
    UniversalClasses u = universal_class_constructors(m);

    // c1(Delta) carries one gammaJ_i gammaX_i term per generator.
    CHECK(u.c1Delta.terms.size() == 4);
    for (int i = 0; i < 4; ++i) {
        BigradedClass g = slant_gamma(m, u.c1Delta, i);
        CHECK(g == bc_gammaJ(i));
    }
    CHECK(slant_point_class(m, u.c1L) == bc_mu(1));

    CHECK(slant_fundamental(m, bc_p1x()) == bc_scalar(Rational(3) * make_int(m.sigma)));
    CHECK(slant_fundamental(m, bc_p1lambda()) ==
          bc_scalar(Rational(make_int(2 * m.chi + 3 * m.sigma))));
}

TEST_CASE("gamma-bearing terms agree in magnitude between the two routes") {
    // b1 = 2 model: one cup row, chi = 0, sigma = 0.
    GramMatrix Q{{1, 0}, {0, -1}};
    std::vector<std::pair<std::pair<int, int>, LatticeVector>> cups = {
        {{0, 1}, LatticeVector{1, 0}}};
    CohomologyModel m = make_model(2, Q, cups, 3);
    LatticeVector c1s{1, 1};  // characteristic in diag(1,-1)
    LatticeVector c1t{0, 1};

    BigradedClass pipe = ch_normal_pipeline(m, c1s, c1t, Rational(0));
    BigradedClass direct = ch_normal_direct(m, c1s, c1t, Rational(0));

    CHECK(gamma_free_part(pipe) == gamma_free_part(direct));

    BigradedClass gp = gamma_bearing_part(pipe);
    BigradedClass gd = gamma_bearing_part(direct);
    REQUIRE_FALSE(gp.is_zero());
    REQUIRE(gp.terms.size() == gd.terms.size());
    auto it = gd.terms.begin();
    for (const auto& [t, c] : gp.terms) {
        CHECK(t == it->first);
        Rational mag = c < 0 ? Rational(-c) : c;
        Rational magD = it->second < 0 ? Rational(-it->second) : it->second;
        CHECK(mag == magD);
        ++it;
    }
}

TEST_CASE("serialization order and spelling") {
    CohomologyModel m = t4_model(2);
    BigradedClass a = add(m, bc_scalar(Rational(1, 2)), bc_mu(1));
    a = add(m, a, mul(m, bc_gammaJ(0), bc_gammaJ(1)));
    a = add(m, a, bc_p1x());
    auto rows = serialize_class(a);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::pair<std::string, std::string>{"1", "1/2"});
    CHECK(rows[1] == std::pair<std::string, std::string>{"gJ1*gJ2", "1/1"});
    CHECK(rows[2] == std::pair<std::string, std::string>{"mu", "1/1"});
    CHECK(rows[3] == std::pair<std::string, std::string>{"p1X", "1/1"});
}

TEST_CASE("divisibility guard in ns_indices") {
    CohomologyModel m = k3_model(2);
    LatticeVector zero(22, 0);

    // Isotropic c1t in an H block: ns' = -(chi+sigma)/2 = -4, ns'' = 2.
    LatticeVector hv(22, 0);
    hv[16] = 1;
    auto [nsP, nsPP] = ns_indices(m, zero, hv);
    CHECK(nsP == -4);
    CHECK(nsPP == 2);

    // A non-characteristic c1s can break (2c1t - c1s)^2 = sigma mod 8:
    // c1s = e, c1t = f in one H block gives (2f - e)^2 - sigma = -4 + 16 = 12.
    LatticeVector e(22, 0), f(22, 0);
    e[16] = 1;
    f[17] = 1;
    CHECK_THROWS_AS(ns_indices(m, e, f), CalcError);
}
