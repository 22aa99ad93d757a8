#include "doctest.h"

#include <algorithm>
#include <set>

#include "fourman/error.hpp"
#include "fourman/lattice.hpp"

using namespace fourman;

namespace {

IntegerLattice diag(std::vector<long long> d) {
    GramMatrix g(d.size(), std::vector<long long>(d.size(), 0));
    for (size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return make_lattice(std::move(g));
}

bool cert_valid(const IntegerLattice& L, const HyperbolicCertificate& c,
                const LatticeVector& kappa) {
    return inner_product(L, c.e, c.e) == 0 && inner_product(L, c.f, c.f) == 0 &&
           inner_product(L, c.e, c.f) == 1 && inner_product(L, c.e, kappa) == 0 &&
           inner_product(L, c.f, kappa) == 0;
}

}  // namespace

TEST_CASE("signature, determinant, parity of the standard blocks") {
    IntegerLattice e8 = make_lattice(e8_gram());
    Signature s8 = signature_of(e8);
    CHECK(s8.plus == 8);
    CHECK(s8.minus == 0);
    CHECK(s8.zero == 0);
    CHECK(determinant(e8) == 1);
    CHECK(is_even_form(e8));
    CHECK(is_unimodular(e8));

    IntegerLattice h = make_lattice(hyperbolic_gram());
    Signature sh = signature_of(h);
    CHECK(sh.plus == 1);
    CHECK(sh.minus == 1);
    CHECK(determinant(h) == -1);
    CHECK(is_even_form(h));
    CHECK(is_unimodular(h));

    IntegerLattice odd = diag({1, 1, -1});
    Signature so = signature_of(odd);
    CHECK(so.plus == 2);
    CHECK(so.minus == 1);
    CHECK_FALSE(is_even_form(odd));
    CHECK(is_unimodular(odd));

    IntegerLattice degen = diag({1, 0, -3});
    Signature sd = signature_of(degen);
    CHECK(sd.plus == 1);
    CHECK(sd.minus == 1);
    CHECK(sd.zero == 1);
    CHECK(determinant(degen) == 0);
    CHECK_FALSE(is_unimodular(degen));
}

TEST_CASE("build_standard_lattice / classify_indefinite_unimodular round trip") {
    StandardFormDescriptor k3;
    k3.parity = FormParity::Even;
    k3.e8Count = -2;
    k3.hCount = 3;
    IntegerLattice L = build_standard_lattice(k3);
    CHECK(L.rank == 22);
    Signature s = signature_of(L);
    CHECK(s.plus == 3);
    CHECK(s.minus == 19);
    CHECK(is_even_form(L));
    CHECK(is_unimodular(L));
    StandardFormDescriptor back = classify_indefinite_unimodular(L);
    CHECK(back.parity == FormParity::Even);
    CHECK(back.e8Count == -2);
    CHECK(back.hCount == 3);

    StandardFormDescriptor odd;
    odd.parity = FormParity::Odd;
    odd.nPlus = 3;
    odd.nMinus = 19;
    IntegerLattice M = build_standard_lattice(odd);
    StandardFormDescriptor ob = classify_indefinite_unimodular(M);
    CHECK(ob.parity == FormParity::Odd);
    CHECK(ob.nPlus == 3);
    CHECK(ob.nMinus == 19);

    CHECK_THROWS_AS(classify_indefinite_unimodular(diag({1, 1})), CalcError);  // definite
    CHECK_THROWS_AS(classify_indefinite_unimodular(diag({2, -2})), CalcError);  // det != 1
}

TEST_CASE("vector_report: square, primitivity, characteristic") {
    IntegerLattice h = make_lattice(hyperbolic_gram());

    // In H every vector is characteristic iff both coordinates are even:
    // (Gv)_i = v_{1-i} must match G_ii = 0 mod 2.
    VectorReport r = vector_report(h, {2, 0});
    CHECK(r.square == 0);
    CHECK_FALSE(r.primitive);
    CHECK(r.characteristic);

    r = vector_report(h, {1, 1});
    CHECK(r.square == 2);
    CHECK(r.primitive);
    CHECK_FALSE(r.characteristic);

    IntegerLattice odd = diag({1, 1, -1});
    r = vector_report(odd, {1, 1, 1});
    CHECK(r.square == 1);
    CHECK(r.primitive);
    CHECK(r.characteristic);

    // Odd multiples preserve the characteristic property, even ones lose it
    // (on an odd form).
    CHECK(vector_report(odd, {3, 3, 3}).characteristic);
    CHECK_FALSE(vector_report(odd, {2, 2, 2}).characteristic);

    CHECK(primitive_part(LatticeVector{4, -6, 2}) == LatticeVector{2, -3, 1});
    CHECK(primitive_part(LatticeVector{0, 0, 0}) == LatticeVector{0, 0, 0});
}

TEST_CASE("four_odd_squares: existence iff k = 4 mod 8, least tuples") {
    auto t = four_odd_squares(4);
    REQUIRE(t);
    CHECK(*t == std::array<long long, 4>{1, 1, 1, 1});

    t = four_odd_squares(12);
    REQUIRE(t);
    CHECK(*t == std::array<long long, 4>{3, 1, 1, 1});

    // 36 = 25+9+1+1 = 9+9+9+9; the non-increasing tuple (3,3,3,3) is
    // lexicographically below (5,3,1,1).
    t = four_odd_squares(36);
    REQUIRE(t);
    CHECK(*t == std::array<long long, 4>{3, 3, 3, 3});

    CHECK_FALSE(four_odd_squares(8));
    CHECK_FALSE(four_odd_squares(16));
    CHECK_FALSE(four_odd_squares(5));
    CHECK_FALSE(four_odd_squares(0));
    CHECK_FALSE(four_odd_squares(-4));

    t = four_odd_squares(9996);  // 9996 = 4 mod 8
    REQUIRE(t);
    long long sum = 0;
    for (long long x : *t) {
        CHECK(x > 0);
        CHECK(x % 2 == 1);
        sum += x * x;
    }
    CHECK(sum == 9996);
}

TEST_CASE("three_squares and the 4^a(8b+7) obstruction") {
    CHECK_FALSE(three_squares(7));
    CHECK(three_squares_obstructed(7));
    CHECK_FALSE(three_squares(28));  // 4 * 7
    CHECK(three_squares_obstructed(28));
    CHECK_FALSE(three_squares(112));  // 16 * 7

    auto t = three_squares(6);
    REQUIRE(t);
    CHECK(*t == std::array<long long, 3>{2, 1, 1});
    CHECK_FALSE(three_squares_obstructed(6));

    t = three_squares(0);
    REQUIRE(t);
    CHECK(*t == std::array<long long, 3>{0, 0, 0});

    t = three_squares(2);
    REQUIRE(t);
    CHECK(*t == std::array<long long, 3>{1, 1, 0});
}

TEST_CASE("lemma verdict dispatch over the rank/signature cases") {
    // Even, |sigma| <= rank - 4.
    StandardFormDescriptor d;
    d.parity = FormParity::Even;
    d.hCount = 3;
    IntegerLattice threeH = build_standard_lattice(d);
    AbundanceVerdict v = lemma_verdict_hyperbolic_orthogonal(threeH, LatticeVector(6, 0));
    CHECK(v.status == AbundanceStatus::ProvenByLemma);
    CHECK(v.lemma == LemmaTag::A2);

    // Even but rank - 4 < |sigma|: single H.
    IntegerLattice oneH = make_lattice(hyperbolic_gram());
    v = lemma_verdict_hyperbolic_orthogonal(oneH, LatticeVector(2, 0));
    CHECK(v.status == AbundanceStatus::Unknown);

    // Odd, b2+ >= 5, b2- >= 3, characteristic kappa.
    IntegerLattice o53 = diag({1, 1, 1, 1, 1, -1, -1, -1});
    v = lemma_verdict_hyperbolic_orthogonal(o53, LatticeVector(8, 1));
    CHECK(v.status == AbundanceStatus::ProvenByLemma);
    CHECK(v.lemma == LemmaTag::A4);

    // Odd, b2+ = 3, b2- >= 5.
    IntegerLattice o35 = diag({1, 1, 1, -1, -1, -1, -1, -1});
    v = lemma_verdict_hyperbolic_orthogonal(o35, LatticeVector(8, 1));
    CHECK(v.status == AbundanceStatus::ProvenByLemma);
    CHECK(v.lemma == LemmaTag::A7a);

    // Odd, b2+ = 3, b2- = 2, kappa^2 = 4 + 5 b2+ - b2- = 17.
    IntegerLattice o32 = diag({1, 1, 1, -1, -1});
    LatticeVector kappa{5, 1, 1, 3, 1};
    REQUIRE(vector_report(o32, kappa).square == 17);
    REQUIRE(vector_report(o32, kappa).characteristic);
    v = lemma_verdict_hyperbolic_orthogonal(o32, kappa);
    CHECK(v.status == AbundanceStatus::ProvenByLemma);
    CHECK(v.lemma == LemmaTag::A7b);

    // Same shape, wrong square: no verdict.
    v = lemma_verdict_hyperbolic_orthogonal(o32, {1, 1, 1, 1, 1});
    CHECK(v.status == AbundanceStatus::Unknown);

    // b2- = 3 sits in the gap between A.7a and A.7b.
    IntegerLattice o33 = diag({1, 1, 1, -1, -1, -1});
    v = lemma_verdict_hyperbolic_orthogonal(o33, LatticeVector(6, 1));
    CHECK(v.status == AbundanceStatus::Unknown);

    // Non-characteristic kappa on an odd form matches no hypothesis.
    v = lemma_verdict_hyperbolic_orthogonal(o53, {2, 0, 0, 0, 0, 0, 0, 0});
    CHECK(v.status == AbundanceStatus::Unknown);

    // Precondition failures do throw.
    CHECK_THROWS_AS(lemma_verdict_hyperbolic_orthogonal(diag({1, 0, -1}), {0, 0, 0}), CalcError);
    CHECK_THROWS_AS(lemma_verdict_hyperbolic_orthogonal(diag({1, 1}), {0, 0}), CalcError);
}

TEST_CASE("search_hyperbolic_pair: determinism, validity, thread invariance") {
    IntegerLattice L = diag({1, 1, -1});
    LatticeVector kappa(3, 0);

    auto c1 = search_hyperbolic_pair(L, kappa, 1);
    REQUIRE(c1);
    CHECK(cert_valid(L, *c1, kappa));

    // Pinned first pair in (max-norm, lex) order; a regression anchor for the
    // deterministic enumeration.
    CHECK(c1->e == LatticeVector{-1, 0, -1});
    CHECK(c1->f == LatticeVector{0, -1, 1});

    auto c2 = search_hyperbolic_pair(L, kappa, 1);
    REQUIRE(c2);
    CHECK(c1->e == c2->e);
    CHECK(c1->f == c2->f);

    auto c4 = search_hyperbolic_pair(L, kappa, 1, 4);
    REQUIRE(c4);
    CHECK(c1->e == c4->e);
    CHECK(c1->f == c4->f);

    // Orthogonality to kappa prunes: kappa = (0,0,1) forces e,f in the
    // definite sublattice, where no isotropic vector exists.
    CHECK_FALSE(search_hyperbolic_pair(L, {0, 0, 1}, 2));

    // Positive definite: nothing at any bound.
    CHECK_FALSE(search_hyperbolic_pair(diag({1, 1, 1}), {0, 0, 0}, 3));
}

TEST_CASE("search certificate respects kappa orthogonality") {
    IntegerLattice L = diag({1, 1, 1, -1, -1});
    LatticeVector kappa{5, 1, 1, 3, 1};
    auto c = search_hyperbolic_pair(L, kappa, 3);
    REQUIRE(c);
    CHECK(cert_valid(L, *c, kappa));
}

TEST_CASE("construct_lambda hits the prescribed squares") {
    IntegerLattice L = diag({1, 1, -1});
    auto cert = search_hyperbolic_pair(L, LatticeVector(3, 0), 1);
    REQUIRE(cert);

    const long long chi = 4, sigma = 0;  // t = 2
    for (long long j = 1; j <= 3; ++j) {
        LatticeVector lam = construct_lambda(L, *cert, chi, sigma, j);
        CHECK(vector_report(L, lam).square == make_int(2 * j - (chi + sigma)));
    }

    // chi + sigma odd: t is not an integer.
    CHECK_THROWS_AS(construct_lambda(L, *cert, 3, 0, 1), CalcError);
}
