#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fourman/lattice.hpp"

namespace fourman {

// Rational cohomology model of a closed oriented four-manifold: b1 odd
// generators gamma_1..gamma_b1, an H^2 basis with pairing Q, and the cup
// products gamma_i gamma_j expressed in that basis (antisymmetric table).
// chi and sigma are derived; cap truncates the complex degree of classes.
struct CohomologyModel {
    int b1 = 0;
    int h2rank = 0;
    IntegerLattice Q;
    // gij[{i,j}] for 0 <= i < j < b1; the (j,i) entry is the negative.
    std::map<std::pair<int, int>, LatticeVector> gij;
    long long chi = 0;
    long long sigma = 0;
    int cap = 1;

    const LatticeVector* cup(int i, int j) const;  // i < j, null when zero
    Rational quad(int a, int b, int c, int d) const;  // Q(g_ab, g_cd), a<b<c<d
};

CohomologyModel make_model(int b1, GramMatrix Q,
                           const std::vector<std::pair<std::pair<int, int>, LatticeVector>>& cups,
                           int cap);

// X-side monomial: a square-free word in the odd generators, at most one H^2
// basis factor, or one of the degree-4 symbols. Degree-4 products of honest
// classes are evaluated against Q immediately, so only these shapes persist.
struct XMonomial {
    unsigned gmask = 0;
    int h2 = -1;                              // H^2 basis index, -1 when absent
    enum Special { None = 0, P1X, P1Lambda, Point } special = None;
    auto operator<=>(const XMonomial&) const = default;
    int degree() const;
};

struct RingTerm {
    int muPow = 0;
    unsigned jmask = 0;  // gamma^J word on the parameter side
    XMonomial x;
    auto operator<=>(const RingTerm&) const = default;
};

// Canonical: zero coefficients never stored.
struct BigradedClass {
    std::map<RingTerm, Rational> terms;
    bool operator==(const BigradedClass&) const = default;
    bool is_zero() const { return terms.empty(); }
};

BigradedClass bc_scalar(const Rational& r);
BigradedClass bc_unit();
BigradedClass bc_mu(int pow = 1);
BigradedClass bc_gammaJ(int i);
BigradedClass bc_gammaX(int i);
BigradedClass bc_h2(const LatticeVector& coeffs);
BigradedClass bc_p1x();
BigradedClass bc_p1lambda();
BigradedClass bc_point(const Rational& value);

BigradedClass add(const CohomologyModel& m, const BigradedClass& a, const BigradedClass& b);
BigradedClass sub(const CohomologyModel& m, const BigradedClass& a, const BigradedClass& b);
BigradedClass scale(const Rational& c, const BigradedClass& a);
BigradedClass mul(const CohomologyModel& m, const BigradedClass& a, const BigradedClass& b);
BigradedClass exp_class(const CohomologyModel& m, const BigradedClass& a);

// Pairs the degree-4 base component against the fundamental class; p1(X) and
// p1(Lambda+) evaluate to 3 sigma and 2 chi + 3 sigma.
BigradedClass slant_fundamental(const CohomologyModel& m, const BigradedClass& a);

// ch(E) e^{c1(W+)/2} (1 - p1(X)/24) slanted against [X].
BigradedClass ch_index_family(const CohomologyModel& m, const BigradedClass& chE,
                              const LatticeVector& c1Wplus);

// The two routes to the Chern character of the normal bundle of the reducible
// locus: assembled index pipeline vs the evaluated closed formula.
BigradedClass ch_normal_pipeline(const CohomologyModel& m, const LatticeVector& c1s,
                                 const LatticeVector& c1t, const Rational& rXi);
BigradedClass ch_normal_direct(const CohomologyModel& m, const LatticeVector& c1s,
                               const LatticeVector& c1t, const Rational& rXi);

// (nsPrime, nsDoublePrime) for these structures on this model.
std::pair<long long, long long> ns_indices(const CohomologyModel& m, const LatticeVector& c1s,
                                           const LatticeVector& c1t);

// Newton identities between total Chern class and Chern character; `rank`
// must match the degree-zero part of the character.
BigradedClass chern_from_character(const CohomologyModel& m, const BigradedClass& ch,
                                   const Rational& rank);
BigradedClass character_from_chern(const CohomologyModel& m, const BigradedClass& c,
                                   const Rational& rank);

// (1 + 2 mu)^{nsPrime} (1 + mu)^{nsDoublePrime}; needs a trivial cup table.
BigradedClass c_normal_closed_form(const CohomologyModel& m, long long nsPrime,
                                   long long nsDoublePrime);

struct UniversalClasses {
    BigradedClass c1Delta;  // sum gammaJ_i x gammaX_i
    BigradedClass c1L;      // mu x 1 + c1Delta
};
UniversalClasses universal_class_constructors(const CohomologyModel& m);
BigradedClass slant_point_class(const CohomologyModel& m, const BigradedClass& a);
BigradedClass slant_gamma(const CohomologyModel& m, const BigradedClass& a, int i);

// Component of complex degree k (2 muPow + |gamma word| = 2k) of a base-free
// class; the parameter-side grading used by the Newton identities.
BigradedClass complex_degree_part(const BigradedClass& a, int k);

// (monomial, "p/q") pairs ordered by (degree, monomial string).
std::vector<std::pair<std::string, std::string>> serialize_class(const BigradedClass& a);

// Coefficient comparison helpers for the equivalence tests: gamma-free terms,
// and gamma-bearing terms, of a base-free class.
BigradedClass gamma_free_part(const BigradedClass& a);
BigradedClass gamma_bearing_part(const BigradedClass& a);

}  // namespace fourman
