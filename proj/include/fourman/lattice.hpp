#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fourman/rational.hpp"

namespace fourman {

using LatticeVector = std::vector<long long>;
using GramMatrix = std::vector<std::vector<long long>>;

// Integral symmetric bilinear form in a fixed basis. Degenerate Grams are
// first-class citizens; operations that need nondegeneracy say so.
struct IntegerLattice {
    int rank = 0;
    GramMatrix gram;
};

IntegerLattice make_lattice(GramMatrix gram);

struct Signature {
    int plus = 0;
    int minus = 0;
    int zero = 0;  // radical dimension
};

// Exact signature by rational congruence diagonalization; no floating point.
Signature signature_of(const IntegerLattice& L);

Int determinant(const IntegerLattice& L);
bool is_even_form(const IntegerLattice& L);
bool is_unimodular(const IntegerLattice& L);

enum class FormParity { Odd, Even };

// Indefinite unimodular standard form: odd = nPlus<1> + nMinus<-1>,
// even = e8Count copies of E8 (negated when e8Count < 0) + hCount copies of H.
struct StandardFormDescriptor {
    FormParity parity = FormParity::Odd;
    int nPlus = 0;
    int nMinus = 0;
    int e8Count = 0;
    int hCount = 0;
};

GramMatrix e8_gram();
GramMatrix hyperbolic_gram();

IntegerLattice build_standard_lattice(const StandardFormDescriptor& d);

// Classification from rank/signature/parity alone; requires a nondegenerate
// indefinite unimodular input.
StandardFormDescriptor classify_indefinite_unimodular(const IntegerLattice& L);

struct VectorReport {
    Int square;
    bool primitive = false;
    bool characteristic = false;
};

VectorReport vector_report(const IntegerLattice& L, const LatticeVector& v);

Int inner_product(const IntegerLattice& L, const LatticeVector& a, const LatticeVector& b);
bool is_characteristic(const IntegerLattice& L, const LatticeVector& v);
LatticeVector primitive_part(const LatticeVector& v);

// Lexicographically least non-increasing quadruple of odd positive squares
// summing to k; exists exactly when k = 4 mod 8.
std::optional<std::array<long long, 4>> four_odd_squares(long long k);

// Non-increasing representation n = x^2+y^2+z^2, x>=y>=z>=0, lexicographically
// least; none exactly for n = 4^a(8b+7).
std::optional<std::array<long long, 3>> three_squares(long long n);
bool three_squares_obstructed(long long n);

enum class AbundanceStatus { ProvenByLemma, CertifiedBySearch, RefutedAtBound, Unknown };
enum class LemmaTag { A2, A4, A7a, A7b, CorollaryA3, BlowupClosure, None };

std::string to_string(AbundanceStatus s);
std::string to_string(LemmaTag t);

// Isotropic pair spanning a hyperbolic sublattice of kappa's orthogonal
// complement: e.e = f.f = 0, e.f = 1, e.kappa = f.kappa = 0.
struct HyperbolicCertificate {
    LatticeVector e;
    LatticeVector f;
};

struct AbundanceVerdict {
    AbundanceStatus status = AbundanceStatus::Unknown;
    LemmaTag lemma = LemmaTag::None;
    std::optional<HyperbolicCertificate> certificate;
    std::optional<long long> searchBound;
};

// Hypothesis-driven verdict: kappa is replaced by its primitive part, then the
// even-form rank/signature test and the odd-form characteristic-vector tests
// are applied in order. Returns Unknown when no hypothesis matches.
AbundanceVerdict lemma_verdict_hyperbolic_orthogonal(const IntegerLattice& L,
                                                     const LatticeVector& kappa);

// Exhaustive bounded search over coefficient boxes [-bound, bound]^rank.
// Deterministic: candidate vectors ordered by (max-norm, lexicographic), pairs
// by (max of the two max-norms, e position, f position); the first verified
// pair wins. `threads` partitions the enumeration without changing the result.
std::optional<HyperbolicCertificate> search_hyperbolic_pair(const IntegerLattice& L,
                                                            const LatticeVector& kappa,
                                                            long long bound,
                                                            int threads = 1);

// Lambda_j = e + (j - t) f with t = (chi + sigma)/2; postcondition
// Lambda.Lambda = 2j - (chi + sigma) is re-verified against the Gram.
LatticeVector construct_lambda(const IntegerLattice& L, const HyperbolicCertificate& cert,
                               long long chi, long long sigma, long long j);

}  // namespace fourman
