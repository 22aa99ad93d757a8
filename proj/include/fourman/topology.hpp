#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fourman/lattice.hpp"

namespace fourman {

// H^2 classes are integer coordinate vectors in the basis of the Gram matrix;
// all squares and pairings go through the Gram directly.
struct SWDatum {
    LatticeVector basicClass;
    std::optional<long long> swValue;
    std::optional<std::string> convention;  // e.g. "external-blowup-formula"
};

struct FourManifold {
    std::string name;
    int b1 = 0;
    int b2plus = 0;
    int b2minus = 0;
    bool oddForm = true;
    bool spin = false;
    bool simplyConnected = false;
    std::optional<IntegerLattice> gram;
    // One covector per declared spherical class: its pairings with the H^2 basis.
    std::vector<LatticeVector> sphericalClassPairings;
};

struct CharacteristicNumbers {
    long long chi = 0;
    long long sigma = 0;
    long long b2 = 0;
    long long c = 0;  // -(7 chi + 11 sigma)/4
};

CharacteristicNumbers characteristic_numbers(int b1, int b2plus, int b2minus);
CharacteristicNumbers characteristic_numbers(const FourManifold& X);

// Validates the record invariants (7chi+11sigma = 0 mod 4, simply connected
// forces b1 = 0, spin simply connected forces an even form, Gram consistency).
FourManifold make_manifold(FourManifold X);

struct SpinCStructure {
    LatticeVector c1;
};

struct SpinUStructure {
    LatticeVector c1;
    long long p1 = 0;
    LatticeVector w;  // declared integral lift of w2 of the structure
};

// Characteristic-class constraints; returns human-readable violations instead
// of throwing so the caller can report all of them.
std::vector<std::string> validate_spinu(const SpinUStructure& t, const FourManifold& X);

struct ASDIndices {
    long long dA = 0;
    long long nA = 0;
    long long dim = 0;  // dA + 2 nA
};

ASDIndices asd_indices(const SpinUStructure& t, const FourManifold& X);

long long sw_dimension(const SpinCStructure& s, const FourManifold& X);

struct ReductionIndices {
    long long nsPrime = 0;
    long long nsDoublePrime = 0;
    long long ns = 0;
    LatticeVector c1L;  // c1(t) - c1(s)
};

ReductionIndices reduction_indices(const SpinUStructure& t, const SpinCStructure& s,
                                   const FourManifold& X);

SpinUStructure level_shift(const SpinUStructure& t, long long ell);

// True when some declared spherical class pairs oddly with w, which rules out
// flat SO(3) reductions for every bundle with that w2.
bool morgan_mrowka_flatness_excluded(const FourManifold& X, const LatticeVector& w);

struct ManifoldRecord {
    FourManifold X;
    std::vector<SWDatum> basicClasses;
    std::string family;  // "elliptic" | "general-type" | "blowup" | ""
    std::string familyParams;
    bool blowupOfAbundant = false;
    std::optional<bool> effective;  // declared, never validated
    // Optional H^1 cup table rows (i < j, one-indexed) for ring models.
    std::vector<std::pair<std::pair<int, int>, LatticeVector>> oneCupOne;
};

ManifoldRecord elliptic_surface(int n, int p, int q);
ManifoldRecord general_type_surface(long long chi, long long sigma, bool evenForm);
ManifoldRecord blowup_record(const ManifoldRecord& parent);

// Dispatch over the basic-class hypothesis: blow-up closure, then the even or
// odd lemma verdicts (with Rochlin and the 10/8 bound validated for spin
// simply connected records), then bounded search when a bound is given.
AbundanceVerdict abundance_decide(const ManifoldRecord& rec, const LatticeVector& K,
                                  std::optional<long long> searchBound, int threads = 1);

// The generator the basic classes are multiples of; errors when they are not
// collinear (blow-up records are exempt, they short-circuit above).
LatticeVector basic_class_generator(const ManifoldRecord& rec);

}  // namespace fourman
