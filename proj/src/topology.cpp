#include "fourman/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace fourman {

CharacteristicNumbers characteristic_numbers(int b1, int b2plus, int b2minus) {
    if (b1 < 0 || b2plus < 0 || b2minus < 0) throw input_error("negative Betti number");
    CharacteristicNumbers cn;
    cn.chi = 2 - 2LL * b1 + b2plus + b2minus;
    cn.sigma = b2plus - b2minus;
    cn.b2 = b2plus + b2minus;
    const long long num = 7 * cn.chi + 11 * cn.sigma;
    if (num % 4 != 0)
        throw parity_error("7*chi + 11*sigma = " + std::to_string(num) + " is not divisible by 4");
    cn.c = -num / 4;
    return cn;
}

CharacteristicNumbers characteristic_numbers(const FourManifold& X) {
    return characteristic_numbers(X.b1, X.b2plus, X.b2minus);
}

FourManifold make_manifold(FourManifold X) {
    characteristic_numbers(X);  // validates the mod-4 constraint
    if (X.simplyConnected && X.b1 != 0)
        throw validation_error("simply connected manifold with b1 != 0");
    if (X.spin && X.simplyConnected && X.oddForm)
        throw validation_error("spin simply connected manifold cannot have an odd form");
    if (X.gram) {
        const auto& L = *X.gram;
        if (L.rank != X.b2plus + X.b2minus)
            throw validation_error("gram rank does not equal b2");
        Signature s = signature_of(L);
        if (s.plus != X.b2plus || s.minus != X.b2minus || s.zero != 0)
            throw validation_error("gram signature disagrees with (b2plus, b2minus)");
        if (is_even_form(L) == X.oddForm)
            throw validation_error("gram parity disagrees with the declared form parity");
        for (const auto& p : X.sphericalClassPairings)
            if (static_cast<int>(p.size()) != L.rank)
                throw validation_error("spherical pairing length does not equal b2");
    }
    return X;
}

namespace {

const IntegerLattice& require_gram(const FourManifold& X, const char* who) {
    if (!X.gram) throw input_error(std::string(who) + " needs an explicit Gram matrix");
    return *X.gram;
}

long long square(const IntegerLattice& L, const LatticeVector& v) {
    return to_ll(inner_product(L, v, v));
}

LatticeVector vsub(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

LatticeVector vscale(long long c, const LatticeVector& a) {
    LatticeVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

}  // namespace

std::vector<std::string> validate_spinu(const SpinUStructure& t, const FourManifold& X) {
    const auto& L = require_gram(X, "validate_spinu");
    std::vector<std::string> bad;
    if (static_cast<int>(t.c1.size()) != L.rank || static_cast<int>(t.w.size()) != L.rank) {
        bad.push_back("class length does not equal b2");
        return bad;
    }
    // c1 - w must reduce to w2(X): integral lifts of w2(X) are exactly the
    // characteristic vectors.
    if (!is_characteristic(L, vsub(t.c1, t.w)))
        bad.push_back("c1 - w does not reduce to w2(X) mod 2");
    const long long w2 = square(L, t.w);
    if (((t.p1 - w2) % 4 + 4) % 4 != 0)
        bad.push_back("p1 != w.w mod 4, so c2(E) = -(p1 - w.w)/4 is not an integer");
    return bad;
}

ASDIndices asd_indices(const SpinUStructure& t, const FourManifold& X) {
    auto bad = validate_spinu(t, X);
    if (!bad.empty()) throw validation_error("spin-u structure invalid: " + bad.front());
    const auto cn = characteristic_numbers(X);
    if ((cn.chi + cn.sigma) % 2 != 0)
        throw parity_error("chi + sigma must be even for the ASD index");
    ASDIndices r;
    r.dA = -2 * t.p1 - 3 * (cn.chi + cn.sigma) / 2;
    const long long num = t.p1 + square(*X.gram, t.c1) - cn.sigma;
    if (((num % 4) + 4) % 4 != 0)
        throw parity_error("p1 + c1(t).c1(t) - sigma = " + std::to_string(num) +
                           " is not divisible by 4");
    r.nA = num / 4;
    r.dim = r.dA + 2 * r.nA;
    return r;
}

long long sw_dimension(const SpinCStructure& s, const FourManifold& X) {
    const auto& L = require_gram(X, "sw_dimension");
    if (!is_characteristic(L, s.c1))
        throw validation_error("c1 of a spin-c structure must be characteristic");
    const auto cn = characteristic_numbers(X);
    const long long num = square(L, s.c1) - 2 * cn.chi - 3 * cn.sigma;
    if (((num % 4) + 4) % 4 != 0)
        throw parity_error("c1(s).c1(s) - 2 chi - 3 sigma is not divisible by 4");
    return num / 4;
}

ReductionIndices reduction_indices(const SpinUStructure& t, const SpinCStructure& s,
                                   const FourManifold& X) {
    const auto& L = require_gram(X, "reduction_indices");
    const auto cn = characteristic_numbers(X);
    if ((cn.chi + cn.sigma) % 2 != 0)
        throw parity_error("chi + sigma must be even for the reduction indices");
    ReductionIndices r;
    r.c1L = vsub(t.c1, s.c1);
    r.nsPrime = -square(L, r.c1L) - (cn.chi + cn.sigma) / 2;
    const long long num = square(L, vsub(vscale(2, t.c1), s.c1)) - cn.sigma;
    if (((num % 8) + 8) % 8 != 0)
        throw validation_error("(2 c1(t) - c1(s)).(2 c1(t) - c1(s)) - sigma = " +
                               std::to_string(num) +
                               " is not divisible by 8; input classes are inconsistent");
    r.nsDoublePrime = num / 8;
    r.ns = r.nsPrime + r.nsDoublePrime;
    return r;
}

SpinUStructure level_shift(const SpinUStructure& t, long long ell) {
    SpinUStructure s = t;
    s.p1 += 4 * ell;
    return s;
}

bool morgan_mrowka_flatness_excluded(const FourManifold& X, const LatticeVector& w) {
    if (X.sphericalClassPairings.empty())
        throw hypothesis_error("no spherical classes declared: flatness is indeterminate");
    for (const auto& p : X.sphericalClassPairings) {
        if (p.size() != w.size()) throw input_error("w length does not match spherical pairings");
        long long pair = 0;
        for (size_t i = 0; i < p.size(); ++i) pair += p[i] * w[i];
        if (pair % 2 != 0) return true;
    }
    return false;
}

namespace {

// Characteristic vector of the odd standard form p<1> + q<-1> with a given
// square: all-odd coordinates, the excess carried by up to four leading
// entries via the four-odd-squares decomposition.
LatticeVector odd_characteristic_vector(int p, int q, long long targetSquare) {
    LatticeVector v(p + q, 1);
    // v = (a1..a4, 1...,1 | 1,...,1) has square sum(ai^2) + (p - 4) - q.
    const long long need = targetSquare - (p - 4) + q;  // = sum of four odd squares
    if (p >= 4) {
        auto sq = four_odd_squares(need);
        if (!sq) throw hypothesis_error("no characteristic vector of square " +
                                        std::to_string(targetSquare) + " in (" +
                                        std::to_string(p) + "," + std::to_string(q) + ")");
        for (int i = 0; i < 4; ++i) v[i] = (*sq)[i];
        return v;
    }
    if (p == 3) {
        // (3,3,1 | 1,...): square 19 - q.
        if (targetSquare != 19 - q)
            throw hypothesis_error("unsupported characteristic square for b2plus = 3");
        v[0] = 3;
        v[1] = 3;
        return v;
    }
    if (p == 1) {
        if (targetSquare != 9 - q)
            throw hypothesis_error("unsupported characteristic square for b2plus = 1");
        v[0] = 3;
        return v;
    }
    throw hypothesis_error("no characteristic vector construction for b2plus = " +
                           std::to_string(p));
}

std::string elliptic_name(int n, int p, int q) {
    std::ostringstream os;
    os << "E(" << n << ")";
    if (!(p == 1 && q == 1)) os << "_" << p << "," << q;
    return os.str();
}

}  // namespace

ManifoldRecord elliptic_surface(int n, int p, int q) {
    if (n < 2) throw input_error("elliptic family needs n >= 2");
    if (p < 1 || q < 1 || std::gcd(p, q) != 1)
        throw input_error("multiplicities must be coprime positive integers");
    ManifoldRecord rec;
    FourManifold X;
    X.name = elliptic_name(n, p, q);
    X.b1 = 0;
    X.b2plus = 2 * n - 1;
    X.b2minus = 10 * n - 1;
    // K = (npq - p - q) f_{pq}; the form is even exactly when that multiple
    // is even (log transforms with p+q odd de-spin even n).
    X.oddForm = ((static_cast<long long>(n) * p * q - p - q) % 2 != 0);
    X.spin = !X.oddForm;
    X.simplyConnected = true;

    StandardFormDescriptor d;
    const auto cn = characteristic_numbers(X);
    if (X.oddForm) {
        d.parity = FormParity::Odd;
        d.nPlus = X.b2plus;
        d.nMinus = X.b2minus;
    } else {
        d.parity = FormParity::Even;
        d.e8Count = static_cast<int>(cn.sigma / 8);
        d.hCount = static_cast<int>((cn.b2 - std::llabs(cn.sigma)) / 2);
    }
    X.gram = build_standard_lattice(d);

    // Fiber-class direction: primitive and isotropic; characteristic exactly
    // in the odd-parity case, where it is an odd multiple of the canonical
    // class.
    LatticeVector f(X.gram->rank, 0);
    if (X.oddForm) {
        f = odd_characteristic_vector(X.b2plus, X.b2minus, 0);
    } else {
        f[8 * std::abs(d.e8Count)] = 1;  // first hyperbolic block, isotropic
    }
    rec.X = make_manifold(std::move(X));
    rec.basicClasses.push_back(SWDatum{f, std::nullopt, std::nullopt});
    rec.family = "elliptic";
    {
        std::ostringstream os;
        os << "n=" << n << ",p=" << p << ",q=" << q;
        rec.familyParams = os.str();
    }
    return rec;
}

ManifoldRecord general_type_surface(long long chi, long long sigma, bool evenForm) {
    if ((chi + sigma) % 2 != 0) throw parity_error("chi + sigma must be even");
    const long long b2 = chi - 2;
    const long long p = (b2 + sigma) / 2;
    const long long q = (b2 - sigma) / 2;
    if (p < 1 || q < 0) throw input_error("no simply connected surface with these numbers");
    if ((chi + sigma) % 4 != 0)
        throw hypothesis_error("chi + sigma = 2 mod 4: no characteristic class of square "
                               "2 chi + 3 sigma (b2plus must be odd)");
    if (p >= 2 * q + 1)
        throw validation_error("b2plus < 2 b2minus + 1 fails (Bogomolov-Miyaoka-Yau, "
                               "equality forces a ball quotient)");
    const long long Ksq = 2 * chi + 3 * sigma;

    ManifoldRecord rec;
    FourManifold X;
    {
        std::ostringstream os;
        os << "GT(chi=" << chi << ",sigma=" << sigma << ")";
        X.name = os.str();
    }
    X.b1 = 0;
    X.b2plus = static_cast<int>(p);
    X.b2minus = static_cast<int>(q);
    X.simplyConnected = true;
    X.oddForm = !evenForm;
    X.spin = evenForm;

    LatticeVector K;
    if (evenForm) {
        if (sigma % 8 != 0) throw hypothesis_error("even form needs sigma = 0 mod 8");
        StandardFormDescriptor d;
        d.parity = FormParity::Even;
        d.e8Count = static_cast<int>(sigma / 8);
        d.hCount = static_cast<int>((b2 - std::llabs(sigma)) / 2);
        if (d.hCount < 1) throw hypothesis_error("definite even forms are not supported here");
        X.gram = build_standard_lattice(d);
        // K = 2v with v = (a, 1) in the first hyperbolic block: K.K = 8a.
        if (Ksq % 8 != 0) throw hypothesis_error("even form needs K.K = 0 mod 8");
        K.assign(X.gram->rank, 0);
        K[8 * std::abs(d.e8Count)] = 2 * (Ksq / 8);
        K[8 * std::abs(d.e8Count) + 1] = 2;
    } else {
        StandardFormDescriptor d;
        d.parity = FormParity::Odd;
        d.nPlus = static_cast<int>(p);
        d.nMinus = static_cast<int>(q);
        X.gram = build_standard_lattice(d);
        K = odd_characteristic_vector(static_cast<int>(p), static_cast<int>(q), Ksq);
    }
    rec.X = make_manifold(std::move(X));
    rec.basicClasses.push_back(SWDatum{K, std::nullopt, std::nullopt});
    rec.basicClasses.push_back(SWDatum{vscale(-1, K), std::nullopt, std::nullopt});
    rec.family = "general-type";
    {
        std::ostringstream os;
        os << "chi=" << chi << ",sigma=" << sigma << ",K2=" << Ksq;
        rec.familyParams = os.str();
    }
    return rec;
}

ManifoldRecord blowup_record(const ManifoldRecord& parent) {
    const auto& L = require_gram(parent.X, "blowup");
    ManifoldRecord rec;
    FourManifold X;
    X.name = parent.X.name + "-blowup";
    X.b1 = parent.X.b1;
    X.b2plus = parent.X.b2plus;
    X.b2minus = parent.X.b2minus + 1;
    X.oddForm = true;  // the new <-1> summand makes the form odd
    X.spin = false;
    X.simplyConnected = parent.X.simplyConnected;

    const int n = L.rank;
    GramMatrix g(n + 1, std::vector<long long>(n + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = L.gram[i][j];
    g[n][n] = -1;
    X.gram = make_lattice(std::move(g));

    for (const auto& sp : parent.X.sphericalClassPairings) {
        LatticeVector ext = sp;
        ext.push_back(0);
        X.sphericalClassPairings.push_back(std::move(ext));
    }
    // The exceptional sphere pairs -1 with its own dual basis class.
    LatticeVector exc(n + 1, 0);
    exc[n] = -1;
    X.sphericalClassPairings.push_back(std::move(exc));

    rec.X = make_manifold(std::move(X));
    for (const auto& bc : parent.basicClasses) {
        for (long long sgn : {+1LL, -1LL}) {
            LatticeVector K = bc.basicClass;
            K.push_back(sgn);
            rec.basicClasses.push_back(SWDatum{std::move(K), bc.swValue,
                                               std::string("external-blowup-formula")});
        }
    }
    rec.family = "blowup";
    rec.familyParams = "parent=" + parent.X.name;

    // Closure: blow-ups of abundant manifolds are abundant.
    if (parent.blowupOfAbundant) {
        rec.blowupOfAbundant = true;
    } else {
        try {
            auto v = abundance_decide(parent, basic_class_generator(parent), std::nullopt);
            rec.blowupOfAbundant = (v.status == AbundanceStatus::ProvenByLemma);
        } catch (const CalcError&) {
            rec.blowupOfAbundant = false;
        }
    }
    return rec;
}

LatticeVector basic_class_generator(const ManifoldRecord& rec) {
    const auto& L = require_gram(rec.X, "basic_class_generator");
    LatticeVector K(L.rank, 0);
    for (const auto& bc : rec.basicClasses) {
        if (static_cast<int>(bc.basicClass.size()) != L.rank)
            throw input_error("basic class length does not equal b2");
        bool zero = true;
        for (long long x : bc.basicClass) zero &= (x == 0);
        if (zero) continue;
        const LatticeVector dir = primitive_part(bc.basicClass);
        bool kzero = true;
        for (long long x : K) kzero &= (x == 0);
        if (kzero) {
            K = dir;
        } else if (K != dir && K != vscale(-1, dir)) {
            throw hypothesis_error("basic classes are not multiples of a single class");
        }
    }
    return K;
}

AbundanceVerdict abundance_decide(const ManifoldRecord& rec, const LatticeVector& K,
                                  std::optional<long long> searchBound, int threads) {
    const auto& X = rec.X;
    const auto& L = require_gram(X, "abundance_decide");
    if (static_cast<int>(K.size()) != L.rank)
        throw input_error("K length does not equal b2");

    AbundanceVerdict v;
    if (rec.blowupOfAbundant) {
        v.status = AbundanceStatus::ProvenByLemma;
        v.lemma = LemmaTag::BlowupClosure;
        return v;
    }

    const auto cn = characteristic_numbers(X);
    bool kzero = true;
    for (long long x : K) kzero &= (x == 0);
    if (X.oddForm && !kzero && !is_characteristic(L, K))
        throw hypothesis_error("K must be characteristic in an odd form");

    if (X.spin && X.simplyConnected) {
        if (cn.sigma % 16 != 0)
            throw validation_error("spin simply connected manifold violates Rochlin: sigma = " +
                                   std::to_string(cn.sigma));
        if (cn.sigma != 0) {
            const long long k = cn.sigma / 16;
            const long long l = (cn.b2 - std::llabs(cn.sigma)) / 2;
            if (l < 2 * std::llabs(k) + 1)
                throw validation_error("spin form 2kE8 + lH violates l >= 2|k|+1: k = " +
                                       std::to_string(k) + ", l = " + std::to_string(l));
        }
    }

    v = lemma_verdict_hyperbolic_orthogonal(L, K);
    if (v.status == AbundanceStatus::ProvenByLemma) {
        if (v.lemma == LemmaTag::A2 && X.spin && X.simplyConnected)
            v.lemma = LemmaTag::CorollaryA3;
        return v;
    }

    if (searchBound) {
        auto cert = search_hyperbolic_pair(L, K, *searchBound, threads);
        v.searchBound = *searchBound;
        if (cert) {
            v.status = AbundanceStatus::CertifiedBySearch;
            v.certificate = std::move(cert);
        } else {
            v.status = AbundanceStatus::RefutedAtBound;
        }
        return v;
    }
    v.status = AbundanceStatus::Unknown;
    return v;
}

}  // namespace fourman
