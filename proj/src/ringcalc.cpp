#include "fourman/ringcalc.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "fourman/error.hpp"

namespace fourman {

namespace {

int pc(unsigned m) { return std::popcount(m); }

// Sign of merging the word B into the word A (both strictly increasing);
// counts the generators of A each generator of B has to cross.
int merge_sign(unsigned a, unsigned b) {
    int crossings = 0;
    for (unsigned rest = b; rest;) {
        int bit = std::countr_zero(rest);
        rest &= rest - 1;
        crossings += pc(a >> (bit + 1));
    }
    return (crossings & 1) ? -1 : 1;
}

Rational pair_with_h2(const CohomologyModel& m, int i, int j, int k) {
    const LatticeVector* g = m.cup(i, j);
    if (!g) return Rational(0);
    Int acc = 0;
    for (int r = 0; r < m.h2rank; ++r) acc += make_int(m.Q.gram[r][k]) * make_int((*g)[r]);
    return Rational(acc);
}

struct XProd {
    bool zero = true;
    int sign = 1;
    Rational factor = Rational(1);
    XMonomial x;
};

XProd mul_x(const CohomologyModel& m, const XMonomial& a, const XMonomial& b) {
    XProd out;
    if (a.special != XMonomial::None || b.special != XMonomial::None) {
        // Degree-4 symbols absorb only the empty monomial.
        if (a.special != XMonomial::None && b.degree() == 0) {
            out.zero = false;
            out.x = a;
        } else if (b.special != XMonomial::None && a.degree() == 0) {
            out.zero = false;
            out.x = b;
        }
        return out;
    }
    if (a.gmask & b.gmask) return out;
    unsigned merged = a.gmask | b.gmask;
    int sign = merge_sign(a.gmask, b.gmask);
    if (a.h2 >= 0 && b.h2 >= 0) {
        if (merged) return out;  // degree > 4
        out.zero = false;
        out.sign = sign;
        out.factor = Rational(make_int(m.Q.gram[a.h2][b.h2]));
        out.x.special = XMonomial::Point;
        return out;
    }
    int h2 = a.h2 >= 0 ? a.h2 : b.h2;
    int deg = pc(merged) + (h2 >= 0 ? 2 : 0);
    if (deg > 4) return out;
    if (deg == 4) {
        int idx[4], n = 0;
        for (unsigned rest = merged; rest;) {
            idx[n++] = std::countr_zero(rest);
            rest &= rest - 1;
        }
        out.zero = false;
        out.sign = sign;
        out.x.special = XMonomial::Point;
        out.factor = (h2 >= 0) ? pair_with_h2(m, idx[0], idx[1], h2)
                               : m.quad(idx[0], idx[1], idx[2], idx[3]);
        return out;
    }
    out.zero = false;
    out.sign = sign;
    out.x.gmask = merged;
    out.x.h2 = h2;
    return out;
}

void accumulate(BigradedClass& acc, const RingTerm& t, const Rational& c) {
    if (c == 0) return;
    auto it = acc.terms.find(t);
    if (it == acc.terms.end()) {
        acc.terms.emplace(t, c);
    } else {
        it->second += c;
        if (it->second == 0) acc.terms.erase(it);
    }
}

BigradedClass embed_h2_half(const LatticeVector& v) {
    BigradedClass out = bc_h2(v);
    return scale(Rational(1, 2), out);
}

LatticeVector vec_sub(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

LatticeVector vec_comb(long long ca, const LatticeVector& a, long long cb,
                       const LatticeVector& b) {
    LatticeVector out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
    return out;
}

Int q_value(const GramMatrix& Q, const LatticeVector& u, const LatticeVector& v) {
    Int acc = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        Int row = 0;
        for (size_t j = 0; j < v.size(); ++j) row += make_int(Q[i][j]) * make_int(v[j]);
        acc += make_int(u[i]) * row;
    }
    return acc;
}

void require_h2_size(const CohomologyModel& m, const LatticeVector& v, const char* what) {
    if (static_cast<int>(v.size()) != m.h2rank)
        throw input_error(std::string(what) + " has wrong length for this model");
}

}  // namespace

int XMonomial::degree() const {
    if (special != None) return 4;
    return pc(gmask) + (h2 >= 0 ? 2 : 0);
}

const LatticeVector* CohomologyModel::cup(int i, int j) const {
    auto it = gij.find({i, j});
    return it == gij.end() ? nullptr : &it->second;
}

Rational CohomologyModel::quad(int a, int b, int c, int d) const {
    const LatticeVector* u = cup(a, b);
    const LatticeVector* v = cup(c, d);
    if (!u || !v) return Rational(0);
    return Rational(q_value(Q.gram, *u, *v));
}

CohomologyModel make_model(int b1, GramMatrix Q,
                           const std::vector<std::pair<std::pair<int, int>, LatticeVector>>& cups,
                           int cap) {
    if (b1 < 0 || b1 > 20) throw input_error("b1 out of supported range [0,20]");
    if (cap < 1) throw input_error("truncation cap must be positive");
    CohomologyModel m;
    m.b1 = b1;
    m.Q = make_lattice(std::move(Q));
    m.h2rank = m.Q.rank;
    m.cap = cap;
    Signature sig = signature_of(m.Q);
    m.sigma = sig.plus - sig.minus;
    m.chi = 2 - 2LL * b1 + m.h2rank;
    for (const auto& [ij, row] : cups) {
        auto [i, j] = ij;
        if (i < 0 || j < 0 || i >= b1 || j >= b1 || i >= j)
            throw input_error("cup table entries need 0 <= i < j < b1");
        if (static_cast<int>(row.size()) != m.h2rank)
            throw input_error("cup table row has wrong length");
        if (!m.gij.emplace(std::make_pair(i, j), row).second)
            throw input_error("duplicate cup table entry");
    }
    // gamma_a gamma_b gamma_c gamma_d must be alternating in the four slots.
    for (int a = 0; a < b1; ++a)
        for (int b = a + 1; b < b1; ++b)
            for (int c = b + 1; c < b1; ++c)
                for (int d = c + 1; d < b1; ++d) {
                    Rational v1 = m.quad(a, b, c, d);
                    Rational v2 = m.quad(a, c, b, d);
                    Rational v3 = m.quad(a, d, b, c);
                    if (v2 != -v1 || v3 != v1)
                        throw model_error("cup table violates quadruple alternation");
                }
    return m;
}

BigradedClass bc_scalar(const Rational& r) {
    BigradedClass out;
    if (r != 0) out.terms.emplace(RingTerm{}, r);
    return out;
}

BigradedClass bc_unit() { return bc_scalar(Rational(1)); }

BigradedClass bc_mu(int pow) {
    if (pow < 0) throw input_error("mu power must be nonnegative");
    BigradedClass out;
    RingTerm t;
    t.muPow = pow;
    out.terms.emplace(t, Rational(1));
    return out;
}

BigradedClass bc_gammaJ(int i) {
    BigradedClass out;
    RingTerm t;
    t.jmask = 1u << i;
    out.terms.emplace(t, Rational(1));
    return out;
}

BigradedClass bc_gammaX(int i) {
    BigradedClass out;
    RingTerm t;
    t.x.gmask = 1u << i;
    out.terms.emplace(t, Rational(1));
    return out;
}

BigradedClass bc_h2(const LatticeVector& coeffs) {
    BigradedClass out;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        RingTerm t;
        t.x.h2 = static_cast<int>(k);
        out.terms.emplace(t, Rational(make_int(coeffs[k])));
    }
    return out;
}

BigradedClass bc_p1x() {
    BigradedClass out;
    RingTerm t;
    t.x.special = XMonomial::P1X;
    out.terms.emplace(t, Rational(1));
    return out;
}

BigradedClass bc_p1lambda() {
    BigradedClass out;
    RingTerm t;
    t.x.special = XMonomial::P1Lambda;
    out.terms.emplace(t, Rational(1));
    return out;
}

BigradedClass bc_point(const Rational& value) {
    BigradedClass out;
    if (value == 0) return out;
    RingTerm t;
    t.x.special = XMonomial::Point;
    out.terms.emplace(t, value);
    return out;
}

BigradedClass add(const CohomologyModel&, const BigradedClass& a, const BigradedClass& b) {
    BigradedClass out = a;
    for (const auto& [t, c] : b.terms) accumulate(out, t, c);
    return out;
}

BigradedClass sub(const CohomologyModel&, const BigradedClass& a, const BigradedClass& b) {
    BigradedClass out = a;
    for (const auto& [t, c] : b.terms) accumulate(out, t, -c);
    return out;
}

BigradedClass scale(const Rational& c, const BigradedClass& a) {
    BigradedClass out;
    if (c == 0) return out;
    for (const auto& [t, v] : a.terms) out.terms.emplace(t, c * v);
    return out;
}

BigradedClass mul(const CohomologyModel& m, const BigradedClass& a, const BigradedClass& b) {
    BigradedClass out;
    for (const auto& [t1, c1] : a.terms) {
        int xdeg1 = t1.x.degree() & 1;
        for (const auto& [t2, c2] : b.terms) {
            if (t1.jmask & t2.jmask) continue;
            unsigned jm = t1.jmask | t2.jmask;
            int mu = t1.muPow + t2.muPow;
            if (2 * mu + pc(jm) > 2 * m.cap) continue;
            XProd xp = mul_x(m, t1.x, t2.x);
            if (xp.zero || xp.factor == 0) continue;
            int sign = merge_sign(t1.jmask, t2.jmask) * xp.sign;
            // Koszul: the base part of the first factor crosses the
            // parameter part of the second.
            if (xdeg1 && (pc(t2.jmask) & 1)) sign = -sign;
            Rational coeff = c1 * c2 * xp.factor;
            if (sign < 0) coeff = -coeff;
            RingTerm t;
            t.muPow = mu;
            t.jmask = jm;
            t.x = xp.x;
            accumulate(out, t, coeff);
        }
    }
    return out;
}

BigradedClass exp_class(const CohomologyModel& m, const BigradedClass& a) {
    RingTerm unitKey;
    if (a.terms.count(unitKey))
        throw input_error("exponential requires vanishing scalar part");
    BigradedClass acc = bc_unit();
    BigradedClass pw = bc_unit();
    int limit = 4 * m.cap + 2 * m.b1 + 16;
    for (int k = 1; k <= limit; ++k) {
        pw = scale(Rational(1, k), mul(m, pw, a));
        if (pw.is_zero()) return acc;
        acc = add(m, acc, pw);
    }
    throw model_error("exponential failed to terminate");
}

BigradedClass slant_fundamental(const CohomologyModel& m, const BigradedClass& a) {
    BigradedClass out;
    Rational p1xVal(make_int(3LL * m.sigma));
    Rational p1lVal(make_int(2LL * m.chi + 3LL * m.sigma));
    for (const auto& [t, c] : a.terms) {
        Rational v;
        switch (t.x.special) {
            case XMonomial::Point: v = c; break;
            case XMonomial::P1X: v = c * p1xVal; break;
            case XMonomial::P1Lambda: v = c * p1lVal; break;
            case XMonomial::None: continue;
        }
        RingTerm flat;
        flat.muPow = t.muPow;
        flat.jmask = t.jmask;
        accumulate(out, flat, v);
    }
    return out;
}

BigradedClass ch_index_family(const CohomologyModel& m, const BigradedClass& chE,
                              const LatticeVector& c1Wplus) {
    require_h2_size(m, c1Wplus, "c1(W+)");
    BigradedClass total = mul(m, chE, exp_class(m, embed_h2_half(c1Wplus)));
    BigradedClass ahat = sub(m, bc_unit(), scale(Rational(1, 24), bc_p1x()));
    return slant_fundamental(m, mul(m, total, ahat));
}

BigradedClass ch_normal_pipeline(const CohomologyModel& m, const LatticeVector& c1s,
                                 const LatticeVector& c1t, const Rational& rXi) {
    require_h2_size(m, c1s, "c1(s)");
    require_h2_size(m, c1t, "c1(t)");
    BigradedClass eL = exp_class(m, bc_h2(vec_sub(c1t, c1s)));
    BigradedClass chDelta = bc_unit();
    BigradedClass chDelta2 = bc_unit();
    for (int i = 0; i < m.b1; ++i) {
        BigradedClass cross = mul(m, bc_gammaJ(i), bc_gammaX(i));
        chDelta = mul(m, chDelta, add(m, bc_unit(), cross));
        chDelta2 = mul(m, chDelta2, add(m, bc_unit(), scale(Rational(2), cross)));
    }
    BigradedClass ec1s = bc_h2(c1s);
    BigradedClass chW = sub(m, bc_scalar(Rational(2)), ec1s);
    chW = add(m, chW, scale(Rational(1, 4), add(m, bc_p1lambda(), mul(m, ec1s, ec1s))));
    BigradedClass chE2 = mul(m, mul(m, exp_class(m, bc_mu(1)), chDelta), eL);
    BigradedClass chE1 =
        mul(m, mul(m, mul(m, exp_class(m, scale(Rational(2), bc_mu(1))), chDelta2), eL), chW);
    BigradedClass ind2 = ch_index_family(m, chE2, c1s);
    BigradedClass ind1 = ch_index_family(m, chE1, c1s);
    return add(m, bc_scalar(rXi), sub(m, ind2, ind1));
}

std::pair<long long, long long> ns_indices(const CohomologyModel& m, const LatticeVector& c1s,
                                           const LatticeVector& c1t) {
    require_h2_size(m, c1s, "c1(s)");
    require_h2_size(m, c1t, "c1(t)");
    if ((m.chi + m.sigma) % 2 != 0)
        throw parity_error("chi + sigma must be even for the reduction indices");
    LatticeVector L = vec_sub(c1t, c1s);
    Int nsp = -q_value(m.Q.gram, L, L) - make_int((m.chi + m.sigma) / 2);
    LatticeVector M = vec_comb(2, c1t, -1, c1s);
    Int nsdNum = q_value(m.Q.gram, M, M) - make_int(m.sigma);
    if (nsdNum % 8 != 0)
        throw validation_error("2 c1(t) - c1(s) fails the square congruence mod 8");
    Int nsd = nsdNum / 8;
    return {to_ll(nsp), to_ll(nsd)};
}

BigradedClass ch_normal_direct(const CohomologyModel& m, const LatticeVector& c1s,
                               const LatticeVector& c1t, const Rational& rXi) {
    auto [nsp, nsd] = ns_indices(m, c1s, c1t);
    BigradedClass eMu = exp_class(m, bc_mu(1));
    BigradedClass e2Mu = exp_class(m, scale(Rational(2), bc_mu(1)));
    BigradedClass out = bc_scalar(rXi);
    out = add(m, out, scale(Rational(make_int(nsd)), eMu));
    out = add(m, out, scale(Rational(make_int(nsp)), e2Mu));
    LatticeVector L = vec_sub(c1t, c1s);
    LatticeVector M = vec_comb(2, c1t, -1, c1s);
    for (int i = 0; i < m.b1; ++i)
        for (int j = i + 1; j < m.b1; ++j) {
            const LatticeVector* g = m.cup(i, j);
            if (!g) continue;
            Rational A(q_value(m.Q.gram, *g, L));
            Rational B(q_value(m.Q.gram, *g, M));
            BigradedClass pairCls;
            RingTerm t;
            t.jmask = (1u << i) | (1u << j);
            pairCls.terms.emplace(t, Rational(1));
            BigradedClass corr = add(m, scale(-Rational(8) * A, e2Mu),
                                     scale(Rational(1, 2) * B, eMu));
            out = add(m, out, mul(m, corr, pairCls));
        }
    for (int i = 0; i < m.b1; ++i)
        for (int j = i + 1; j < m.b1; ++j)
            for (int k = j + 1; k < m.b1; ++k)
                for (int l = k + 1; l < m.b1; ++l) {
                    Rational q = m.quad(i, j, k, l);
                    if (q == 0) continue;
                    BigradedClass quadCls;
                    RingTerm t;
                    t.jmask = (1u << i) | (1u << j) | (1u << k) | (1u << l);
                    quadCls.terms.emplace(t, Rational(1));
                    BigradedClass corr = sub(m, eMu, scale(Rational(32), e2Mu));
                    out = add(m, out, mul(m, scale(q, corr), quadCls));
                }
    return out;
}

BigradedClass complex_degree_part(const BigradedClass& a, int k) {
    BigradedClass out;
    for (const auto& [t, c] : a.terms) {
        if (t.x.degree() != 0) throw input_error("degree split needs a base-free class");
        int deg = 2 * t.muPow + pc(t.jmask);
        if (deg == 2 * k) out.terms.emplace(t, c);
    }
    return out;
}

namespace {

// Power sums p_k and elementary classes c_k of a base-free even class, per
// the Newton recurrence p_k = sum_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k.
std::vector<BigradedClass> character_components(const CohomologyModel& m,
                                                const BigradedClass& a,
                                                const Rational& rank, const char* what) {
    for (const auto& [t, c] : a.terms) {
        if (t.x.degree() != 0) throw input_error(std::string(what) + " must be base-free");
        if ((2 * t.muPow + pc(t.jmask)) & 1)
            throw input_error(std::string(what) + " has an odd-degree component");
    }
    BigradedClass deg0 = complex_degree_part(a, 0);
    if (deg0 != bc_scalar(rank))
        throw input_error(std::string(what) + " degree-zero part disagrees with the rank");
    std::vector<BigradedClass> parts(static_cast<size_t>(m.cap) + 1);
    for (int k = 0; k <= m.cap; ++k) parts[static_cast<size_t>(k)] = complex_degree_part(a, k);
    return parts;
}

}  // namespace

BigradedClass chern_from_character(const CohomologyModel& m, const BigradedClass& ch,
                                   const Rational& rank) {
    auto chParts = character_components(m, ch, rank, "Chern character");
    std::vector<BigradedClass> p(static_cast<size_t>(m.cap) + 1);
    for (int k = 1; k <= m.cap; ++k)
        p[static_cast<size_t>(k)] = scale(Rational(factorial(k)), chParts[static_cast<size_t>(k)]);
    std::vector<BigradedClass> c(static_cast<size_t>(m.cap) + 1);
    c[0] = bc_unit();
    BigradedClass total = bc_unit();
    for (int k = 1; k <= m.cap; ++k) {
        BigradedClass acc = p[static_cast<size_t>(k)];
        for (int i = 1; i < k; ++i) {
            BigradedClass term = mul(m, c[static_cast<size_t>(i)], p[static_cast<size_t>(k - i)]);
            acc = (i & 1) ? sub(m, acc, term) : add(m, acc, term);
        }
        Rational f(1, k);
        if (!(k & 1)) f = -f;
        c[static_cast<size_t>(k)] = scale(f, acc);
        total = add(m, total, c[static_cast<size_t>(k)]);
    }
    return total;
}

BigradedClass character_from_chern(const CohomologyModel& m, const BigradedClass& c,
                                   const Rational& rank) {
    auto cParts = character_components(m, c, Rational(1), "total Chern class");
    std::vector<BigradedClass> p(static_cast<size_t>(m.cap) + 1);
    BigradedClass total = bc_scalar(rank);
    for (int k = 1; k <= m.cap; ++k) {
        BigradedClass acc = scale(Rational(k), cParts[static_cast<size_t>(k)]);
        if (!(k & 1)) acc = scale(Rational(-1), acc);
        for (int i = 1; i < k; ++i) {
            BigradedClass term =
                mul(m, cParts[static_cast<size_t>(i)], p[static_cast<size_t>(k - i)]);
            acc = (i & 1) ? add(m, acc, term) : sub(m, acc, term);
        }
        p[static_cast<size_t>(k)] = acc;
        total = add(m, total, scale(Rational(1) / factorial(k), acc));
    }
    return total;
}

BigradedClass c_normal_closed_form(const CohomologyModel& m, long long nsPrime,
                                   long long nsDoublePrime) {
    if (!m.gij.empty())
        for (const auto& [ij, row] : m.gij)
            for (long long v : row)
                if (v != 0)
                    throw hypothesis_error("closed form requires a trivial cup table");
    BigradedClass f1, f2;
    for (int k = 0; k <= m.cap; ++k) {
        Rational b1k = binomial_general(nsPrime, k) * pow2(k);
        Rational b2k = binomial_general(nsDoublePrime, k);
        if (b1k != 0) {
            RingTerm t;
            t.muPow = k;
            f1.terms.emplace(t, b1k);
        }
        if (b2k != 0) {
            RingTerm t;
            t.muPow = k;
            f2.terms.emplace(t, b2k);
        }
    }
    return mul(m, f1, f2);
}

UniversalClasses universal_class_constructors(const CohomologyModel& m) {
    UniversalClasses u;
    for (int i = 0; i < m.b1; ++i)
        u.c1Delta = add(m, u.c1Delta, mul(m, bc_gammaJ(i), bc_gammaX(i)));
    u.c1L = add(m, bc_mu(1), u.c1Delta);
    return u;
}

BigradedClass slant_point_class(const CohomologyModel&, const BigradedClass& a) {
    BigradedClass out;
    for (const auto& [t, c] : a.terms) {
        if (t.x.degree() != 0) continue;
        RingTerm flat;
        flat.muPow = t.muPow;
        flat.jmask = t.jmask;
        accumulate(out, flat, c);
    }
    return out;
}

BigradedClass slant_gamma(const CohomologyModel&, const BigradedClass& a, int i) {
    BigradedClass out;
    XMonomial want;
    want.gmask = 1u << i;
    for (const auto& [t, c] : a.terms) {
        if (!(t.x == want)) continue;
        RingTerm flat;
        flat.muPow = t.muPow;
        flat.jmask = t.jmask;
        accumulate(out, flat, c);
    }
    return out;
}

BigradedClass gamma_free_part(const BigradedClass& a) {
    BigradedClass out;
    for (const auto& [t, c] : a.terms)
        if (t.jmask == 0) out.terms.emplace(t, c);
    return out;
}

BigradedClass gamma_bearing_part(const BigradedClass& a) {
    BigradedClass out;
    for (const auto& [t, c] : a.terms)
        if (t.jmask != 0) out.terms.emplace(t, c);
    return out;
}

std::vector<std::pair<std::string, std::string>> serialize_class(const BigradedClass& a) {
    std::vector<std::pair<int, std::pair<std::string, std::string>>> rows;
    for (const auto& [t, c] : a.terms) {
        std::vector<std::string> parts;
        for (int i = 0; i < 20; ++i)
            if (t.jmask & (1u << i)) parts.push_back("gJ" + std::to_string(i + 1));
        if (t.muPow == 1) parts.push_back("mu");
        else if (t.muPow > 1) parts.push_back("mu^" + std::to_string(t.muPow));
        for (int i = 0; i < 20; ++i)
            if (t.x.gmask & (1u << i)) parts.push_back("gX" + std::to_string(i + 1));
        if (t.x.h2 >= 0) parts.push_back("e" + std::to_string(t.x.h2 + 1));
        switch (t.x.special) {
            case XMonomial::P1X: parts.push_back("p1X"); break;
            case XMonomial::P1Lambda: parts.push_back("p1L"); break;
            case XMonomial::Point: parts.push_back("pt"); break;
            case XMonomial::None: break;
        }
        std::string mono;
        if (parts.empty()) {
            mono = "1";
        } else {
            std::ostringstream os;
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) os << '*';
                os << parts[i];
            }
            mono = os.str();
        }
        int deg = 2 * t.muPow + pc(t.jmask) + t.x.degree();
        rows.push_back({deg, {mono, rat_str(c)}});
    }
    std::sort(rows.begin(), rows.end());
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.push_back(std::move(r.second));
    return out;
}

}  // namespace fourman
