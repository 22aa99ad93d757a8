#include "fourman/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <thread>
#include <utility>

namespace fourman {

IntegerLattice make_lattice(GramMatrix gram) {
    IntegerLattice L;
    L.rank = static_cast<int>(gram.size());
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != L.rank)
            throw input_error("gram matrix is not square");
    for (int i = 0; i < L.rank; ++i)
        for (int j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i]) throw input_error("gram matrix is not symmetric");
    L.gram = std::move(gram);
    return L;
}

Signature signature_of(const IntegerLattice& L) {
    const int n = L.rank;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rational(make_int(L.gram[i][j]));

    Signature sig;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int swp = -1, mix = -1;
            for (int j = k + 1; j < n; ++j) {
                if (m[k][j] != 0) {
                    if (m[j][j] != 0 && swp < 0) swp = j;
                    if (mix < 0) mix = j;
                }
            }
            if (swp >= 0) {
                std::swap(m[swp], m[k]);
                for (int i = 0; i < n; ++i) std::swap(m[i][swp], m[i][k]);
            } else if (mix >= 0) {
                // m[k][k] = m[mix][mix] = 0, m[k][mix] != 0: adding row+col mix
                // gives diagonal entry 2*m[k][mix].
                for (int j = 0; j < n; ++j) m[k][j] += m[mix][j];
                for (int i = 0; i < n; ++i) m[i][k] += m[i][mix];
            } else {
                ++sig.zero;  // radical direction
                continue;
            }
        }
        const Rational piv = m[k][k];
        if (piv > 0)
            ++sig.plus;
        else
            ++sig.minus;
        for (int i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const Rational f = m[i][k] / piv;
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            for (int j = 0; j < n; ++j) m[j][i] = m[i][j];
        }
    }
    return sig;
}

Int determinant(const IntegerLattice& L) {
    const int n = L.rank;
    if (n == 0) return 1;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = make_int(L.gram[i][j]);

    // Bareiss fraction-free elimination; divisions are exact.
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

bool is_even_form(const IntegerLattice& L) {
    for (int i = 0; i < L.rank; ++i)
        if (L.gram[i][i] % 2 != 0) return false;
    return true;
}

bool is_unimodular(const IntegerLattice& L) {
    Int d = determinant(L);
    return d == 1 || d == -1;
}

GramMatrix e8_gram() {
    // Dynkin presentation: chain 0-1-2-3-4-5-6 with node 7 attached to node 2
    // (legs of lengths 2, 4, 1 from the branch point).
    GramMatrix g(8, std::vector<long long>(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    const int edges[7][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}};
    for (const auto& e : edges) {
        g[e[0]][e[1]] = -1;
        g[e[1]][e[0]] = -1;
    }
    return g;
}

GramMatrix hyperbolic_gram() { return {{0, 1}, {1, 0}}; }

IntegerLattice build_standard_lattice(const StandardFormDescriptor& d) {
    std::vector<GramMatrix> blocks;
    if (d.parity == FormParity::Odd) {
        if (d.nPlus < 0 || d.nMinus < 0) throw input_error("negative diagonal block count");
        for (int i = 0; i < d.nPlus; ++i) blocks.push_back({{1}});
        for (int i = 0; i < d.nMinus; ++i) blocks.push_back({{-1}});
    } else {
        if (d.hCount < 0) throw input_error("negative hyperbolic block count");
        GramMatrix e8 = e8_gram();
        if (d.e8Count < 0)
            for (auto& row : e8)
                for (auto& x : row) x = -x;
        for (int i = 0; i < std::abs(d.e8Count); ++i) blocks.push_back(e8);
        for (int i = 0; i < d.hCount; ++i) blocks.push_back(hyperbolic_gram());
    }
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    GramMatrix g(n, std::vector<long long>(n, 0));
    int off = 0;
    for (const auto& b : blocks) {
        const int m = static_cast<int>(b.size());
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g[off + i][off + j] = b[i][j];
        off += m;
    }
    return make_lattice(std::move(g));
}

StandardFormDescriptor classify_indefinite_unimodular(const IntegerLattice& L) {
    Signature s = signature_of(L);
    if (s.zero > 0) throw hypothesis_error("form is degenerate");
    if (!is_unimodular(L)) throw hypothesis_error("form is not unimodular");
    if (s.plus == 0 || s.minus == 0) throw hypothesis_error("form is definite");
    StandardFormDescriptor d;
    if (is_even_form(L)) {
        d.parity = FormParity::Even;
        const int sigma = s.plus - s.minus;
        if (sigma % 8 != 0) throw hypothesis_error("even form with signature not divisible by 8");
        d.e8Count = sigma / 8;
        d.hCount = (L.rank - std::abs(sigma)) / 2;
    } else {
        d.parity = FormParity::Odd;
        d.nPlus = s.plus;
        d.nMinus = s.minus;
    }
    return d;
}

Int inner_product(const IntegerLattice& L, const LatticeVector& a, const LatticeVector& b) {
    if (static_cast<int>(a.size()) != L.rank || static_cast<int>(b.size()) != L.rank)
        throw input_error("vector length does not match lattice rank");
    Int s = 0;
    for (int i = 0; i < L.rank; ++i) {
        if (a[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < L.rank; ++j)
            if (b[j] != 0) row += make_int(L.gram[i][j]) * make_int(b[j]);
        s += make_int(a[i]) * row;
    }
    return s;
}

bool is_characteristic(const IntegerLattice& L, const LatticeVector& v) {
    if (static_cast<int>(v.size()) != L.rank)
        throw input_error("vector length does not match lattice rank");
    // v.x = x.x mod 2 for all x, equivalently (Gv)_i = G_ii mod 2 on the basis.
    for (int i = 0; i < L.rank; ++i) {
        Int p = 0;
        for (int j = 0; j < L.rank; ++j) p += make_int(L.gram[i][j]) * make_int(v[j]);
        if (((p - make_int(L.gram[i][i])) % 2) != 0) return false;
    }
    return true;
}

LatticeVector primitive_part(const LatticeVector& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, std::abs(x));
    if (g <= 1) return v;
    LatticeVector w = v;
    for (auto& x : w) x /= g;
    return w;
}

VectorReport vector_report(const IntegerLattice& L, const LatticeVector& v) {
    VectorReport r;
    r.square = inner_product(L, v, v);
    long long g = 0;
    for (long long x : v) g = std::gcd(g, std::abs(x));
    r.primitive = (g == 1);
    r.characteristic = is_characteristic(L, v);
    return r;
}

std::optional<std::array<long long, 4>> four_odd_squares(long long k) {
    if (k <= 0 || k % 8 != 4) return std::nullopt;
    // Lexicographically least non-increasing (a1,a2,a3,a4): ascending scan of
    // each position, a4 determined by the remainder.
    for (long long a1 = 1; a1 * a1 <= k; a1 += 2) {
        const long long r1 = k - a1 * a1;
        if (r1 < 3) continue;
        for (long long a2 = 1; a2 <= a1 && a2 * a2 <= r1; a2 += 2) {
            const long long r2 = r1 - a2 * a2;
            if (r2 < 2 || r2 > 2 * a2 * a2) continue;
            if (r2 % 8 != 2) continue;  // two odd squares sum to 2 mod 8
            for (long long a3 = 1; a3 <= a2 && a3 * a3 <= r2; a3 += 2) {
                const long long r3 = r2 - a3 * a3;
                if (r3 < 1 || r3 > a3 * a3) continue;
                const auto a4 = static_cast<long long>(std::llround(std::sqrt(double(r3))));
                for (long long c = std::max(1LL, a4 - 1); c <= a4 + 1; ++c) {
                    if (c * c == r3 && c % 2 == 1 && c <= a3) {
                        // a1 ascending means the largest entry is as small as
                        // possible, so this first hit is the lex-least tuple.
                        return std::array<long long, 4>{a1, a2, a3, c};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool three_squares_obstructed(long long n) {
    if (n < 0) return true;
    while (n % 4 == 0 && n > 0) n /= 4;
    return n % 8 == 7;
}

std::optional<std::array<long long, 3>> three_squares(long long n) {
    if (n < 0) return std::nullopt;
    for (long long x = 0; x * x <= n; ++x) {
        const long long r1 = n - x * x;
        if (r1 > 2 * x * x) continue;  // enforce x >= y >= z
        for (long long y = 0; y <= x && y * y <= r1; ++y) {
            const long long r2 = r1 - y * y;
            if (r2 > y * y) continue;
            const auto z = static_cast<long long>(std::llround(std::sqrt(double(r2))));
            for (long long c = std::max(0LL, z - 1); c <= z + 1; ++c)
                if (c * c == r2 && c <= y) return std::array<long long, 3>{x, y, c};
        }
    }
    return std::nullopt;
}

std::string to_string(AbundanceStatus s) {
    switch (s) {
        case AbundanceStatus::ProvenByLemma: return "proven-by-lemma";
        case AbundanceStatus::CertifiedBySearch: return "certified-by-search";
        case AbundanceStatus::RefutedAtBound: return "refuted-at-bound";
        case AbundanceStatus::Unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(LemmaTag t) {
    switch (t) {
        case LemmaTag::A2: return "A.2";
        case LemmaTag::A4: return "A.4";
        case LemmaTag::A7a: return "A.7a";
        case LemmaTag::A7b: return "A.7b";
        case LemmaTag::CorollaryA3: return "corollary-A.3";
        case LemmaTag::BlowupClosure: return "blowup-closure";
        case LemmaTag::None: return "none";
    }
    return "none";
}

AbundanceVerdict lemma_verdict_hyperbolic_orthogonal(const IntegerLattice& L,
                                                     const LatticeVector& kappa) {
    Signature s = signature_of(L);
    if (s.zero > 0) throw hypothesis_error("lemma verdicts need a nondegenerate form");
    if (!is_unimodular(L)) throw hypothesis_error("lemma verdicts need a unimodular form");
    if (s.plus == 0 || s.minus == 0) throw hypothesis_error("lemma verdicts need an indefinite form");

    const LatticeVector k = primitive_part(kappa);
    const int rank = L.rank;
    const int sigma = s.plus - s.minus;
    const bool even = is_even_form(L);

    AbundanceVerdict v;
    if (even && std::abs(sigma) <= rank - 4) {
        v.status = AbundanceStatus::ProvenByLemma;
        v.lemma = LemmaTag::A2;
        return v;
    }
    if (!even) {
        const bool charac = is_characteristic(L, k);
        if (s.plus >= 5 && s.minus >= 3 && charac) {
            v.status = AbundanceStatus::ProvenByLemma;
            v.lemma = LemmaTag::A4;
            return v;
        }
        if (s.plus == 3 && s.minus >= 5 && charac) {
            v.status = AbundanceStatus::ProvenByLemma;
            v.lemma = LemmaTag::A7a;
            return v;
        }
        if (s.plus == 3 && s.minus >= 2 && s.minus <= 4 && charac) {
            // 2*chi(Q) + 3*sigma(Q) with chi(Q) = 2 + rank(Q), here 19 - b2minus.
            const Int target = make_int(4 + 5LL * s.plus - s.minus);
            if (inner_product(L, k, k) == target) {
                v.status = AbundanceStatus::ProvenByLemma;
                v.lemma = LemmaTag::A7b;
                return v;
            }
        }
    }
    v.status = AbundanceStatus::Unknown;
    v.lemma = LemmaTag::None;
    return v;
}

namespace {

// Bounded enumeration works per connected component of the Gram's support
// graph; the quadratic and linear conditions both split across components.
struct ComponentEntry {
    long long q;   // v.v within the component
    long long d;   // kappa.v within the component
    std::vector<long long> coords;
};

struct Component {
    std::vector<int> idx;
    std::vector<ComponentEntry> entries;
    long long qmin = 0, qmax = 0, dmin = 0, dmax = 0;
};

std::vector<std::vector<int>> gram_components(const IntegerLattice& L) {
    const int n = L.rank;
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i}, members;
        comp[i] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v = 0; v < n; ++v)
                if (v != u && comp[v] < 0 && L.gram[u][v] != 0) {
                    comp[v] = comp[i];
                    stack.push_back(v);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

// Walks all coefficient vectors of one component in lexicographic order
// (each coordinate from -B to B), maintaining q and d incrementally.
template <typename F>
void enumerate_component(const IntegerLattice& L, const std::vector<int>& idx,
                         const LatticeVector& gk, long long B, long long firstLo,
                         long long firstHi, F&& visit) {
    const int m = static_cast<int>(idx.size());
    std::vector<long long> v(m, -B);
    if (m > 0) v[0] = firstLo;
    if (firstLo > firstHi) return;
    auto full_eval = [&](long long& q, long long& d) {
        q = 0;
        d = 0;
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) q += L.gram[idx[a]][idx[b]] * v[a] * v[b];
            d += gk[idx[a]] * v[a];
        }
    };
    long long q, d;
    full_eval(q, d);
    while (true) {
        visit(v, q, d);
        int pos = m - 1;
        while (pos >= 0) {
            const long long hi = (pos == 0) ? firstHi : B;
            if (v[pos] < hi) break;
            --pos;
        }
        if (pos < 0) return;
        // Increment coordinate pos: q gains 2(Gv)_pos + G_pospos.
        long long gv = 0;
        for (int b = 0; b < m; ++b) gv += L.gram[idx[pos]][idx[b]] * v[b];
        q += 2 * gv + L.gram[idx[pos]][idx[pos]];
        d += gk[idx[pos]];
        v[pos] += 1;
        bool reset = false;
        for (int a = pos + 1; a < m; ++a)
            if (v[a] != -B) { reset = true; break; }
        if (reset) {
            for (int a = pos + 1; a < m; ++a) v[a] = -B;
            full_eval(q, d);
        }
    }
}

bool maxnorm_lex_less(const LatticeVector& a, const LatticeVector& b) {
    long long ma = 0, mb = 0;
    for (long long x : a) ma = std::max(ma, std::abs(x));
    for (long long x : b) mb = std::max(mb, std::abs(x));
    if (ma != mb) return ma < mb;
    return a < b;
}

long long maxnorm(const LatticeVector& v) {
    long long m = 0;
    for (long long x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::optional<HyperbolicCertificate> search_hyperbolic_pair(const IntegerLattice& L,
                                                            const LatticeVector& kappa,
                                                            long long bound, int threads) {
    if (static_cast<int>(kappa.size()) != L.rank)
        throw input_error("kappa length does not match lattice rank");
    if (bound < 1) throw input_error("search bound must be positive");
    if (threads < 1) threads = 1;
    const int n = L.rank;
    if (n < 2) return std::nullopt;

    LatticeVector gk(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gk[i] += L.gram[i][j] * kappa[j];

    std::vector<Component> comps;
    for (auto& idx : gram_components(L)) {
        Component c;
        c.idx = std::move(idx);
        comps.push_back(std::move(c));
    }

    // Pass 1: per-component value ranges (no storage).
    for (auto& c : comps) {
        bool first = true;
        enumerate_component(L, c.idx, gk, bound, -bound, bound,
                            [&](const std::vector<long long>&, long long q, long long d) {
                                if (first) {
                                    c.qmin = c.qmax = q;
                                    c.dmin = c.dmax = d;
                                    first = false;
                                } else {
                                    c.qmin = std::min(c.qmin, q);
                                    c.qmax = std::max(c.qmax, q);
                                    c.dmin = std::min(c.dmin, d);
                                    c.dmax = std::max(c.dmax, d);
                                }
                            });
    }

    // Pass 2: keep only entries whose (q, d) can be completed to (0, 0) by the
    // other components. Partitioned over the first coordinate when threaded;
    // slices are concatenated in order, so the result is thread-count blind.
    for (size_t ci = 0; ci < comps.size(); ++ci) {
        auto& c = comps[ci];
        long long oqmin = 0, oqmax = 0, odmin = 0, odmax = 0;
        for (size_t cj = 0; cj < comps.size(); ++cj) {
            if (cj == ci) continue;
            oqmin += comps[cj].qmin;
            oqmax += comps[cj].qmax;
            odmin += comps[cj].dmin;
            odmax += comps[cj].dmax;
        }
        const long long span = 2 * bound + 1;
        const int nt = static_cast<int>(std::min<long long>(threads, span));
        std::vector<std::vector<ComponentEntry>> parts(nt);
        auto work = [&](int t) {
            const long long lo = -bound + t * span / nt;
            const long long hi = -bound + (t + 1) * span / nt - 1;
            enumerate_component(L, c.idx, gk, bound, lo, hi,
                                [&](const std::vector<long long>& v, long long q, long long d) {
                                    if (q + oqmin > 0 || q + oqmax < 0) return;
                                    if (d + odmin > 0 || d + odmax < 0) return;
                                    parts[t].push_back(ComponentEntry{q, d, v});
                                });
        };
        if (nt == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        for (auto& p : parts)
            for (auto& e : p) c.entries.push_back(std::move(e));
    }

    // Assemble full isotropic kappa-orthogonal candidates.
    std::vector<LatticeVector> S;
    LatticeVector cur(n, 0);
    std::vector<long long> sufQmin(comps.size() + 1, 0), sufQmax(comps.size() + 1, 0);
    std::vector<long long> sufDmin(comps.size() + 1, 0), sufDmax(comps.size() + 1, 0);
    for (int i = static_cast<int>(comps.size()) - 1; i >= 0; --i) {
        sufQmin[i] = sufQmin[i + 1] + comps[i].qmin;
        sufQmax[i] = sufQmax[i + 1] + comps[i].qmax;
        sufDmin[i] = sufDmin[i + 1] + comps[i].dmin;
        sufDmax[i] = sufDmax[i + 1] + comps[i].dmax;
    }
    auto assemble = [&](auto&& self, size_t ci, long long q, long long d) -> void {
        if (ci == comps.size()) {
            if (q == 0 && d == 0) {
                bool nonzero = false;
                for (long long x : cur) nonzero |= (x != 0);
                if (nonzero) S.push_back(cur);
            }
            return;
        }
        if (q + sufQmin[ci] > 0 || q + sufQmax[ci] < 0) return;
        if (d + sufDmin[ci] > 0 || d + sufDmax[ci] < 0) return;
        for (const auto& e : comps[ci].entries) {
            for (size_t a = 0; a < comps[ci].idx.size(); ++a) cur[comps[ci].idx[a]] = e.coords[a];
            self(self, ci + 1, q + e.q, d + e.d);
        }
        for (size_t a = 0; a < comps[ci].idx.size(); ++a) cur[comps[ci].idx[a]] = 0;
    };
    assemble(assemble, 0, 0, 0);

    std::sort(S.begin(), S.end(), maxnorm_lex_less);

    // Layered pair scan: all pairs with combined max-norm m are examined before
    // any pair with m+1, in (e position, f position) order within a layer.
    std::vector<long long> norms(S.size());
    for (size_t i = 0; i < S.size(); ++i) norms[i] = maxnorm(S[i]);
    std::vector<LatticeVector> GS(S.size(), LatticeVector(n, 0));
    for (size_t j = 0; j < S.size(); ++j)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) GS[j][a] += L.gram[a][b] * S[j][b];
    for (long long m = 1; m <= bound; ++m) {
        for (size_t i = 0; i < S.size() && norms[i] <= m; ++i) {
            for (size_t j = 0; j < S.size() && norms[j] <= m; ++j) {
                if (i == j) continue;
                if (std::max(norms[i], norms[j]) != m) continue;  // seen in an earlier layer
                long long ef = 0;
                for (int a = 0; a < n; ++a) ef += S[i][a] * GS[j][a];
                if (ef != 1) continue;
                HyperbolicCertificate cert{S[i], S[j]};
                // Re-verify against the Gram before returning.
                if (inner_product(L, cert.e, cert.e) != 0 ||
                    inner_product(L, cert.f, cert.f) != 0 ||
                    inner_product(L, cert.e, cert.f) != 1 ||
                    inner_product(L, cert.e, kappa) != 0 ||
                    inner_product(L, cert.f, kappa) != 0)
                    throw std::logic_error("hyperbolic pair failed re-verification");
                return cert;
            }
        }
    }
    return std::nullopt;
}

LatticeVector construct_lambda(const IntegerLattice& L, const HyperbolicCertificate& cert,
                               long long chi, long long sigma, long long j) {
    if ((chi + sigma) % 2 != 0)
        throw parity_error("chi + sigma must be even to form Lambda_j");
    const long long t = (chi + sigma) / 2;
    LatticeVector lam(L.rank, 0);
    for (int i = 0; i < L.rank; ++i) lam[i] = cert.e[i] + (j - t) * cert.f[i];
    if (inner_product(L, lam, lam) != make_int(2 * j - (chi + sigma)))
        throw std::logic_error("Lambda_j square check failed; certificate is not hyperbolic");
    return lam;
}

}  // namespace fourman
