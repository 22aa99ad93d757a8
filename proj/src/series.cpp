#include "fourman/series.hpp"

#include <algorithm>
#include <numeric>

#include "fourman/error.hpp"

namespace fourman {

namespace {

int total_degree(const std::vector<int>& idx) {
    return std::accumulate(idx.begin(), idx.end(), 0);
}

void require_same_shape(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.vars != b.vars) throw input_error("series variable sets differ");
}

void accumulate(TruncatedSeries& s, const std::vector<int>& idx, const Rational& c) {
    if (c == 0) return;
    auto it = s.terms.find(idx);
    if (it == s.terms.end()) {
        s.terms.emplace(idx, c);
    } else {
        it->second += c;
        if (it->second == 0) s.terms.erase(it);
    }
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

}  // namespace

TruncatedSeries ts_zero(std::vector<std::string> vars, int cap) {
    if (cap < 0) throw input_error("negative degree cap");
    TruncatedSeries s;
    s.vars = std::move(vars);
    s.cap = cap;
    return s;
}

TruncatedSeries ts_const(std::vector<std::string> vars, int cap, const Rational& c) {
    TruncatedSeries s = ts_zero(std::move(vars), cap);
    if (c != 0) s.terms.emplace(std::vector<int>(s.vars.size(), 0), c);
    return s;
}

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_shape(a, b);
    TruncatedSeries out = a;
    out.cap = std::min(a.cap, b.cap);
    std::erase_if(out.terms, [&](const auto& kv) { return total_degree(kv.first) > out.cap; });
    for (const auto& [idx, c] : b.terms)
        if (total_degree(idx) <= out.cap) accumulate(out, idx, c);
    return out;
}

TruncatedSeries ts_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return ts_add(a, ts_scale(Rational(-1), b));
}

TruncatedSeries ts_scale(const Rational& c, const TruncatedSeries& a) {
    TruncatedSeries out = ts_zero(a.vars, a.cap);
    if (c == 0) return out;
    for (const auto& [idx, v] : a.terms) out.terms.emplace(idx, c * v);
    return out;
}

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_shape(a, b);
    TruncatedSeries out = ts_zero(a.vars, std::min(a.cap, b.cap));
    std::vector<int> idx(a.vars.size());
    for (const auto& [ia, ca] : a.terms) {
        int da = total_degree(ia);
        if (da > out.cap) continue;
        for (const auto& [ib, cb] : b.terms) {
            if (da + total_degree(ib) > out.cap) continue;
            for (size_t k = 0; k < idx.size(); ++k) idx[k] = ia[k] + ib[k];
            accumulate(out, idx, ca * cb);
        }
    }
    return out;
}

TruncatedSeries ts_exp(const TruncatedSeries& a) {
    std::vector<int> origin(a.vars.size(), 0);
    if (a.terms.count(origin)) throw input_error("exp needs a zero constant term");
    TruncatedSeries acc = ts_const(a.vars, a.cap, Rational(1));
    TruncatedSeries pw = acc;
    for (int k = 1; k <= a.cap; ++k) {
        pw = ts_scale(Rational(1, k), ts_mul(pw, a));
        if (pw.is_zero()) break;
        acc = ts_add(acc, pw);
    }
    return acc;
}

TruncatedSeries ts_sinh(const TruncatedSeries& a) {
    TruncatedSeries plus = ts_exp(a);
    TruncatedSeries minus = ts_exp(ts_scale(Rational(-1), a));
    return ts_scale(Rational(1, 2), ts_sub(plus, minus));
}

TruncatedSeries linear_form(std::vector<std::string> vars, int cap, const LatticeVector& coeffs) {
    if (coeffs.size() != vars.size()) throw input_error("linear form has wrong length");
    TruncatedSeries s = ts_zero(std::move(vars), cap);
    if (cap < 1) return s;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        std::vector<int> idx(s.vars.size(), 0);
        idx[i] = 1;
        s.terms.emplace(std::move(idx), Rational(make_int(coeffs[i])));
    }
    return s;
}

TruncatedSeries quadratic_form(std::vector<std::string> vars, int cap, const GramMatrix& Q) {
    if (Q.size() != vars.size()) throw input_error("quadratic form has wrong size");
    TruncatedSeries s = ts_zero(std::move(vars), cap);
    if (cap < 2) return s;
    for (size_t i = 0; i < Q.size(); ++i)
        for (size_t j = 0; j < Q.size(); ++j) {
            if (Q[i][j] == 0) continue;
            std::vector<int> idx(s.vars.size(), 0);
            idx[i] += 1;
            idx[j] += 1;
            accumulate(s, idx, Rational(make_int(Q[i][j])));
        }
    return s;
}

TruncatedSeries substitute_linear(const TruncatedSeries& a, std::vector<std::string> newVars,
                                  const std::vector<std::vector<Rational>>& M) {
    if (M.size() != a.vars.size()) throw input_error("substitution matrix has wrong row count");
    std::vector<TruncatedSeries> images;
    images.reserve(M.size());
    for (const auto& row : M) {
        if (row.size() != newVars.size())
            throw input_error("substitution matrix has wrong column count");
        TruncatedSeries im = ts_zero(newVars, a.cap);
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j] == 0) continue;
            std::vector<int> idx(newVars.size(), 0);
            idx[j] = 1;
            im.terms.emplace(std::move(idx), row[j]);
        }
        images.push_back(std::move(im));
    }
    TruncatedSeries out = ts_zero(newVars, a.cap);
    for (const auto& [idx, c] : a.terms) {
        TruncatedSeries term = ts_const(newVars, a.cap, c);
        for (size_t i = 0; i < idx.size(); ++i)
            for (int k = 0; k < idx[i]; ++k) term = ts_mul(term, images[i]);
        out = ts_add(out, term);
    }
    return out;
}

TruncatedSeries append_variable(const TruncatedSeries& a, const std::string& name) {
    TruncatedSeries out;
    out.vars = a.vars;
    out.vars.push_back(name);
    out.cap = a.cap;
    for (const auto& [idx, c] : a.terms) {
        std::vector<int> ext = idx;
        ext.push_back(0);
        out.terms.emplace(std::move(ext), c);
    }
    return out;
}

std::optional<int> vanishing_order(const TruncatedSeries& a) {
    std::optional<int> best;
    for (const auto& [idx, c] : a.terms) {
        int d = total_degree(idx);
        if (!best || d < *best) best = d;
    }
    return best;
}

CongruenceOutcome congruence_check(const TruncatedSeries& a, const TruncatedSeries& b, int bound) {
    require_same_shape(a, b);
    int effective = std::min(bound, std::min(a.cap, b.cap) + 1);
    std::vector<std::vector<int>> keys;
    for (const auto& [idx, c] : a.terms)
        if (total_degree(idx) < effective) keys.push_back(idx);
    for (const auto& [idx, c] : b.terms)
        if (total_degree(idx) < effective && !a.terms.count(idx)) keys.push_back(idx);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) {
        int dx = total_degree(x), dy = total_degree(y);
        if (dx != dy) return dx < dy;
        return x < y;
    });
    CongruenceOutcome out;
    for (const auto& k : keys) {
        auto ia = a.terms.find(k);
        auto ib = b.terms.find(k);
        Rational va = ia == a.terms.end() ? Rational(0) : ia->second;
        Rational vb = ib == b.terms.end() ? Rational(0) : ib->second;
        if (va != vb) {
            out.ok = false;
            out.index = k;
            out.lhs = va;
            out.rhs = vb;
            return out;
        }
    }
    return out;
}

SeriesContext make_series_context(GramMatrix Q, LatticeVector w, std::vector<SWDatum> swData,
                                  int cap, long long cX) {
    if (cap < 0) throw input_error("negative degree cap");
    SeriesContext ctx;
    ctx.Q = make_lattice(std::move(Q));
    if (static_cast<int>(w.size()) != ctx.Q.rank) throw input_error("w has wrong length");
    ctx.w = std::move(w);
    ctx.cap = cap;
    ctx.cX = cX;
    Int w2 = q_value(ctx.Q.gram, ctx.w, ctx.w);
    for (auto& datum : swData) {
        if (static_cast<int>(datum.basicClass.size()) != ctx.Q.rank)
            throw input_error("basic class has wrong length");
        if (!datum.swValue) throw input_error("basic class without an SW value");
        Int kw = q_value(ctx.Q.gram, datum.basicClass, ctx.w);
        if ((w2 + kw) % 2 != 0)
            throw parity_error("w^2 + K.w is odd; sign exponent undefined");
    }
    ctx.swData = std::move(swData);
    return ctx;
}

std::vector<std::string> h_variables(int n) {
    std::vector<std::string> vars;
    vars.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) vars.push_back("h" + std::to_string(i));
    return vars;
}

TruncatedSeries sw_series(const SeriesContext& ctx) {
    std::vector<std::string> vars = h_variables(ctx.Q.rank);
    TruncatedSeries out = ts_zero(vars, ctx.cap);
    Int w2 = q_value(ctx.Q.gram, ctx.w, ctx.w);
    for (const auto& datum : ctx.swData) {
        Int kw = q_value(ctx.Q.gram, datum.basicClass, ctx.w);
        Int half = (w2 + kw) / 2;
        Rational coeff(make_int(*datum.swValue));
        if (mpz_odd_p(half.get_mpz_t())) coeff = -coeff;
        TruncatedSeries e = ts_exp(linear_form(vars, ctx.cap, datum.basicClass));
        out = ts_add(out, ts_scale(coeff, e));
    }
    return out;
}

TruncatedSeries witten_rhs(const SeriesContext& ctx) {
    std::vector<std::string> vars = h_variables(ctx.Q.rank);
    TruncatedSeries q = ts_scale(Rational(1, 2), quadratic_form(vars, ctx.cap, ctx.Q.gram));
    return ts_scale(pow2(2 - ctx.cX), ts_mul(ts_exp(q), sw_series(ctx)));
}

TruncatedSeries blowup_donaldson(const TruncatedSeries& d, long long eSelfIntersection) {
    if (d.vars.empty()) throw input_error("no exceptional variable to blow up along");
    size_t ePos = d.vars.size() - 1;
    LatticeVector unit(d.vars.size(), 0);
    unit[ePos] = 1;
    TruncatedSeries xe = linear_form(d.vars, d.cap, unit);
    TruncatedSeries xe2 = ts_scale(make_rational(eSelfIntersection, 2), ts_mul(xe, xe));
    TruncatedSeries factor = ts_mul(ts_exp(xe2), ts_sinh(xe));
    return ts_scale(Rational(-1), ts_mul(d, factor));
}

SeriesContext blowup_context(const SeriesContext& ctx) {
    int n = ctx.Q.rank;
    GramMatrix Q(static_cast<size_t>(n) + 1, LatticeVector(static_cast<size_t>(n) + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q[static_cast<size_t>(i)][static_cast<size_t>(j)] = ctx.Q.gram[i][j];
    Q[static_cast<size_t>(n)][static_cast<size_t>(n)] = -1;
    LatticeVector w = ctx.w;
    w.push_back(1);
    std::vector<SWDatum> data;
    data.reserve(ctx.swData.size() * 2);
    for (const auto& datum : ctx.swData) {
        for (long long sgn : {+1LL, -1LL}) {
            SWDatum d = datum;
            d.basicClass.push_back(sgn);
            data.push_back(std::move(d));
        }
    }
    return make_series_context(std::move(Q), std::move(w), std::move(data), ctx.cap,
                               ctx.cX + 1);
}

BlowupSuiteReport blowup_congruence_suite(const SeriesContext& ctx, const TruncatedSeries& d) {
    if (ctx.cX < 1 || ctx.cX > ctx.cap)
        throw input_error("suite needs 1 <= c(X) <= degree cap");
    BlowupSuiteReport rep;
    rep.precondition = congruence_check(d, witten_rhs(ctx), static_cast<int>(ctx.cX));
    if (!rep.precondition.ok) return rep;
    rep.suiteRun = true;
    SeriesContext blown = blowup_context(ctx);
    TruncatedSeries swTilde = sw_series(blown);
    TruncatedSeries dTilde = blowup_donaldson(append_variable(d, "e" + std::to_string(ctx.Q.rank + 1)), -1);
    // Variable names must line up for the comparisons below.
    dTilde.vars = h_variables(blown.Q.rank);
    TruncatedSeries zero = ts_zero(dTilde.vars, ctx.cap);
    int c = static_cast<int>(ctx.cX);
    rep.donaldsonVanishing = congruence_check(dTilde, zero, c - 1);
    rep.swVanishing = congruence_check(swTilde, zero, c - 1);
    rep.blowupCongruence = congruence_check(dTilde, witten_rhs(blown), c + 1);
    rep.donaldsonOrder = vanishing_order(dTilde);
    rep.swOrder = vanishing_order(swTilde);
    rep.pass = rep.donaldsonVanishing.ok && rep.swVanishing.ok && rep.blowupCongruence.ok;
    return rep;
}

std::vector<std::pair<std::vector<int>, std::string>> serialize_series(const TruncatedSeries& a) {
    std::vector<std::pair<std::vector<int>, std::string>> out;
    out.reserve(a.terms.size());
    for (const auto& [idx, c] : a.terms) out.push_back({idx, rat_str(c)});
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        int dx = total_degree(x.first), dy = total_degree(y.first);
        if (dx != dy) return dx < dy;
        return x.first < y.first;
    });
    return out;
}

}  // namespace fourman
