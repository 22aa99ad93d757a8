#pragma once

#include <optional>
#include <string>
#include <vector>

#include <map>

#include "fourman/lattice.hpp"
#include "fourman/topology.hpp"

namespace fourman {

// Multivariate power series over the rationals, truncated at total degree
// cap. Zero coefficients are never stored; every key has size vars.size()
// and total degree <= cap.
struct TruncatedSeries {
    std::vector<std::string> vars;
    int cap = 0;
    std::map<std::vector<int>, Rational> terms;
    bool operator==(const TruncatedSeries&) const = default;
    bool is_zero() const { return terms.empty(); }
};

TruncatedSeries ts_zero(std::vector<std::string> vars, int cap);
TruncatedSeries ts_const(std::vector<std::string> vars, int cap, const Rational& c);
TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_scale(const Rational& c, const TruncatedSeries& a);
TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_exp(const TruncatedSeries& a);   // needs zero constant term
TruncatedSeries ts_sinh(const TruncatedSeries& a);  // odd part of ts_exp

// sum coeffs[i] * x_i as a series.
TruncatedSeries linear_form(std::vector<std::string> vars, int cap, const LatticeVector& coeffs);
// sum_{i,j} Q[i][j] x_i x_j (the full bilinear sum; halve for Q(h,h)/2).
TruncatedSeries quadratic_form(std::vector<std::string> vars, int cap, const GramMatrix& Q);

// Substitute x_i -> sum_j M[i][j] y_j; M is oldVars x newVars.
TruncatedSeries substitute_linear(const TruncatedSeries& a, std::vector<std::string> newVars,
                                  const std::vector<std::vector<Rational>>& M);

TruncatedSeries append_variable(const TruncatedSeries& a, const std::string& name);

// Least total degree with a nonzero coefficient; nullopt when every stored
// coefficient vanishes (order exceeds the cap).
std::optional<int> vanishing_order(const TruncatedSeries& a);

struct CongruenceOutcome {
    bool ok = true;
    std::vector<int> index;  // first differing multi-index, (degree, lex) order
    Rational lhs, rhs;
};

// Coefficients of total degree < bound agree exactly (degrees beyond either
// cap are not compared).
CongruenceOutcome congruence_check(const TruncatedSeries& a, const TruncatedSeries& b, int bound);

struct SeriesContext {
    IntegerLattice Q;
    LatticeVector w;
    std::vector<SWDatum> swData;
    int cap = 0;
    long long cX = 0;
};

// Validates sizes, the evenness of w^2 + K.w for every basic class, and that
// every class carries an SW value.
SeriesContext make_series_context(GramMatrix Q, LatticeVector w, std::vector<SWDatum> swData,
                                  int cap, long long cX);

std::vector<std::string> h_variables(int n);

// sum_K (-1)^{(w^2 + K.w)/2} SW(K) exp(<K,h>), <K,h> = sum K_i h_i.
TruncatedSeries sw_series(const SeriesContext& ctx);

// 2^{2-c(X)} exp(Q(h,h)/2) sw_series(ctx).
TruncatedSeries witten_rhs(const SeriesContext& ctx);

// -d exp((e.e/2) x_e^2) sinh(x_e) where x_e is the last variable of d; raises
// the vanishing order by exactly one.
TruncatedSeries blowup_donaldson(const TruncatedSeries& d, long long eSelfIntersection);

// Basic classes K +- PD[e] with PD[e] = (0,...,0,1), Q extended by <-1>,
// w + PD[e], c+1; SW values inherited.
SeriesContext blowup_context(const SeriesContext& ctx);

struct BlowupSuiteReport {
    CongruenceOutcome precondition;  // d = witten_rhs mod h^c
    bool suiteRun = false;
    CongruenceOutcome donaldsonVanishing;  // blown-up D = 0 mod h^{c-1}
    CongruenceOutcome swVanishing;         // blown-up SW = 0 mod h^{c-1}
    CongruenceOutcome blowupCongruence;    // blown-up D = 2^{1-c} exp(Qt/2) SWt mod h^{c+1}
    std::optional<int> donaldsonOrder;
    std::optional<int> swOrder;
    bool pass = false;
};

BlowupSuiteReport blowup_congruence_suite(const SeriesContext& ctx, const TruncatedSeries& d);

// Sorted (multi-index, "p/q") pairs in (total degree, lex) order.
std::vector<std::pair<std::vector<int>, std::string>> serialize_series(const TruncatedSeries& a);

}  // namespace fourman
