#pragma once

#include <gmpxx.h>

#include <string>

#include "fourman/error.hpp"

namespace fourman {

// All exact arithmetic routes through GMP. Rationals are kept canonical
// (lowest terms, positive denominator) by mpq_class itself.
using Int = mpz_class;
using Rational = mpq_class;

// gmpxx has no long long constructors; long is 64-bit on every platform we
// build for.
static_assert(sizeof(long) == sizeof(long long));

inline Int make_int(long long v) { return Int(static_cast<long>(v)); }

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational r(make_int(num), make_int(den));
    r.canonicalize();
    return r;
}

// Canonical string form "p/q", denominator always printed ("3" -> "3/1").
inline std::string rat_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw input_error("bad rational literal: " + s);
    if (r.get_den() == 0) throw input_error("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long long to_ll(const Int& z) {
    if (!z.fits_slong_p()) throw input_error("integer out of range: " + z.get_str());
    return z.get_si();
}

inline long long to_ll(const Rational& r) {
    if (!is_integer(r)) throw parity_error("expected integer, got " + rat_str(r));
    return to_ll(r.get_num());
}

// 2^e for any integer e.
inline Rational pow2(long long e) {
    Rational r = 1;
    Int two = 2;
    if (e >= 0) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(e));
        r = Rational(p);
    } else {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(-e));
        r = Rational(Int(1), p);
        r.canonicalize();
    }
    return r;
}

inline Rational factorial(int n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

// Generalized binomial coefficient C(n, k) = n(n-1)...(n-k+1)/k!, n any integer.
inline Rational binomial_general(long long n, int k) {
    if (k < 0) return 0;
    Rational num = 1;
    for (int i = 0; i < k; ++i) num *= Rational(make_int(n - i));
    return num / factorial(k);
}

}  // namespace fourman
