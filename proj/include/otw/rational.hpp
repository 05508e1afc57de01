// Exact rational scalars backed by GMP, plus the canonical "p/q" text form
// used by every exported table.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace otw {

using Rational = mpq_class;

/// gmpxx has no long long overloads; every 64-bit integer goes through here.
inline Rational to_rat(long long v) { return Rational(static_cast<long>(v)); }

inline Rational rat_frac(long long num, long long den) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

/// Canonical text form: lowest terms, "p/q", "-p/q", plain integers without
/// the "/1", and "0" for zero.
inline std::string rat_to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

inline Rational rat_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    r.canonicalize();
    return r;
}

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    if (!b.fits_slong_p())
        throw std::overflow_error("binomial overflow");
    return b.get_si();
}

inline Rational factorial(long long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

}  // namespace otw
