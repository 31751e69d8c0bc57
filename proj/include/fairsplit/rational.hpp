#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fairsplit {

// Exact rational scalar used for all masses, breakpoints and coefficients.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p/q", plain integers and decimal strings ("0.05" -> 1/20).
inline Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad rational literal: " + text);
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    Rat q;
    if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0)
        throw std::invalid_argument("bad rational literal: " + text);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline mpz_class rat_floor(const Rat& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class rat_ceil(const Rat& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Smallest integer e >= 0 with 2^e >= q, for q >= 1. Exact.
inline long ceil_log2(const Rat& q) {
    if (q <= 0) throw std::invalid_argument("ceil_log2 of non-positive value");
    if (q <= 1) return 0;
    long bn = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
    long bd = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
    // num/den <= 2^(bn-bd+1) and > 2^(bn-bd-1), so the answer is nearby.
    long e = bn - bd - 1;
    if (e < 0) e = 0;
    mpz_class shifted;
    mpz_mul_2exp(shifted.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    while (mpz_cmp(shifted.get_mpz_t(), q.get_num_mpz_t()) < 0) {
        shifted <<= 1;
        ++e;
    }
    return e;
}

// Exact rational lower bound for log2(q), integral q >= 1.
//
// Exact when q is a power of two; otherwise a dyadic value within 2^-18 below
// the true logarithm. Rounding down keeps every derived cut-count bound at or
// inside the ideal one, while the discrepancy guarantees have orders of
// magnitude more slack than the approximation loses.
inline Rat log2_lower(unsigned long q) {
    if (q == 0) throw std::invalid_argument("log2 of zero");
    if ((q & (q - 1)) == 0) {
        long e = 0;
        while (q > 1) {
            q >>= 1;
            ++e;
        }
        return Rat(e);
    }
    const long scale = 1L << 20;
    double d = std::log2(static_cast<double>(q));
    long v = static_cast<long>(std::floor(d * static_cast<double>(scale))) - 2;
    Rat r(v, scale);
    r.canonicalize();
    return r;
}

// log2 term used in caps and potentials: max(log2 n, 1), per the convention
// that n = 1 instances borrow the n = 2 parameters.
inline Rat log_term(unsigned long q) {
    Rat l = log2_lower(q);
    return l < 1 ? Rat(1) : l;
}

// Integer ceil of the k-th root.
inline mpz_class ceil_root(const mpz_class& v, unsigned long k) {
    if (v < 0) throw std::invalid_argument("root of negative value");
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    if (!exact) r += 1;
    return r;
}

// a <= cbrt(c) for a >= 0, exact: compares a^3 against c.
inline bool cube_leq(const Rat& a, const Rat& cubed) {
    if (a < 0) return true;
    return Rat(a * a * a) <= cubed;
}

inline bool cube_less(const Rat& a, const Rat& cubed) {
    if (a < 0) return true;
    return Rat(a * a * a) < cubed;
}

}  // namespace fairsplit
