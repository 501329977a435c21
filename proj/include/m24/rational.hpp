#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace m24 {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rq(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "p/q" or "-p/q".
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline long to_ll(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer out of range");
    return z.get_si();
}

inline Rat floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rat(q);
}

// x reduced into [0, m) for rational x, integer m > 0.
inline Rat mod_rat(const Rat& x, long m) {
    Rat f = x / m;
    return x - m * floor_rat(f);
}

inline long gcd_ll(long a, long b) { return std::gcd(a, b); }

inline long lcm_ll(long a, long b) {
    long g = std::gcd(a, b);
    return a / g * b;
}

// Extended Euclid: returns g = gcd(a, m) and x with a*x == g (mod m).
inline long ext_gcd(long a, long b, long& x, long& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    long x1, y1;
    long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Multiplicative inverse of a mod m (m >= 1); throws if gcd(a, m) != 1.
inline long inv_mod(long a, long m) {
    if (m == 1) return 0;
    a %= m;
    if (a < 0) a += m;
    long x, y;
    long g = ext_gcd(a, m, x, y);
    if (g != 1 && g != -1) throw std::domain_error("inv_mod: arguments not coprime");
    long r = x % m;
    if (r < 0) r += m;
    if (g == -1) r = (m - r) % m;
    return r;
}

inline long pow_mod(long a, long e, long m) {
    if (m == 1) return 0;
    a %= m;
    if (a < 0) a += m;
    long r = 1;
    while (e > 0) {
        if (e & 1) r = (__int128)r * a % m;
        a = (__int128)a * a % m;
        e >>= 1;
    }
    return r;
}

inline long ord2(long n) {
    long v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    return v;
}

inline bool is_square_ll(long n, long& root) {
    if (n < 0) return false;
    long r = (long)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    root = r;
    return r * r == n;
}

} // namespace m24
