#pragma once

// Test-side oracles, deliberately independent of the library's series engine:
// dense polynomial arithmetic on integer exponents plus classical closed-form
// q-expansions used to pin expected values.

#include <vector>

#include "m24/rational.hpp"

namespace oracle {

using m24::Rat;

using Poly = std::vector<Rat>;  // coefficient of q^i at index i

inline Poly mul(const Poly& a, const Poly& b, size_t n) {
    Poly out(n, Rat(0));
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// long-division inverse of a series with unit constant term
inline Poly inverse(const Poly& a, size_t n) {
    Poly inv(n, Rat(0));
    inv[0] = Rat(1) / a[0];
    for (size_t k = 1; k < n; ++k) {
        Rat s(0);
        for (size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * inv[k - j];
        inv[k] = -s / a[0];
    }
    return inv;
}

// prod (1-q^m) via the pentagonal number series sum_k (-1)^k q^{k(3k-1)/2}
inline Poly euler_pentagonal(size_t n) {
    Poly out(n, Rat(0));
    for (long k = -(long)n; k <= (long)n; ++k) {
        long e = k * (3 * k - 1) / 2;
        if (e >= 0 && e < (long)n) out[e] += (k % 2 == 0) ? 1 : -1;
    }
    return out;
}

// prod (1-q^m)^3 via sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
inline Poly euler_cubed(size_t n) {
    Poly out(n, Rat(0));
    for (long k = 0; k * (k + 1) / 2 < (long)n; ++k)
        out[k * (k + 1) / 2] += (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
    return out;
}

inline long sigma1(long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

inline Poly eisenstein_e2(size_t n) {
    Poly out(n, Rat(0));
    out[0] = 1;
    for (size_t k = 1; k < n; ++k) out[k] = Rat(-24 * sigma1((long)k));
    return out;
}

// q |-> q^M on integer-exponent polynomials
inline Poly dilate(const Poly& a, long M, size_t n) {
    Poly out(n, Rat(0));
    for (size_t i = 0; i * M < n && i < a.size(); ++i) out[i * M] = a[i];
    return out;
}

} // namespace oracle
