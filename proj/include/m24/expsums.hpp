#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "m24/rational.hpp"

namespace m24 {

// All root-of-unity sums run in extended precision (x87 80-bit, 64-bit
// significand); the identities checked here are decided at 1e-9.
using CV = std::complex<long double>;
inline constexpr int kPrecisionBits = 64;

inline constexpr long double kPi = 3.14159265358979323846264338327950288L;

struct EvenArgument : std::domain_error {
    EvenArgument() : std::domain_error("expsums: argument must be odd") {}
};
struct NotCoprime : std::domain_error {
    NotCoprime() : std::domain_error("expsums: arguments must be coprime") {}
};
struct EvenR : std::domain_error {
    EvenR() : std::domain_error("expsums: r must be odd") {}
};
struct InvalidMatrix : std::domain_error {
    InvalidMatrix() : std::domain_error("expsums: matrix must be unimodular with c > 0") {}
};
struct LevelMismatch : std::domain_error {
    LevelMismatch() : std::domain_error("expsums: level/multiplier constraint violated") {}
};
struct ParityViolation : std::domain_error {
    ParityViolation() : std::domain_error("expsums: (|D'|+1)/8 is not an integer") {}
};

// e(x) = e^{2 pi i x} for exact rational x, reduced mod 1 before rounding
inline CV e_rat(const Rat& x) {
    Rat r = mod_rat(x, 1);
    long double v = 2.0L * kPi * (long double)mpq_get_d(r.get_mpq_t());
    return {std::cos(v), std::sin(v)};
}

// e_c(x) = e^{2 pi i x / c}
inline CV e_frac(long x, long c) { return e_rat(rq(x, c)); }

// Kronecker symbol (a|n), standard conventions
inline int kronecker(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    long e = 0;
    while (n % 2 == 0) { n /= 2; ++e; }
    if (e > 0 && a % 2 == 0) return 0;
    if (e % 2 != 0) {
        long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) sign = -sign;
    }
    // Jacobi symbol (a|n) with n odd > 0
    a %= n; if (a < 0) a += n;
    long t = sign;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long nm = n % 8;
            if (nm == 3 || nm == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? (int)t : 0;
}

// eps_d = 1 if d = 1 (4), i if d = 3 (4)
inline CV eps_d(long d) {
    if (d % 2 == 0) throw EvenArgument();
    long m = ((d % 4) + 4) % 4;
    return m == 1 ? CV(1, 0) : CV(0, 1);
}

// ((x)) = x - floor(x) - 1/2 off the integers, 0 on them
inline Rat sawtooth(const Rat& x) {
    if (x.get_den() == 1) return Rat(0);
    return x - floor_rat(x) - rq(1, 2);
}

// s(a,c) = sum_{n mod c} ((n/c))((na/c)), exact.
// Integer accumulation: ((n/c)) = (2n-c)/(2c) for 0 < n < c.
inline Rat dedekind_s(long a, long c) {
    if (c < 1) throw std::invalid_argument("dedekind_s: c must be positive");
    a %= c; if (a < 0) a += c;
    __int128 acc = 0;
    for (long n = 1; n < c; ++n) {
        long m = (__int128)n * a % c;
        if (m == 0) continue;
        acc += (__int128)(2 * n - c) * (2 * m - c);
    }
    // exact value acc / (4 c^2); acc fits in 128 bits for any sane c
    bool neg = acc < 0;
    unsigned __int128 mag = neg ? -(unsigned __int128)acc : (unsigned __int128)acc;
    Int num = Int((unsigned long)(mag >> 64));
    num <<= 64;
    num += Int((unsigned long)(mag & 0xffffffffffffffffULL));
    if (neg) num = -num;
    Rat r(num);
    r /= 4 * Int(c) * c;
    return r;
}

// s(a,c) by reciprocity in O(log c); agrees with dedekind_s
inline Rat dedekind_s_fast(long a, long c) {
    if (c < 1) throw std::invalid_argument("dedekind_s_fast: c must be positive");
    a %= c; if (a < 0) a += c;
    Rat s(0);
    int sign = 1;
    while (a != 0 && c > 1) {
        if (std::gcd(a, c) != 1)
            throw std::invalid_argument("dedekind_s_fast: arguments must be coprime");
        // s(a,c) = -1/4 + (1/12)(a/c + c/a + 1/(ac)) - s(c mod a, a)
        Rat rec = rq(-1, 4) + (rq(a, c) + rq(c, a) + Rat(1) / (Rat(a) * c)) / 12;
        if (sign == 1) s += rec; else s -= rec;
        long t = c % a;
        c = a; a = t;
        sign = -sign;
    }
    return s;
}

// s(a,c) - s(-c,a) - [-1/4 + (1/12)(c/a + a/c + 1/(ac))]; identically zero
inline Rat dedekind_reciprocity_defect(long a, long c) {
    if (a <= 0 || c <= 0) throw std::invalid_argument("reciprocity: a, c must be positive");
    if (std::gcd(a, c) != 1) throw NotCoprime();
    Rat lhs = dedekind_s(a, c) - dedekind_s(((-c) % a + a) % a, a);
    Rat rhs = rq(-1, 4) + (rq(c, a) + rq(a, c) + Rat(1) / (Rat(a) * c)) / 12;
    return lhs - rhs;
}

struct SL2 {
    long a, b, c, d;
    long det() const { return a * d - b * c; }
};

// exact angle t with eta multiplier eps(gamma) = e^{pi i t}; requires det 1.
// For c > 0 this is (a+d)/(12c) - s(d,c) - 1/4 (the sign on the Dedekind sum
// is forced by eta(g tau) = eps(g)(c tau+d)^{1/2} eta(tau) and is checked
// pointwise in the tests); c <= 0 is normalized first. Always lands in Z/12.
inline Rat eta_multiplier_angle(const SL2& g) {
    if (g.det() != 1) throw InvalidMatrix();
    long a = g.a, b = g.b, c = g.c, d = g.d;
    Rat extra(0);
    if (c < 0 || (c == 0 && d < 0)) {
        a = -a; b = -b; c = -c; d = -d;
        extra = rq(1, 2);  // eps(-g) = i eps(g)
    }
    if (c == 0) return mod_rat(extra + rq(b, 12), 2);  // translation: e^{pi i b/12}
    Rat t = rq(a + d, 1) / (12 * Rat(c)) - dedekind_s_fast(d, c) - rq(1, 4);
    return mod_rat(t + extra, 2);
}

// eta multiplier eps(gamma): eta(g tau) = eps(g) (c tau + d)^{1/2} eta(tau)
inline CV eta_multiplier(const SL2& g) {
    if (!(g.c > 0)) throw InvalidMatrix();
    Rat t = eta_multiplier_angle(g);
    return e_rat(t / 2);
}

// rho_{N|h}(gamma) = e^{-2 pi i c d/(N h)}; morphism on Gamma_0(N) when h | (N,24)
inline CV rho_Nh(const SL2& g, long N, long h) {
    if (g.det() != 1) throw InvalidMatrix();
    if (N < 1 || h < 1 || g.c % N != 0 || std::gcd(N, 24L) % h != 0) throw LevelMismatch();
    long NH = N * h;
    return e_rat(rq(-(((g.c % NH) * (g.d % NH)) % NH), NH));
}

// --- generalized quadratic Gauss sums ------------------------------------

struct GaussSumParams {
    long a, b, c;  // c != 0
};

// c-th roots of unity table; sign < 0 conjugates
inline std::vector<CV> root_table(long c, int sign = 1) {
    std::vector<CV> roots(c);
    for (long j = 0; j < c; ++j) {
        long double v = 2.0L * kPi * (long double)(sign > 0 ? j : -j) / (long double)c;
        roots[j] = {std::cos(v), std::sin(v)};
    }
    return roots;
}

// G(a,b,c) = sum_{n=0}^{|c|-1} e_c(a n^2 + b n)
inline CV gauss_brute(const GaussSumParams& p) {
    if (p.c == 0) throw std::invalid_argument("gauss_brute: c must be nonzero");
    long c = std::labs(p.c);
    std::vector<CV> roots = root_table(c, p.c > 0 ? 1 : -1);
    CV s = 0;
    long a = ((p.a % c) + c) % c, b = ((p.b % c) + c) % c;
    // a n^2 + b n stepped incrementally: delta(n) = a(2n+1) + b
    long idx = 0, delta = (a + b) % c, ddelta = (2 * a) % c;
    for (long n = 0; n < c; ++n) {
        s += roots[idx];
        idx += delta; if (idx >= c) idx -= c;
        delta += ddelta; if (delta >= c) delta -= c;
    }
    return s;
}

inline CV gauss_brute(long a, long b, long c) { return gauss_brute(GaussSumParams{a, b, c}); }

namespace detail {
inline std::function<void(const GaussSumParams&)>& gauss_fallback_log() {
    static std::function<void(const GaussSumParams&)> log = [](const GaussSumParams&) {};
    return log;
}
} // namespace detail

// Closed-form evaluation by gcd pull-out, odd/even splitting, b = 0 formulas,
// and completing the square. Falls back to the brute sum (logged) if some
// case is ever left unhandled.
inline CV gauss_closed(const GaussSumParams& p) {
    long a = p.a, b = p.b, c = p.c;
    if (c < 1) throw std::invalid_argument("gauss_closed: c must be positive");
    a = ((a % c) + c) % c; b = ((b % c) + c) % c;
    if (c == 1) return 1;
    long g = std::gcd(a, c);
    if (a == 0) return b % c == 0 ? CV(c, 0) : CV(0, 0);
    if (g > 1) {
        if (b % g != 0) return 0;
        return (long double)g * gauss_closed({a / g, b / g, c / g});
    }
    // gcd(a,c) = 1
    if (b == 0) {
        if (c % 4 == 2) return 0;
        if (c % 2 == 1) return eps_d(c) * std::sqrt((long double)c) * (long double)kronecker(a, c);
        return CV(1, 1) / eps_d(a) * std::sqrt((long double)c) * (long double)kronecker(c, a);
    }
    if (c % 2 == 1) {
        long t = inv_mod(4 * a % c, c);
        return e_frac((long)(-(__int128)t * b % c * b % c), c) * gauss_closed({a, 0, c});
    }
    long nu = ord2(c), cp = c >> nu;
    if (cp > 1) {
        long P = 1L << nu;
        return gauss_closed({a * (P % cp) % cp, b % cp, cp}) *
               gauss_closed({a % P * (cp % P) % P, b % P, P});
    }
    // c = 2^nu, a odd
    if (nu == 1) return CV(1, 0) + e_frac(a + b, 2);
    if (b % 2 != 0) return 0;
    long t = (long)((__int128)(b / 2) * inv_mod(a, c) % c);
    return e_frac((long)(-(__int128)a * t % c * t % c), c) * gauss_closed({a, 0, c});
}

inline CV gauss_closed(long a, long b, long c) { return gauss_closed(GaussSumParams{a, b, c}); }

// Closed form for G(2 dbar, -r' + dbar, c), c = 2^nu c' with c' odd and
// d coprime to c (dbar = inverse of d mod c). The two-power part is the
// seven-case auxiliary factor; its last case carries amplitude sqrt(2^{nu+1})
// and the inverse of c' is taken mod 2^{nu-1}.
inline CV gauss_skew_closed(long d, long rprime, long c) {
    if (c < 1) throw std::invalid_argument("gauss_skew_closed: c must be positive");
    d = ((d % c) + c) % c;
    if (c > 1 && std::gcd(d, c) != 1) throw NotCoprime();
    long nu = ord2(c), cp = c >> nu;
    long dbar = c > 1 ? inv_mod(d, c) : 0;
    CV beta;
    if (nu == 0) beta = 1;
    else if (rprime % 2 == 0) return 0;
    else if (nu == 1) beta = 2;
    else if (nu == 2) beta = (dbar - rprime) % 4 == 0 ? CV(0, 0) : CV(4, 0);
    else {
        if ((dbar - rprime) % 4 != 0) return 0;
        long P = 1L << (nu - 1);
        long cbarp = inv_mod(cp % P, P);
        long diff = dbar - rprime;
        long t = (long)(((__int128)diff * diff / 16) % P);
        long arg = (long)(((-(__int128)cbarp * d % P * t) % P + P) % P);
        beta = CV(1, 1) * e_frac(arg, P) / eps_d(d * cp) *
               std::sqrt((long double)(4 * P)) * (long double)kronecker(P, cp * d);
    }
    if (beta == CV(0, 0)) return 0;
    CV main(1, 0);
    if (cp > 1) {
        long tb = pow_mod(inv_mod(2, cp), nu + 3, cp);
        long diff = ((dbar - rprime) % cp + cp) % cp;
        long arg = (long)(((-(__int128)tb * d % cp * diff % cp * diff) % cp + cp) % cp);
        long sym = (long)(((__int128)d << (nu + 1)) % cp);
        main = e_frac(arg, cp) * eps_d(cp) * std::sqrt((long double)cp) *
               (long double)kronecker(sym, cp);
    }
    return main * beta;
}

// f(c,a,r) = e_{4c}(-r)/sqrt(c) G(2a, a-r, c)
inline CV f_fun(long c, long a, long r) {
    if (c < 1) throw std::invalid_argument("f_fun: c must be positive");
    return e_rat(rq(-r, 4 * c)) / std::sqrt((long double)c) *
           gauss_brute(2 * a, a - r, c);
}

// F(c,a,r) = f(c,a,r) - f(c,a,-r); equals -2 g_0(c,a,r) for odd r
inline CV F_fun(long c, long a, long r) {
    if (c < 1) throw std::invalid_argument("F_fun: c must be positive");
    if (c > 1 && std::gcd(((a % c) + c) % c, c) != 1) throw NotCoprime();
    if (r % 2 == 0) throw EvenR();
    return f_fun(c, a, r) - f_fun(c, a, -r);
}

// vanishing-check variant: no parity restriction on r
inline CV F_fun_any_r(long c, long a, long r) { return f_fun(c, a, r) - f_fun(c, a, -r); }

// g_0(c,a,r) = i (-4|r) e_{8c}(abar (1-r^2)) e^{-3 pi i s(a,c)}, abar = a^{-1} mod c.
// (1-r^2)/8 is an integer for odd r, so the middle factor is e_c(abar (1-r^2)/8).
inline CV g0_fun(long c, long a, long r) {
    if (c < 1) throw std::invalid_argument("g0_fun: c must be positive");
    a = ((a % c) + c) % c;
    if (c > 1 && std::gcd(a, c) != 1) throw NotCoprime();
    if (r % 2 == 0) throw EvenR();
    long abar = c > 1 ? inv_mod(a, c) : 0;
    long t = (long)(((1 - (__int128)r * r) / 8) % c);
    Rat x = rq(-3, 2) * dedekind_s_fast(a, c) + rq((long)(((__int128)abar * t % c + c) % c), c);
    return CV(0, 1) * (long double)kronecker(-4, r) * e_rat(x);
}

// --- Jacobi-Kloosterman and classical Kloosterman sums --------------------

struct KloostermanParams {
    long n = 0, r = 1;        // fixed source index (n, r)
    long nprime = 1, rprime = 1;
    long c = 1;               // modulus, N | c
    long N = 1, h = 1;        // multiplier data
    long m = 2;               // Jacobi index
};

// K_c(n,r,n',r'; N|h) =
//   e_{2mc}(-r r') sum_{d (c)*, lam (c)} e^{-2 pi i c d/(N h)}
//                  e_c(dbar m lam^2 + n' d - r' lam + dbar n + dbar r lam)
inline CV kloosterman_jacobi(const KloostermanParams& p) {
    long c = p.c;
    if (c < 1) throw std::invalid_argument("kloosterman_jacobi: c must be positive");
    std::vector<CV> roots = root_table(c);
    long NH = p.N * p.h;
    CV tot = 0;
    for (long d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        long dbar = inv_mod(d, c);
        CV chi = e_rat(rq(-(((c % NH) * (d % NH)) % NH), NH));
        // x(lam) = dbar m lam^2 + (dbar r - r') lam + (n' d + dbar n), stepped
        long A = (long)((__int128)dbar * p.m % c);
        long B = (long)((((__int128)dbar * p.r - p.rprime) % c + c) % c);
        long idx = (long)((((__int128)p.nprime * d + (__int128)dbar * p.n) % c + c) % c);
        long delta = (A + B) % c, ddelta = (2 * A) % c;
        CV inner = 0;
        for (long lam = 0; lam < c; ++lam) {
            inner += roots[idx];
            idx += delta; if (idx >= c) idx -= c;
            delta += ddelta; if (delta >= c) delta -= c;
        }
        tot += chi * inner;
    }
    return e_rat(rq(-p.r * p.rprime, 2 * p.m * c)) * tot;
}

// Same sum with the inner Gauss sum replaced by its closed form;
// used where O(c) per modulus matters. Specialized to (n, r) = (0, 1).
inline CV kloosterman_jacobi_closed01(long nprime, long rprime, long c, long N, long h,
                                      long m = 2) {
    if (m != 2) throw std::invalid_argument("closed Kloosterman path is for index 2");
    long NH = N * h;
    CV tot = 0;
    for (long d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        CV chi = e_rat(rq(-(((c % NH) * (d % NH)) % NH), NH));
        CV inner = gauss_skew_closed(d, rprime, c);
        tot += chi * e_frac((long)((__int128)nprime * d % c), c) * inner;
    }
    return e_rat(rq(-rprime, 2 * m * c)) * tot;
}

// S(k, c, eps^{-3} rho_{N|h}) = sum_{d (c)*} e^{-3 pi i s(d,c)} e(-cd/(Nh)) e(kd/c)
inline CV kloosterman_classical(long k, long c, long N, long h) {
    if (c < 1) throw std::invalid_argument("kloosterman_classical: c must be positive");
    if (c == 1) return 1;
    long NH = N * h;
    CV tot = 0;
    for (long d = 1; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        Rat x = rq(-3, 2) * dedekind_s_fast(d, c) - rq(((c % NH) * (d % NH)) % NH, NH) +
                rq((long)((__int128)k * d % c), c);
        tot += e_rat(x);
    }
    return tot;
}

// (1/sqrt c)(K_c(0,1,n',r') - K_c(0,1,n',-r')) - 2 (-4|r') e(3/4) S((1-D')/8, c),
// D' = r'^2 - 8n'. The index (1-D')/8 extends (|D'|+1)/8 beyond D' < 0; the
// sign e(3/4) = -i is anchored by the c = 1 case.
inline CV reduction_identity_defect(long c, long nprime, long rprime, long N, long h) {
    if (c % N != 0) throw LevelMismatch();
    long Dp = rprime * rprime - 8 * nprime;
    if ((1 - Dp) % 8 != 0) throw ParityViolation();
    long k = (1 - Dp) / 8;
    KloostermanParams p{0, 1, nprime, rprime, c, N, h, 2};
    CV lhs = kloosterman_jacobi(p);
    p.rprime = -rprime;
    lhs -= kloosterman_jacobi(p);
    lhs /= std::sqrt((long double)c);
    CV rhs = 2.0L * (long double)kronecker(-4, rprime) * CV(0, -1) *
             kloosterman_classical(k, c, N, h);
    return lhs - rhs;
}

// --- pointwise evaluation (test oracles) ----------------------------------

// eta(tau) by the q-product; fine for Im tau bounded away from 0
inline CV eta_numeric(CV tau, int terms = 400) {
    CV q = std::exp(CV(0, 2 * kPi) * tau);
    CV out = std::exp(CV(0, 2 * kPi) * tau / 24.0L);
    CV qn = 1;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        out *= (CV(1, 0) - qn);
    }
    return out;
}

// E_2(tau) = 1 - 24 sum sigma_1(n) q^n
inline CV e2_numeric(CV tau, int terms = 260) {
    CV q = std::exp(CV(0, 2 * kPi) * tau);
    CV out = 1;
    CV qn = 1;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        long s = 0;
        for (long dd = 1; dd <= n; ++dd)
            if (n % dd == 0) s += dd;
        out -= 24.0L * (long double)s * qn;
    }
    return out;
}

} // namespace m24
