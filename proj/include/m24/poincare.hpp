#pragma once

#include <vector>

#include "m24/expsums.hpp"
#include "m24/jacseries.hpp"

namespace m24 {

struct NonpositiveArgument : std::domain_error {
    NonpositiveArgument() : std::domain_error("bessel: argument must be positive") {}
};
struct NonRealResult : std::runtime_error {
    NonRealResult() : std::runtime_error("poincare: coefficient has a non-real part") {}
};

enum class BesselKind { J, I };

// half-integer order Bessel functions in closed form
inline long double bessel_half(BesselKind kind, long double x) {
    if (!(x > 0)) throw NonpositiveArgument();
    long double pre = std::sqrt(2.0L / (kPi * x));
    return pre * (kind == BesselKind::J ? std::sin(x) : std::sinh(x));
}

// Gamma(1/2, x) = sqrt(pi) erfc(sqrt x)
inline long double inc_gamma_half(long double x) {
    if (x < 0) throw std::domain_error("inc_gamma_half: x must be >= 0");
    return std::sqrt(kPi) * std::erfc(std::sqrt(x));
}

struct PoincareRequest {
    long N = 1, h = 1;
    long nprime = 1;
    long rprime = 1;  // odd
    long Cmax = 2000;
    int precision = kPrecisionBits;

    void validate() const {
        long Dp = rprime * rprime - 8 * nprime;
        if (Dp >= 0) throw std::invalid_argument("poincare: need D' = r'^2 - 8n' < 0");
        if ((std::labs(Dp) + 1) % 8 != 0) throw ParityViolation();
        if (N < 1 || h < 1 || Cmax < N) throw std::invalid_argument("poincare: bad request");
    }
};

struct ConvergenceTrace {
    std::vector<std::pair<long, CV>> partials;  // (c, partial sum) in ascending c
    CV final{0, 0};
    long double stabilization = 0;  // max |partial - final| over the last quarter

    void finish() {
        if (partials.empty()) return;
        final = partials.back().second;
        stabilization = 0;
        for (size_t i = partials.size() - partials.size() / 4; i < partials.size(); ++i)
            stabilization = std::max(stabilization, std::abs(partials[i].second - final));
    }
};

// prefactor of the D' < 0 coefficient formula at weight 1, index 2, source (0,1):
// 2 sqrt(2) pi i^{-1} m^{-1/2} (|D'|/D)^{-1/4} = -2 pi i |D'|^{-1/4}
inline CV poincare_prefactor(long Dp) {
    return CV(0, -2.0L * kPi) * std::pow((long double)std::labs(Dp), -0.25L);
}

// One-sided coefficient b(n',r') of P^{(0,1)}_{1,2,N|h,3/4}: partial sums over
// N | c <= Cmax of c^{-3/2} K_c(0,1,n',r'; N|h) I_{1/2}(pi sqrt(|D'|)/(2c)).
// K_c comes from the closed-form Gauss-sum path (O(c) per modulus); `audit`
// switches to the O(c^2) brute double sum.
inline ConvergenceTrace poincare_b(long nprime, long rprime, const PoincareRequest& req,
                                   bool audit = false) {
    PoincareRequest r = req;
    r.nprime = nprime;
    r.rprime = rprime;
    r.validate();
    long Dp = rprime * rprime - 8 * nprime;
    long double sq = std::sqrt((long double)std::labs(Dp));
    CV pref = poincare_prefactor(Dp);
    ConvergenceTrace tr;
    CV acc = 0;
    for (long c = req.N; c <= req.Cmax; c += req.N) {
        CV K = audit ? kloosterman_jacobi({0, 1, nprime, rprime, c, req.N, req.h, 2})
                     : kloosterman_jacobi_closed01(nprime, rprime, c, req.N, req.h);
        acc += K * std::pow((long double)c, -1.5L) *
               bessel_half(BesselKind::I, kPi * sq / (2 * c));
        tr.partials.emplace_back(c, pref * acc);
    }
    tr.finish();
    return tr;
}

// D' > 0 companion (J-Bessel branch), same normalization with 1/Gamma(1/2)
inline ConvergenceTrace poincare_b_positive(long nprime, long rprime,
                                            const PoincareRequest& req) {
    long Dp = rprime * rprime - 8 * nprime;
    if (Dp <= 0) throw std::invalid_argument("poincare_b_positive: need D' > 0");
    long double sq = std::sqrt((long double)Dp);
    CV pref = poincare_prefactor(Dp) / std::sqrt(kPi);
    ConvergenceTrace tr;
    CV acc = 0;
    for (long c = req.N; c <= req.Cmax; c += req.N) {
        CV K = kloosterman_jacobi_closed01(nprime, rprime, c, req.N, req.h);
        acc += K * std::pow((long double)c, -1.5L) *
               bessel_half(BesselKind::J, kPi * sq / (2 * c));
        tr.partials.emplace_back(c, pref * acc);
    }
    tr.finish();
    return tr;
}

// c^{(1)}(n',r') = b(n',r') - b(n',-r'). The default path evaluates the
// antisymmetrized combination through the classical Kloosterman sums
// S((|D'|+1)/8, c, eps^{-3} rho_{N|h}) at O(c) Dedekind-sum cost per modulus;
// `audit` recomputes both one-sided sums from the brute double sums.
inline ConvergenceTrace poincare_c_trace(long nprime, long rprime, const PoincareRequest& req,
                                         bool audit = false) {
    PoincareRequest r = req;
    r.nprime = nprime;
    r.rprime = rprime;
    r.validate();
    long Dp = rprime * rprime - 8 * nprime;
    long k = (std::labs(Dp) + 1) / 8;
    long double sq = std::sqrt((long double)std::labs(Dp));
    ConvergenceTrace tr;
    if (audit) {
        ConvergenceTrace bp = poincare_b(nprime, rprime, req, true);
        ConvergenceTrace bm = poincare_b(nprime, -rprime, req, true);
        for (size_t i = 0; i < bp.partials.size(); ++i)
            tr.partials.emplace_back(bp.partials[i].first,
                                     bp.partials[i].second - bm.partials[i].second);
        tr.finish();
        return tr;
    }
    // -2 pi i |D'|^{-1/4} * sqrt(c) * 2 (-4|r') e(3/4) = -4 pi |D'|^{-1/4} (-4|r') / sqrt(c)
    long double pref = -4.0L * kPi * std::pow((long double)std::labs(Dp), -0.25L) *
                       (long double)kronecker(-4, rprime);
    CV acc = 0;
    for (long c = req.N; c <= req.Cmax; c += req.N) {
        CV S = kloosterman_classical(k, c, req.N, req.h);
        acc += S / (long double)c * bessel_half(BesselKind::I, kPi * sq / (2 * c));
        tr.partials.emplace_back(c, pref * acc);
    }
    tr.finish();
    return tr;
}

inline CV poincare_c(long nprime, long rprime, const PoincareRequest& req, bool audit = false,
                     long double reality_tol = 1e-6L) {
    ConvergenceTrace tr = poincare_c_trace(nprime, rprime, req, audit);
    if (std::abs(tr.final.imag()) > reality_tol) throw NonRealResult();
    return tr.final;
}

// numeric Poincare coefficient against the exact phi_g^+ coefficient
struct PoincareComparison {
    long double numeric = 0;
    Rat exact;
    long double difference = 0;
    ConvergenceTrace trace;
    bool rounds_to_exact = false;  // |numeric - exact| < 1/2 and stabilization < 1/4
};

inline PoincareComparison compare_exact(const ConjugacyClassData& cls, long nprime, long rprime,
                                        long Cmax) {
    PoincareRequest req;
    req.N = cls.n;
    req.h = cls.h;
    req.nprime = nprime;
    req.rprime = rprime;
    req.Cmax = Cmax;
    req.validate();
    PoincareComparison out;
    out.trace = poincare_c_trace(nprime, rprime, req);
    if (std::abs(out.trace.final.imag()) > 1e-6L) throw NonRealResult();
    out.numeric = out.trace.final.real();
    JacobiSeries phi = phi_g_holo(cls, Rat(nprime + 1));
    QI cf = phi.coefficient(Rat(nprime), Rat(rprime));
    if (cf.im != 0) throw NonRealResult();
    out.exact = cf.re;
    out.difference = std::abs(out.numeric - (long double)mpq_get_d(out.exact.get_mpq_t()));
    out.rounds_to_exact = out.difference < 0.5L && out.trace.stabilization < 0.25L;
    return out;
}

} // namespace m24
