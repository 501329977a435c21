#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "m24/gaussian.hpp"
#include "m24/rational.hpp"

namespace m24 {

struct ZeroSeries : std::domain_error {
    ZeroSeries() : std::domain_error("qseries: inverse of zero series") {}
};
struct NonInvertibleLeadingCoefficient : std::domain_error {
    NonInvertibleLeadingCoefficient()
        : std::domain_error("qseries: leading coefficient not invertible") {}
};

// Truncated formal series sum c_k q^{k/denom}, exact for exponents < trunc.
// Zero coefficients are never stored.
template <class C>
class QSeries {
public:
    QSeries() : denom_(1), trunc_(0) {}
    QSeries(long denom, const Rat& trunc) : denom_(denom), trunc_(trunc) {
        if (denom <= 0) throw std::invalid_argument("qseries: denom must be positive");
    }

    static QSeries zero(const Rat& trunc, long denom = 1) { return QSeries(denom, trunc); }

    static QSeries monomial(const C& c, const Rat& exponent, const Rat& trunc) {
        long d = lcm_ll(to_ll(exponent.get_den()), 1);
        QSeries s(d, trunc);
        s.set(exponent, c);
        return s;
    }

    static QSeries constant(const C& c, const Rat& trunc) {
        return monomial(c, Rat(0), trunc);
    }

    long denom() const { return denom_; }
    const Rat& trunc() const { return trunc_; }
    const std::map<long, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat exponent_of(long key) const { return rq(key, denom_); }

    std::optional<Rat> valuation() const {
        if (terms_.empty()) return std::nullopt;
        return rq(terms_.begin()->first, denom_);
    }

    // valuation if nonzero, else trunc (lower bound on any possible valuation)
    Rat valuation_or_trunc() const {
        auto v = valuation();
        return v ? *v : trunc_;
    }

    C coefficient(const Rat& e) const {
        Rat scaled = e * denom_;
        if (scaled.get_den() != 1) return C();
        auto it = terms_.find(to_ll(scaled.get_num()));
        return it == terms_.end() ? C() : it->second;
    }

    void set(const Rat& e, const C& c) {
        Rat scaled = e * denom_;
        if (scaled.get_den() != 1)
            throw std::invalid_argument("qseries: exponent off the lattice");
        if (e >= trunc_) return;
        long k = to_ll(scaled.get_num());
        if (c.is_zero()) terms_.erase(k);
        else terms_[k] = c;
    }

    void add_to(const Rat& e, const C& c) {
        Rat scaled = e * denom_;
        if (scaled.get_den() != 1)
            throw std::invalid_argument("qseries: exponent off the lattice");
        if (e >= trunc_) return;
        long k = to_ll(scaled.get_num());
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    QSeries rescaled(long newden) const {
        if (newden == denom_) return *this;
        if (newden % denom_ != 0)
            throw std::invalid_argument("qseries: lattice refinement must be a multiple");
        QSeries out(newden, trunc_);
        long f = newden / denom_;
        for (const auto& [k, c] : terms_) out.terms_.emplace(k * f, c);
        return out;
    }

    QSeries truncated(const Rat& t) const {
        QSeries out(denom_, std::min(t, trunc_));
        for (const auto& [k, c] : terms_) {
            if (rq(k, denom_) < out.trunc_) out.terms_.emplace(k, c);
        }
        return out;
    }

    // q -> q^M (exponent dilation; truncation scales with it)
    QSeries dilated(long M) const {
        QSeries out(denom_, trunc_ * M);
        for (const auto& [k, c] : terms_) out.terms_.emplace(k * M, c);
        return out;
    }

    // multiply by the monomial c*q^e
    QSeries shifted(const Rat& e, const C& c = C(1)) const {
        long d = lcm_ll(denom_, to_ll(e.get_den()));
        QSeries self = rescaled(d);
        QSeries out(d, trunc_ + e);
        long off = to_ll(Rat(e * d).get_num());
        for (const auto& [k, v] : self.terms_) {
            C w = v * c;
            if (!w.is_zero()) out.terms_.emplace(k + off, w);
        }
        return out;
    }

    QSeries operator-() const {
        QSeries out(denom_, trunc_);
        for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
        return out;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        long d = lcm_ll(a.denom_, b.denom_);
        QSeries x = a.rescaled(d), y = b.rescaled(d);
        QSeries out(d, std::min(a.trunc_, b.trunc_));
        for (const auto& [k, c] : x.terms_)
            if (rq(k, d) < out.trunc_) out.terms_[k] = c;
        for (const auto& [k, c] : y.terms_) {
            if (rq(k, d) >= out.trunc_) continue;
            auto [it, fresh] = out.terms_.try_emplace(k, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
        return out;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        long d = lcm_ll(a.denom_, b.denom_);
        QSeries x = a.rescaled(d), y = b.rescaled(d);
        // trunc = min(t1 + v2, t2 + v1), valuations falling back to trunc
        Rat t = std::min(a.trunc_ + b.valuation_or_trunc(), b.trunc_ + a.valuation_or_trunc());
        QSeries out(d, t);
        Rat tk = t * d;
        for (const auto& [k1, c1] : x.terms_)
            for (const auto& [k2, c2] : y.terms_) {
                long k = k1 + k2;
                if (Rat(k) >= tk) continue;
                C w = c1 * c2;
                if (w.is_zero()) continue;
                auto [it, fresh] = out.terms_.try_emplace(k, w);
                if (!fresh) {
                    it->second += w;
                    if (it->second.is_zero()) out.terms_.erase(it);
                }
            }
        return out;
    }

    QSeries operator*(const C& c) const {
        QSeries out(denom_, trunc_);
        if (c.is_zero()) return out;
        for (const auto& [k, v] : terms_) {
            C w = v * c;
            if (!w.is_zero()) out.terms_.emplace(k, w);
        }
        return out;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        Rat t = std::min(a.trunc_, b.trunc_);
        long d = lcm_ll(a.denom_, b.denom_);
        QSeries x = a.rescaled(d).truncated(t), y = b.rescaled(d).truncated(t);
        return x.terms_ == y.terms_;
    }

    // a * inv(a) = 1 up to truncation; needs invertible leading coefficient.
    QSeries inverse() const {
        if (terms_.empty()) throw ZeroSeries();
        auto lead = terms_.begin();
        long vk = lead->first;
        C lc = lead->second;
        C lcinv;
        try {
            lcinv = lc.inverse();
        } catch (const std::domain_error&) {
            throw NonInvertibleLeadingCoefficient();
        }
        Rat v(vk, denom_);
        // relative expansion: a = lc q^v (1 + u), inv = (1/lc) q^{-v} sum (-u)^k
        Rat rel = trunc_ - v;                  // relative exactness of (1 + u)
        QSeries u(denom_, rel);
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            u.terms_.emplace(it->first - vk, lcinv * it->second);
        QSeries acc = QSeries::constant(C(1), rel);
        if (!u.terms_.empty()) {
            Rat uval = *u.valuation();
            QSeries pow = QSeries::constant(C(1), rel);
            long steps = 1;
            // u^k has valuation >= k*uval; stop once that clears rel
            while (Rat(steps) * uval < rel) ++steps;
            QSeries mu = -u;
            for (long k = 0; k < steps; ++k) {
                pow = pow * mu;
                pow.trunc_ = rel;  // relative order is what we track here
                if (pow.is_zero()) break;
                acc = acc + pow;
                acc.trunc_ = rel;
            }
        }
        return acc.shifted(-v, lcinv).truncated(trunc_ - 2 * v);
    }

private:
    long denom_;
    Rat trunc_;
    std::map<long, C> terms_;
};

using RatSeries = QSeries<QI>;

// --- builders ----------------------------------------------------------

// Euler product prod_{n>=1} (1 - q^n) to relative order `order` (exponent 0 part only).
template <class C = QI>
QSeries<C> euler_product(const Rat& order) {
    QSeries<C> p = QSeries<C>::constant(C(1), order);
    for (long n = 1; Rat(n) < order; ++n) {
        QSeries<C> f = QSeries<C>::constant(C(1), order);
        f.set(Rat(n), C(-1));
        p = p * f;
        // product of exact-to-`order` factors with unit constant stays exact to `order`
    }
    return p.truncated(order);
}

// eta(tau)^e = q^{e/24} prod (1-q^n)^e, truncated at `order`; valuation e/24.
template <class C = QI>
QSeries<C> eta_power(long e, const Rat& order) {
    Rat val = rq(e, 24);
    if (e == 0) return QSeries<C>::constant(C(1), order);
    Rat rel = order - val;
    if (rel <= 0) return QSeries<C>::zero(order, 24);
    QSeries<C> p = euler_product<C>(rel);
    QSeries<C> pe = QSeries<C>::constant(C(1), rel);
    long k = e > 0 ? e : -e;
    for (long i = 0; i < k; ++i) pe = pe * p;
    if (e < 0) pe = pe.inverse();
    return pe.shifted(val).rescaled(lcm_ll(pe.denom(), 24)).truncated(order);
}

inline Rat sigma1(long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return Rat(s);
}

// E_2 = 1 - 24 sum sigma_1(n) q^n
template <class C = QI>
QSeries<C> eisenstein_e2(const Rat& order) {
    QSeries<C> s = QSeries<C>::constant(C(1), order);
    for (long n = 1; Rat(n) < order; ++n) s.set(Rat(n), C(Rat(-24) * sigma1(n)));
    return s;
}

// F_2^{(2)} = sum_{r>s>0, r-s odd} (-1)^r s q^{rs/2}
template <class C = QI>
QSeries<C> f2_2(const Rat& order) {
    QSeries<C> out(2, order);
    for (long r = 2; rq(r, 2) < order; ++r)
        for (long s = 1; s < r; ++s) {
            if ((r - s) % 2 == 0) continue;
            Rat e = rq(static_cast<long>(r) * s, 2);
            if (e >= order) break;
            out.add_to(e, C(Rat(r % 2 == 0 ? s : -s)));
        }
    return out;
}

// Lambda_M = M(M-1)/24 + M sum_{k>0} sigma_1(k) (q^k - M q^{Mk}),  M >= 2
template <class C = QI>
QSeries<C> lambda_m(long M, const Rat& order) {
    if (M < 2) throw std::invalid_argument("lambda_m: M must be >= 2");
    QSeries<C> out(24, order);
    out.set(Rat(0), C(rq(static_cast<long>(M) * (M - 1), 24)));
    for (long k = 1; Rat(k) < order; ++k) {
        Rat w = Rat(M) * sigma1(k);
        out.add_to(Rat(k), C(w));
        if (Rat(M * k) < order) out.add_to(Rat(M * k), C(-Rat(M) * w));
    }
    return out;
}

// Finite product scalar * prod_i eta(M_i tau)^{e_i}.
struct EtaQuotientSpec {
    struct Factor {
        long scale;     // M
        long exponent;  // e
    };
    std::vector<Factor> factors;
    Rat scalar{1};

    // total weight in half-integers: sum e_i / 2
    Rat weight() const {
        long s = 0;
        for (const auto& f : factors) s += f.exponent;
        return rq(s, 2);
    }

    Rat valuation() const {
        Rat v(0);
        for (const auto& f : factors) v += rq(f.exponent * f.scale, 24);
        return v;
    }
};

template <class C = QI>
QSeries<C> eta_quotient(const EtaQuotientSpec& spec, const Rat& order) {
    if (spec.scalar == 0) return QSeries<C>::zero(order, 24);
    // pad each factor so the tracked product truncation still clears `order`
    // after the negative-valuation factors pull it down
    Rat slack(0);
    for (const auto& f : spec.factors)
        if (f.exponent * f.scale < 0) slack += rq(-f.exponent * f.scale, 24);
    Rat t = order + slack + 1;
    QSeries<C> out = QSeries<C>::constant(C(spec.scalar), t);
    for (const auto& f : spec.factors) {
        QSeries<C> base = eta_power<C>(f.exponent, t / f.scale + 1).dilated(f.scale);
        out = out * base;
    }
    if (out.trunc() < order) throw std::logic_error("eta_quotient: truncation bookkeeping");
    return out.truncated(order);
}

} // namespace m24
