#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "m24/rational.hpp"

namespace m24 {

// Element of Q(zeta_M) carried in the group ring Q[x]/(x^M - 1), x = e^{2 pi i/M},
// stored sparsely. Ring arithmetic is cheap here; deciding whether an element
// is zero as a NUMBER requires reduction mod the M-th cyclotomic polynomial,
// which only the canonicalization entry points perform.
class Cyclo {
public:
    Cyclo() : mod_(1) {}
    explicit Cyclo(long v) : mod_(1) { if (v != 0) c_[0] = Rat(v); }
    explicit Cyclo(const Rat& v) : mod_(1) { if (v != 0) c_[0] = v; }

    static Cyclo zeta_power(long M, long k) {
        Cyclo z;
        z.mod_ = M;
        z.c_[((k % M) + M) % M] = Rat(1);
        return z;
    }
    static Cyclo scaled_root(long M, long k, const Rat& w) {
        Cyclo z;
        z.mod_ = M;
        if (w != 0) z.c_[((k % M) + M) % M] = w;
        return z;
    }

    long modulus() const { return mod_; }
    const std::map<long, Rat>& coeffs() const { return c_; }

    // structural zero in the group ring (sufficient, not necessary, for zero value)
    bool is_zero() const { return c_.empty(); }

    // number of stored monomials
    size_t size() const { return c_.size(); }

    Cyclo promoted(long M) const {
        if (M == mod_) return *this;
        if (M % mod_ != 0) throw std::invalid_argument("cyclo: modulus must refine");
        Cyclo out;
        out.mod_ = M;
        long f = M / mod_;
        for (const auto& [k, v] : c_) out.c_[k * f] = v;
        return out;
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        long M = lcm_ll(a.mod_, b.mod_);
        Cyclo x = a.promoted(M), y = b.promoted(M);
        for (const auto& [k, v] : y.c_) {
            auto [it, fresh] = x.c_.try_emplace(k, v);
            if (!fresh) {
                it->second += v;
                if (it->second == 0) x.c_.erase(it);
            }
        }
        return x;
    }

    Cyclo operator-() const {
        Cyclo out;
        out.mod_ = mod_;
        for (const auto& [k, v] : c_) out.c_[k] = -v;
        return out;
    }

    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

    Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        long M = lcm_ll(a.mod_, b.mod_);
        Cyclo x = a.promoted(M), y = b.promoted(M);
        Cyclo out;
        out.mod_ = M;
        for (const auto& [k1, v1] : x.c_)
            for (const auto& [k2, v2] : y.c_) {
                long k = k1 + k2;
                if (k >= M) k -= M;
                Rat w = v1 * v2;
                auto [it, fresh] = out.c_.try_emplace(k, w);
                if (!fresh) {
                    it->second += w;
                    if (it->second == 0) out.c_.erase(it);
                }
            }
        return out;
    }

    friend Cyclo operator*(const Rat& a, const Cyclo& b) {
        Cyclo out;
        out.mod_ = b.mod_;
        if (a == 0) return out;
        for (const auto& [k, v] : b.c_) out.c_[k] = a * v;
        return out;
    }

    // group-ring comparison; canonical equality is `(a-b).is_zero_value()`
    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        long M = lcm_ll(a.mod_, b.mod_);
        return a.promoted(M).c_ == b.promoted(M).c_;
    }

    // inverse of a monomial w x^k; anything else is not needed upstream
    Cyclo inverse() const {
        if (c_.size() != 1) throw std::domain_error("cyclo: inverse only for monomials");
        auto [k, v] = *c_.begin();
        if (v == 0) throw std::domain_error("cyclo: inverse of zero");
        return scaled_root(mod_, (mod_ - k) % mod_, Rat(1) / v);
    }

    // --- canonical (number-level) queries ---------------------------------

    // remainder of the dense polynomial mod Phi_M; canonical coordinates
    std::vector<Rat> canonical() const {
        const std::vector<Rat>& phi = cyclotomic_poly(mod_);
        size_t deg = phi.size() - 1;  // monic of degree phi(M)
        std::vector<Rat> r(mod_ > 1 ? (size_t)mod_ : 1, Rat(0));
        for (const auto& [k, v] : c_) r[(size_t)k] = v;
        for (size_t i = r.size(); i-- > deg;) {
            if (r[i] == 0) continue;
            Rat f = r[i];
            r[i] = 0;
            for (size_t j = 0; j < deg; ++j)
                if (phi[j] != 0) r[i - deg + j] -= f * phi[j];
        }
        r.resize(deg);
        return r;
    }

    bool is_zero_value() const {
        if (c_.empty()) return true;
        for (const auto& v : canonical())
            if (v != 0) return false;
        return true;
    }

    // exact rational value, if the element is rational
    std::optional<Rat> to_rational() const {
        std::vector<Rat> r = canonical();
        for (size_t i = 1; i < r.size(); ++i)
            if (r[i] != 0) return std::nullopt;
        return r.empty() ? Rat(0) : r[0];
    }

    // numeric value (for cross-checks against pointwise evaluation)
    std::complex<long double> numeric() const {
        std::complex<long double> s = 0;
        for (const auto& [k, v] : c_) {
            long double t = 2.0L * 3.14159265358979323846264338327950288L * k / mod_;
            s += (long double)mpq_get_d(v.get_mpq_t()) *
                 std::complex<long double>(std::cos(t), std::sin(t));
        }
        return s;
    }

    // Phi_M as dense monic integer polynomial (cached), via
    // Phi_M(x) = prod_{d | M} (x^d - 1)^{mu(M/d)}
    static const std::vector<Rat>& cyclotomic_poly(long M) {
        static std::map<long, std::vector<Rat>> cache;
        auto it = cache.find(M);
        if (it != cache.end()) return it->second;
        auto mul_xd_minus_1 = [](std::vector<Rat>& p, long d) {
            std::vector<Rat> q(p.size() + (size_t)d, Rat(0));
            for (size_t i = 0; i < p.size(); ++i) {
                q[i + (size_t)d] += p[i];
                q[i] -= p[i];
            }
            p = std::move(q);
        };
        auto div_xd_minus_1 = [](std::vector<Rat>& p, long d) {
            // exact division by x^d - 1
            std::vector<Rat> q(p.size() - (size_t)d, Rat(0));
            for (size_t i = p.size(); i-- > (size_t)d;) {
                Rat f = p[i];
                if (f == 0) continue;
                q[i - (size_t)d] = f;
                p[i] -= f;
                p[i - (size_t)d] += f;
            }
            p.resize((size_t)d);
            for (const auto& v : p)
                if (v != 0) throw std::logic_error("cyclo: inexact division");
            p = std::move(q);
        };
        auto mu = [](long n) {
            int m = 1;
            for (long p = 2; p * p <= n; ++p)
                if (n % p == 0) {
                    n /= p;
                    if (n % p == 0) return 0;
                    m = -m;
                }
            if (n > 1) m = -m;
            return m;
        };
        std::vector<Rat> poly{Rat(1)};
        for (long d = 1; d <= M; ++d) {
            if (M % d != 0) continue;
            if (mu(M / d) == 1) mul_xd_minus_1(poly, d);
        }
        for (long d = 1; d <= M; ++d) {
            if (M % d != 0) continue;
            if (mu(M / d) == -1) div_xd_minus_1(poly, d);
        }
        return cache.emplace(M, std::move(poly)).first->second;
    }

    // exact sqrt(n) for positive integer n, inside Q(zeta_M) with 8n' | M
    // (n' the squarefree part): Gauss-sum construction per prime.
    static Cyclo sqrt_int(long n, long M) {
        if (n <= 0) throw std::invalid_argument("cyclo sqrt: n must be positive");
        Cyclo out = scaled_root(M, 0, Rat(1));
        long rest = n;
        // pull out the square part
        long sq = 1;
        for (long p = 2; p * p <= rest; ++p)
            while (rest % (p * p) == 0) { rest /= p * p; sq *= p; }
        out = Rat(sq) * out;
        if (rest % 2 == 0) {
            // sqrt(2) = zeta_8 + zeta_8^{-1}
            if (M % 8 != 0) throw std::invalid_argument("cyclo sqrt: need 8 | M");
            out = out * (zeta_power(M, M / 8) + zeta_power(M, M - M / 8));
            rest /= 2;
        }
        for (long p = 3; p <= rest; p += 2) {
            if (rest % p != 0) continue;
            rest /= p;
            if (M % (4 * p) != 0) throw std::invalid_argument("cyclo sqrt: need 4p | M");
            // quadratic Gauss sum g_p = sum_j zeta_p^{j^2} = sqrt(p) or i sqrt(p)
            Cyclo g;
            g.mod_ = M;
            for (long j = 0; j < p; ++j) {
                long k = (long)((__int128)j * j % p) * (M / p);
                auto [it, fresh] = g.c_.try_emplace(k, Rat(1));
                if (!fresh) it->second += 1;
            }
            if (p % 4 == 3) g = g * zeta_power(M, M - M / 4);  // divide by i
            out = out * g;
        }
        return out;
    }

private:
    long mod_;
    std::map<long, Rat> c_;
};

} // namespace m24
