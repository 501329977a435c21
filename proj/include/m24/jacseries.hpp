#pragma once

#include <climits>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>

#include "m24/mockforms.hpp"
#include "m24/qseries.hpp"

namespace m24 {

struct BandTooNarrow : std::runtime_error {
    BandTooNarrow() : std::runtime_error("jacobi series: zeta band too narrow") {}
};
struct FractionalZExponent : std::domain_error {
    FractionalZExponent() : std::domain_error("jacobi series: fractional zeta exponent") {}
};

// Bivariate series sum_{n,r} c(n,r) q^n zeta^r with exact Q(i) coefficients.
// q-exponents live on (1/qdenom)Z and are exact below trunc; zeta-exponents
// live on (1/2)Z. A series is either exact (every nonzero term stored) or
// banded: coefficients with |zeta-exponent| <= band/2 are stored and correct,
// anything beyond is unknown.
class JacobiSeries {
public:
    static constexpr long kZDen = 2;

    JacobiSeries() : qdenom_(1), trunc_(0) {}
    JacobiSeries(long qdenom, const Rat& trunc) : qdenom_(qdenom), trunc_(trunc) {
        if (qdenom <= 0) throw std::invalid_argument("jacobi series: qdenom must be positive");
    }

    long qdenom() const { return qdenom_; }
    long zdenom() const { return kZDen; }
    const Rat& trunc() const { return trunc_; }
    std::optional<long> band() const { return band_; }  // in z-lattice units
    const std::map<long, std::map<long, QI>>& rows() const { return rows_; }
    bool is_zero() const { return rows_.empty(); }

    void set_band(std::optional<long> b) {
        band_ = b;
        if (b) clip(*b);
    }

    // c * q^{qe} zeta^{ze}
    void add_term(const Rat& qe, const Rat& ze, const QI& c) {
        if (c.is_zero() || qe >= trunc_) return;
        Rat qs = qe * qdenom_, zs = ze * kZDen;
        if (qs.get_den() != 1 || zs.get_den() != 1)
            throw std::invalid_argument("jacobi series: exponent off the lattice");
        long zk = to_ll(zs.get_num());
        if (band_ && std::labs(zk) > *band_) return;
        auto& row = rows_[to_ll(qs.get_num())];
        auto [it, fresh] = row.try_emplace(zk, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) row.erase(it);
        }
        if (row.empty()) rows_.erase(to_ll(qs.get_num()));
    }

    QI coefficient(const Rat& qe, const Rat& ze) const {
        Rat qs = qe * qdenom_, zs = ze * kZDen;
        if (qs.get_den() != 1 || zs.get_den() != 1) return QI();
        long zk = to_ll(zs.get_num());
        if (band_ && std::labs(zk) > *band_) throw BandTooNarrow();
        auto it = rows_.find(to_ll(qs.get_num()));
        if (it == rows_.end()) return QI();
        auto jt = it->second.find(zk);
        return jt == it->second.end() ? QI() : jt->second;
    }

    std::optional<Rat> valuation() const {
        if (rows_.empty()) return std::nullopt;
        return rq(rows_.begin()->first, qdenom_);
    }
    Rat valuation_or_trunc() const {
        auto v = valuation();
        return v ? *v : trunc_;
    }

    long max_abs_zkey() const {
        long m = 0;
        for (const auto& [qk, row] : rows_) {
            if (!row.empty())
                m = std::max({m, std::labs(row.begin()->first), std::labs(row.rbegin()->first)});
        }
        return m;
    }

    JacobiSeries rescaled(long newqden) const {
        if (newqden == qdenom_) return *this;
        if (newqden % qdenom_ != 0)
            throw std::invalid_argument("jacobi series: lattice refinement must be a multiple");
        JacobiSeries out(newqden, trunc_);
        out.band_ = band_;
        long f = newqden / qdenom_;
        for (const auto& [qk, row] : rows_) out.rows_.emplace(qk * f, row);
        return out;
    }

    JacobiSeries truncated(const Rat& t) const {
        JacobiSeries out(qdenom_, std::min(t, trunc_));
        out.band_ = band_;
        for (const auto& [qk, row] : rows_)
            if (rq(qk, qdenom_) < out.trunc_) out.rows_.emplace(qk, row);
        return out;
    }

    JacobiSeries operator-() const {
        JacobiSeries out(qdenom_, trunc_);
        out.band_ = band_;
        for (const auto& [qk, row] : rows_) {
            auto& r = out.rows_[qk];
            for (const auto& [zk, c] : row) r.emplace(zk, -c);
        }
        return out;
    }

    JacobiSeries operator*(const QI& c) const {
        JacobiSeries out(qdenom_, trunc_);
        out.band_ = band_;
        if (c.is_zero()) return out;
        for (const auto& [qk, row] : rows_) {
            auto& r = out.rows_[qk];
            for (const auto& [zk, v] : row) {
                QI w = v * c;
                if (!w.is_zero()) r.emplace(zk, w);
            }
            if (r.empty()) out.rows_.erase(qk);
        }
        return out;
    }

    // multiply by the monomial q^{qe} zeta^{ze}
    JacobiSeries shifted(const Rat& qe, const Rat& ze = Rat(0)) const {
        long d = lcm_ll(qdenom_, to_ll(Rat(qe).get_den()));
        JacobiSeries self = rescaled(d);
        Rat zs = ze * kZDen;
        if (zs.get_den() != 1) throw std::invalid_argument("jacobi series: zeta shift off lattice");
        long zoff = to_ll(zs.get_num());
        long qoff = to_ll(Rat(qe * d).get_num());
        JacobiSeries out(d, trunc_ + qe);
        out.band_ = band_;  // note: a zeta shift skews the trusted window; callers
                            // only shift exact series or recheck the band afterwards
        for (const auto& [qk, row] : self.rows_) {
            auto& r = out.rows_[qk + qoff];
            for (const auto& [zk, c] : row) r.emplace(zk + zoff, c);
        }
        return out;
    }

    friend JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) {
        long d = lcm_ll(a.qdenom_, b.qdenom_);
        JacobiSeries x = a.rescaled(d), y = b.rescaled(d);
        JacobiSeries out(d, std::min(a.trunc_, b.trunc_));
        if (a.band_ || b.band_) {
            long m = std::min(a.band_.value_or(LONG_MAX), b.band_.value_or(LONG_MAX));
            out.band_ = m;
        }
        out.rows_ = x.rows_;
        for (const auto& [qk, row] : y.rows_)
            for (const auto& [zk, c] : row) {
                auto& r = out.rows_[qk];
                auto [it, fresh] = r.try_emplace(zk, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) r.erase(it);
                }
            }
        out.prune();
        if (out.band_) out.clip(*out.band_);
        return out;
    }

    friend JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) {
        return a + (-b);
    }

    // Product with band bookkeeping. Banded x banded is not defined here;
    // the Appell builder handles that case internally with a working band.
    friend JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b) {
        if (a.band_ && b.band_) throw BandTooNarrow();
        std::optional<long> band;
        if (a.band_) {
            band = *a.band_ - b.max_abs_zkey();
            if (*band < 0) throw BandTooNarrow();
        } else if (b.band_) {
            band = *b.band_ - a.max_abs_zkey();
            if (*band < 0) throw BandTooNarrow();
        }
        JacobiSeries out = mul_clipped(a, b, band.value_or(-1));
        out.band_ = band;
        return out;
    }

    // Raw convolution; wband < 0 means unbounded, otherwise rows are clipped
    // to |zkey| <= wband with no trust attached.
    static JacobiSeries mul_clipped(const JacobiSeries& a, const JacobiSeries& b, long wband) {
        long d = lcm_ll(a.qdenom_, b.qdenom_);
        JacobiSeries x = a.rescaled(d), y = b.rescaled(d);
        Rat t = std::min(a.trunc_ + b.valuation_or_trunc(), b.trunc_ + a.valuation_or_trunc());
        JacobiSeries out(d, t);
        Rat tk = t * d;
        for (const auto& [q1, row1] : x.rows_)
            for (const auto& [q2, row2] : y.rows_) {
                long qk = q1 + q2;
                if (Rat(qk) >= tk) continue;
                auto& r = out.rows_[qk];
                for (const auto& [z1, c1] : row1)
                    for (const auto& [z2, c2] : row2) {
                        long zk = z1 + z2;
                        if (wband >= 0 && std::labs(zk) > wband) continue;
                        QI w = c1 * c2;
                        if (w.is_zero()) continue;
                        auto [it, fresh] = r.try_emplace(zk, w);
                        if (!fresh) {
                            it->second += w;
                            if (it->second.is_zero()) r.erase(it);
                        }
                    }
            }
        out.prune();
        return out;
    }

    friend bool operator==(const JacobiSeries& a, const JacobiSeries& b) {
        Rat t = std::min(a.trunc_, b.trunc_);
        long d = lcm_ll(a.qdenom_, b.qdenom_);
        JacobiSeries x = a.rescaled(d).truncated(t), y = b.rescaled(d).truncated(t);
        return x.rows_ == y.rows_;
    }

private:
    void prune() {
        for (auto it = rows_.begin(); it != rows_.end();)
            it = it->second.empty() ? rows_.erase(it) : std::next(it);
    }
    void clip(long b) {
        for (auto& [qk, row] : rows_)
            for (auto it = row.begin(); it != row.end();)
                it = std::labs(it->first) > b ? row.erase(it) : std::next(it);
        prune();
    }

    long qdenom_;
    Rat trunc_;
    std::optional<long> band_;
    std::map<long, std::map<long, QI>> rows_;
};

inline JacobiSeries from_qseries(const RatSeries& s) {
    JacobiSeries out(s.denom(), s.trunc());
    for (const auto& [k, c] : s.terms()) out.add_term(rq(k, s.denom()), Rat(0), c);
    return out;
}

// All terms with positive discriminant D = r^2 - 4 m n.
struct PrincipalPart {
    struct Term {
        Rat n;
        long r;
        QI coeff;
    };
    long index = 0;
    std::vector<Term> terms;
};

inline PrincipalPart principal_part(const JacobiSeries& phi, long m) {
    if (phi.band() && phi.max_abs_zkey() >= *phi.band()) throw BandTooNarrow();
    PrincipalPart out;
    out.index = m;
    for (const auto& [qk, row] : phi.rows()) {
        Rat n = rq(qk, phi.qdenom());
        for (const auto& [zk, c] : row) {
            if (zk % JacobiSeries::kZDen != 0) throw FractionalZExponent();
            long r = zk / JacobiSeries::kZDen;
            if (Rat(r) * r - Rat(4 * m) * n > 0) out.terms.push_back({n, r, c});
        }
    }
    return out;
}

// zeta -> 1 (sums each row)
inline RatSeries specialize_z0(const JacobiSeries& phi) {
    if (phi.band() && phi.max_abs_zkey() >= *phi.band()) throw BandTooNarrow();
    RatSeries out(phi.qdenom(), phi.trunc());
    for (const auto& [qk, row] : phi.rows()) {
        QI s;
        for (const auto& [zk, c] : row) s += c;
        if (!s.is_zero()) out.set(rq(qk, phi.qdenom()), s);
    }
    return out;
}

// theta_{kappa,m}^{(r)} = sum_l q^{l^2 m} zeta^{2ml} (q^{rl} zeta^r + (-1)^kappa q^{-rl} zeta^{-r})
inline JacobiSeries theta_kmr(long kappa, long m, long r, const Rat& order) {
    if (m <= 0) throw std::invalid_argument("theta_kmr: index must be positive");
    JacobiSeries out(1, order);
    QI sign = (kappa % 2 == 0) ? QI(1) : QI(-1);
    // m l^2 - |r l| >= order for every |l| > lmax
    double ord = std::max(1.0, mpq_get_d(Rat(order).get_mpq_t()));
    long lmax = (long)((std::labs(r) + std::sqrt((double)r * r + 4.0 * m * ord)) / (2 * m)) + 2;
    for (long lam = -lmax; lam <= lmax; ++lam) {
        Rat sq = Rat(lam) * lam * m;
        out.add_term(sq + Rat(r) * lam, Rat(2 * m * lam + r), QI(1));
        out.add_term(sq - Rat(r) * lam, Rat(2 * m * lam - r), sign);
    }
    return out;
}

// theta_1 = i sum_n (-1)^n zeta^{n+1/2} q^{(n+1/2)^2/2}
inline JacobiSeries theta1(const Rat& order) {
    JacobiSeries out(8, order);
    for (long n = 0;; ++n) {
        bool any = false;
        for (long k : {n, -n - 1}) {
            Rat e = rq((2 * k + 1) * (2 * k + 1), 8);
            if (e < order) {
                out.add_term(e, rq(2 * k + 1, 2), k % 2 == 0 ? QI::i_unit() : -QI::i_unit());
                any = true;
            }
        }
        if (!any) break;
    }
    return out;
}

namespace detail {

// sum part of the Lerch sum: S = sum_n (-1)^n q^{n(n+1)/2} zeta^n / (1 - zeta q^n),
// expanded for |q| < |zeta| < 1, rows clipped to |zeta-exp| <= zcap.
inline JacobiSeries appell_sum_part(const Rat& order, long zcap) {
    JacobiSeries out(1, order);
    // n = 0: geometric series in zeta at the q^0 row
    for (long j = 0; j <= zcap; ++j) out.add_term(Rat(0), Rat(j), QI(1));
    // n >= 1: (-1)^n sum_j q^{n(n+1)/2 + nj} zeta^{n+j}
    for (long n = 1; rq(n * (n + 1), 2) < order; ++n) {
        QI c = n % 2 == 0 ? QI(1) : QI(-1);
        for (long j = 0; rq(n * (n + 1), 2) + Rat(n) * j < order && n + j <= zcap; ++j)
            out.add_term(rq(n * (n + 1), 2) + Rat(n) * j, Rat(n + j), c);
    }
    // n <= -1: (-1)^{n+1} sum_j q^{n(n+1)/2 - n(1+j)} zeta^{n-1-j}
    for (long n = -1; rq(n * (n + 1), 2) - Rat(n) < order; --n) {
        QI c = n % 2 == 0 ? QI(-1) : QI(1);
        for (long j = 0; rq(n * (n + 1), 2) - Rat(n) * (1 + j) < order && -(n - 1 - j) <= zcap;
             ++j)
            out.add_term(rq(n * (n + 1), 2) - Rat(n) * (1 + j), Rat(n - 1 - j), c);
    }
    return out;
}

// B = prod_{n>=1} 1/((1 - zeta q^n)(1 - zeta^{-1} q^n)); exact, finite rows.
inline JacobiSeries appell_pole_product(const Rat& order) {
    JacobiSeries out(1, order);
    out.add_term(Rat(0), Rat(0), QI(1));
    for (long n = 1; Rat(n) < order; ++n) {
        for (long s : {1, -1}) {
            JacobiSeries f(1, order);
            for (long j = 0; Rat(n) * j < order; ++j) f.add_term(Rat(n) * j, Rat(s * j), QI(1));
            out = JacobiSeries::mul_clipped(out, f, -1);
        }
    }
    return out;
}

} // namespace detail

// Lerch sum A(tau; z) = i zeta^{1/2} / theta_1 * sum_n (-1)^n q^{n(n+1)/2} zeta^n / (1 - zeta q^n)
// expanded in the region 0 < Im z < Im tau. Rows are trusted within +-zband.
inline JacobiSeries appell_A(const Rat& order, long zband) {
    if (zband <= 0) throw std::invalid_argument("appell_A: zband must be positive");
    long T = to_ll(floor_rat(order).get_num()) + 1;
    long wcap = zband + T + 6;      // working cap: final trust extends to zband
    long scap = wcap + T + 4;       // one-sided tails needed a bit further out
    // A = -q^{-1/8} * S * G * E * B  with
    //   G = sum_{j>=1} zeta^j            (from zeta^{1/2}/(zeta^{1/2}-zeta^{-1/2}))
    //   E = prod (1-q^n)^{-1}
    //   B = prod_{n>=1} ((1-zeta q^n)(1-zeta^{-1} q^n))^{-1}
    JacobiSeries S = detail::appell_sum_part(order + 1, scap);
    JacobiSeries G(1, order + 1);
    for (long j = 1; j <= scap; ++j) G.add_term(Rat(0), Rat(j), QI(1));
    // caps below are in z-lattice units (twice the zeta exponent)
    JacobiSeries acc = JacobiSeries::mul_clipped(S, G, JacobiSeries::kZDen * scap);
    acc = JacobiSeries::mul_clipped(acc, detail::appell_pole_product(order + 1),
                                    JacobiSeries::kZDen * wcap);
    acc = JacobiSeries::mul_clipped(acc, from_qseries(euler_product(order + 1).inverse()),
                                    JacobiSeries::kZDen * wcap);
    acc = (-acc).shifted(rq(-1, 8));
    acc = acc.truncated(order);
    acc.set_band(zband * JacobiSeries::kZDen);
    return acc;
}

namespace detail {

// chi * A theta_1^2/eta^3 + (mock part) theta_1^2/eta^3
inline JacobiSeries massless_massive_split(long chi, const RatSeries& mock, const Rat& order,
                                           long zband) {
    if (zband < 0) zband = 4 * (to_ll(floor_rat(order).get_num()) + 1) + 2;
    JacobiSeries A = appell_A(order, zband);
    JacobiSeries th = theta1(order + 2);
    JacobiSeries t2e3 =
        JacobiSeries::mul_clipped(th, th, -1) * from_qseries(eta_power(-3, order + 1));
    JacobiSeries core = (A * t2e3) * QI(Rat(chi)) + from_qseries(mock) * t2e3;
    return core.truncated(order);
}

} // namespace detail

// Z = 24 A theta_1^2/eta^3 + H theta_1^2/eta^3: the weight-zero index-one
// weak Jacobi form with Z(tau;0) = 24
inline JacobiSeries assemble_Z(const Rat& order, long zband = -1) {
    return detail::massless_massive_split(24, mock_h(order + 1).series, order, zband);
}

// Z_g = chi(g) A theta_1^2/eta^3 + H_g theta_1^2/eta^3
inline JacobiSeries z_g(const ConjugacyClassData& cls, const Rat& order, long zband = -1) {
    return detail::massless_massive_split(cls.chi, h_g(cls, order + 1).series, order, zband);
}

inline JacobiSeries z_g(const std::string& label, const Rat& order, long zband = -1) {
    return z_g(class_by_label(label), order, zband);
}

// phi_g^+ = (-q^{1/8} H_g) * theta^{(1)}_{1,2}; weight one, index two (holomorphic part)
inline JacobiSeries phi_g_holo(const ConjugacyClassData& cls, const Rat& order) {
    RatSeries hg = h_g(cls, order + 1).series;
    RatSeries pre = -hg.shifted(rq(1, 8));
    JacobiSeries th = theta_kmr(1, 2, 1, order + 1);
    return (from_qseries(pre) * th).truncated(order);
}

inline JacobiSeries phi_g_holo(const std::string& label, const Rat& order) {
    return phi_g_holo(class_by_label(label), order);
}

// two-torsion points of the elliptic variable
enum class TwoTorsionPoint { half, tau_half, half_plus_tau_half };

// Lerch sum specialized at a two-torsion point, as an exact univariate series.
inline RatSeries lerch_two_torsion(TwoTorsionPoint pt, const Rat& order) {
    // zeta specializes to s q^alpha with s = +-1; zeta^{1/2} to w q^{alpha/2}
    long s;       // sign
    Rat alpha;    // q-power of the specialized zeta
    QI pref;      // i * zeta0^{1/2}
    switch (pt) {
        case TwoTorsionPoint::half:
            s = -1; alpha = 0; pref = QI(-1);  // i * e^{pi i/2}
            break;
        case TwoTorsionPoint::tau_half:
            s = 1; alpha = rq(1, 2); pref = QI::i_unit();  // i * q^{1/4}
            break;
        case TwoTorsionPoint::half_plus_tau_half:
            s = -1; alpha = rq(1, 2); pref = QI(-1);  // i * i q^{1/4} = -q^{1/4}
            break;
    }
    Rat pref_shift = alpha / 2;

    Rat pad = order + 4;
    // theta_1 at the point: substitute zeta^e -> i^{2e (2 Re z0)} q^{e alpha}
    // directly from the theta_1 lattice sum, with enough q-padding
    RatSeries th(8, pad);
    for (long n = 0;; ++n) {
        bool any = false;
        for (long k : {n, -n - 1}) {
            long tk = 2 * k + 1;                       // 2 * (zeta exponent)
            Rat e = rq(tk * tk, 8) + alpha * tk / 2;   // q-exponent after substitution
            if (e < pad) {
                QI c = k % 2 == 0 ? QI::i_unit() : -QI::i_unit();
                if (s == -1) c = c * QI::i_pow(tk);    // zeta0^e picks up e^{pi i e}
                th.add_to(e, c);
                any = true;
            }
        }
        if (!any && n > 2) break;
    }
    if (th.is_zero()) throw std::domain_error("lerch_two_torsion: theta vanished");

    // sum part: sum_n (-1)^n q^{n(n+1)/2} (s q^alpha)^n / (1 - s q^{n+alpha})
    RatSeries sum(2, pad);
    auto add_term_n = [&](long n) -> bool {
        Rat base = rq(n * (n + 1), 2) + alpha * n;
        Rat x = Rat(n) + alpha;  // exponent inside the geometric factor
        // (-1)^n s^n: trivial for s = -1, alternating for s = +1
        QI c0 = (s == -1 || n % 2 == 0) ? QI(1) : QI(-1);
        Rat lead = base + (x < 0 ? -x : Rat(0));
        if (lead >= pad) return false;
        if (x > 0) {
            for (long j = 0; base + x * j < pad; ++j)
                sum.add_to(base + x * j, c0 * (s == -1 && j % 2 != 0 ? QI(-1) : QI(1)));
        } else if (x == 0) {
            if (s == 1) throw std::domain_error("lerch_two_torsion: pole at the point");
            sum.add_to(base, c0 * QI(rq(1, 2)));
        } else {
            // 1/(1 - s q^x) = -s q^{-x} sum_j s^j q^{-x j}
            for (long j = 0; base - x * (j + 1) < pad; ++j)
                sum.add_to(base - x * (j + 1),
                           c0 * QI(Rat(-s)) * (s == -1 && j % 2 != 0 ? QI(-1) : QI(1)));
        }
        return true;
    };
    for (long n = 0; add_term_n(n) || n < 3; ++n) {}
    for (long n = -1; add_term_n(n) || n > -4; --n) {}

    RatSeries out = sum * th.inverse();
    out = out.shifted(pref_shift) * pref;
    return out.truncated(order);
}

} // namespace m24
