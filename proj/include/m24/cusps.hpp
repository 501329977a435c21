#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "m24/classdata.hpp"
#include "m24/cyclotomic.hpp"
#include "m24/expsums.hpp"
#include "m24/qseries.hpp"

namespace m24 {

struct CuspLevelMismatch : std::invalid_argument {
    CuspLevelMismatch() : std::invalid_argument("cusp does not belong to this level") {}
};
struct AnomalyResidue : std::logic_error {
    AnomalyResidue() : std::logic_error("quasi-modular anomaly failed to cancel") {}
};

using CycloSeries = QSeries<Cyclo>;

// Cusp a/c of Gamma_0(N) (infinity = 1/0), with a scaling matrix gamma
// mapping infinity to it and the Gamma_0(N) width.
struct CuspRep {
    long a = 1, c = 0;
    SL2 gamma{1, 0, 0, 1};
    long width = 1;

    bool is_infinite() const { return c == 0; }
    std::string label() const {
        if (c == 0) return "oo";
        if (a == 0) return "0";
        return std::to_string(a) + "/" + std::to_string(c);
    }
};

// Expansion of a form slashed to a cusp: exact series with coefficients in a
// cyclotomic ring; exponents lie in (1/latticeWidth) Z.
struct CuspExpansion {
    CycloSeries series;
    long lattice_width = 1;
};

inline SL2 gamma_to_cusp(long a, long c) {
    if (c == 0) return SL2{1, 0, 0, 1};
    long u, v;
    long g = ext_gcd(a, c, u, v);  // a u + c v = g
    if (g == -1) { u = -u; v = -v; g = 1; }
    if (g != 1) throw std::invalid_argument("cusp: a, c must be coprime");
    return SL2{a, -v, c, u};
}

inline std::vector<CuspRep> enumerate_cusps(long N) {
    if (N < 1) throw std::invalid_argument("enumerate_cusps: N must be positive");
    std::vector<CuspRep> out;
    out.push_back(CuspRep{1, 0, SL2{1, 0, 0, 1}, 1});
    std::vector<long> divs;
    for (long c = 1; c < N; ++c)
        if (N % c == 0) divs.push_back(c);
    for (long c : divs) {
        long g = std::gcd(c, N / c);
        for (long a0 = 0; a0 < g; ++a0) {
            if (std::gcd(a0 == 0 ? g : a0, g) != 1) continue;
            long a = a0 == 0 && c == 1 ? 0 : a0;
            if (c > 1) {
                a = a0;
                while (std::gcd(a, c) != 1) a += g;
            }
            CuspRep r;
            r.a = a;
            r.c = c;
            r.gamma = c == 1 ? SL2{0, -1, 1, 0} : gamma_to_cusp(a, c);
            r.width = N / std::gcd(c * c, N);
            out.push_back(r);
        }
    }
    return out;
}

inline const CuspRep& find_cusp(const std::vector<CuspRep>& list, long a, long c) {
    for (const auto& r : list)
        if (r.a == a && r.c == c) return r;
    throw CuspLevelMismatch();
}

// Writes [[M,0],[0,1]] * gamma = gammaPrime * [[aU,bU],[0,dU]] with gammaPrime
// unimodular, aU dU = M, 0 <= bU < dU.
struct ScalingDecomposition {
    SL2 gamma_prime;
    long aU, bU, dU;
};

inline ScalingDecomposition scaling_decomposition(long M, const SL2& g) {
    if (g.det() != 1) throw InvalidMatrix();
    if (M < 1) throw std::invalid_argument("scaling_decomposition: M must be positive");
    long A0 = M * g.a, A1 = M * g.b, A2 = g.c, A3 = g.d;
    long aU = std::gcd(std::labs(A0), std::labs(A2));
    if (aU == 0) throw std::logic_error("scaling_decomposition: zero column");
    long p = A0 / aU, q = A2 / aU;
    long u, v;
    long gg = ext_gcd(p, q, u, v);  // p u + q v = gg
    if (gg == -1) { u = -u; v = -v; }
    // gamma' = [[p, -v],[q, u]], inverse [[u, v],[-q, p]]
    long dU = -q * A1 + p * A3;
    long bU = u * A1 + v * A3;
    if (aU * dU != M) throw std::logic_error("scaling_decomposition: determinant mismatch");
    long k = bU >= 0 ? bU / dU : -((-bU + dU - 1) / dU);
    long bUn = bU - k * dU;
    // absorb the shift: gamma' <- gamma' * [[1, k],[0, 1]]
    SL2 gp{p, p * k - v, q, q * k + u};
    if (gp.det() != 1) throw std::logic_error("scaling_decomposition: not unimodular");
    return {gp, aU, bUn, dU};
}

inline long mulmod_key(long a, long b, long m) { return (long)((__int128)a * b % m); }

namespace detail {

// core expansion eta((aU tau + bU)/dU) = zeta^{bU} q^{aU/(24 dU)} prod (1 - zeta_dU^{bU n} q^{aU n/dU})
// with zeta = e^{2 pi i /(24 dU)}; exact, modulus 24 dU
inline CycloSeries eta_core(long aU, long bU, long dU, const Rat& order) {
    long L = 24 * dU;
    CycloSeries out(L, order);
    out.set(rq(aU, 24 * dU), Cyclo::zeta_power(L, bU));
    for (long n = 1; rq(aU, 24 * dU) + rq(aU * n, dU) < order + 1; ++n) {
        CycloSeries f(L, order + 1 - rq(aU, 24 * dU));
        f.set(Rat(0), Cyclo(Rat(1)));
        f.set(rq(aU * n, dU), Cyclo::scaled_root(L, 24 * bU * n, Rat(-1)));
        out = out * f;
    }
    return out.truncated(order);
}

// angle t (mod 2) with eps-power product e^{pi i t}; denominator must divide 12
inline long angle_to_zeta24_power(const Rat& t) {
    Rat m = mod_rat(t, 2);
    Rat idx = m * 12;
    if (idx.get_den() != 1) throw std::logic_error("eta multiplier angle off the 24th roots");
    return to_ll(idx.get_num()) % 24;
}

} // namespace detail

// eta(M gamma tau) (c tau + d)^{-1/2}, exact: coefficients in Q(zeta_{24 dU}).
// Principal branch of the square root; the weight-two combinations below are
// insensitive to the overall phase convention.
inline CuspExpansion eta_at_cusp(long M, const SL2& g, const Rat& order) {
    auto dec = scaling_decomposition(M, g);
    Rat angle = eta_multiplier_angle(dec.gamma_prime);
    long L = 24 * dec.dU;
    Cyclo phase = Cyclo::zeta_power(L, detail::angle_to_zeta24_power(angle) * (L / 24));
    // dU^{-1/2} = sqrt(dU)/dU
    Cyclo pre = rq(1, dec.dU) * Cyclo::sqrt_int(dec.dU, L);
    CycloSeries core = detail::eta_core(dec.aU, dec.bU, dec.dU, order);
    return {core * (phase * pre), L};
}

// Lambda_M |_2 gamma, exact: (M/24) [ (M/dU^2) E_2(U tau) - E_2(tau) ].
// The non-modular pieces of the two E_2 terms cancel identically; the residue
// is asserted to vanish.
inline CuspExpansion lambda_at_cusp(long M, const SL2& g, const Rat& order) {
    if (M < 2) throw std::invalid_argument("lambda_at_cusp: M must be >= 2");
    auto dec = scaling_decomposition(M, g);
    if (M * dec.gamma_prime.c != g.c * dec.dU) throw AnomalyResidue();
    long L = dec.dU;
    CycloSeries e2u(L, order);
    e2u.set(Rat(0), Cyclo(Rat(1)));
    for (long n = 1; rq(dec.aU * n, dec.dU) < order; ++n)
        e2u.add_to(rq(dec.aU * n, dec.dU),
                   Cyclo::scaled_root(L, mulmod_key(dec.bU, n, L), Rat(-24) * sigma1(n)));
    CycloSeries e2 = eisenstein_e2<Cyclo>(order);
    Rat w = rq(M, 24);
    CycloSeries out = e2u * Cyclo(w * M / (Rat(dec.dU) * dec.dU)) - e2 * Cyclo(w);
    return {out.truncated(order), dec.dU};
}

// T_g |_2 gamma as an exact cyclotomic expansion; gamma is the scaling matrix
// of a cusp of Gamma_0(n_g). Exponents land in (1/w') Z for w' the width of
// the corresponding cusp of Gamma_0(n_g h_g).
inline CuspExpansion t_g_at_cusp(const ConjugacyClassData& cls, const CuspRep& cusp,
                                 const Rat& order) {
    auto cusps = enumerate_cusps(cls.n);
    find_cusp(cusps, cusp.a, cusp.c);  // membership check
    long NH = cls.n * cls.h;
    long wprime = NH / std::gcd(cusp.c * cusp.c, NH);
    const SL2& g = cusp.gamma;

    auto slash_quotient = [&](const EtaQuotientSpec& spec, const Rat& w) -> CycloSeries {
        // pad so inverse factors (truncation loss 2|e| M/24) cannot eat into
        // the target order
        Rat slack(0);
        for (const auto& f : spec.factors)
            if (f.exponent < 0) slack += rq(-2 * f.exponent * f.scale, 24) + 1;
        Rat t = order + slack + 1;
        Rat angle(0);
        Rat dUprod(1);
        CycloSeries acc(1, t);
        acc.set(Rat(0), Cyclo(Rat(1)));
        long Lall = 24;
        for (const auto& f : spec.factors) {
            auto dec = scaling_decomposition(f.scale, g);
            angle += eta_multiplier_angle(dec.gamma_prime) * f.exponent;
            for (long i = 0; i < std::labs(f.exponent); ++i)
                dUprod *= f.exponent > 0 ? Rat(dec.dU) : Rat(1) / dec.dU;
            CycloSeries core = detail::eta_core(dec.aU, dec.bU, dec.dU, t);
            CycloSeries p = core;
            for (long i = 1; i < std::labs(f.exponent); ++i) p = p * core;
            if (f.exponent < 0) p = p.inverse();
            if (f.exponent != 0) acc = acc * p;
            Lall = lcm_ll(Lall, 24 * dec.dU);
        }
        // dUprod^{-1/2} exactly: for dUprod = p/q it equals sqrt(p q)/p
        Int pn = dUprod.get_num(), qn = dUprod.get_den();
        long radl = to_ll(pn * qn);
        long sq = 1;
        for (long p2 = 2; p2 * p2 <= radl; ++p2)
            while (radl % (p2 * p2) == 0) { radl /= p2 * p2; sq *= p2; }
        Rat sq_over_p(Int(sq), pn);
        sq_over_p.canonicalize();
        Cyclo pref = sq_over_p * Cyclo::sqrt_int(radl, Lall);
        Cyclo phase = Cyclo::zeta_power(Lall, detail::angle_to_zeta24_power(angle) * (Lall / 24));
        return (acc * (phase * pref)) * Cyclo(w * spec.scalar);
    };

    CycloSeries out(1, order);
    for (const auto& term : cls.recipe) {
        switch (term.kind) {
            case RecipeTerm::Kind::Lambda:
                out = out + lambda_at_cusp(term.lambda_scale, g, order).series * Cyclo(term.weight);
                break;
            case RecipeTerm::Kind::Eta:
                out = out + slash_quotient(term.eta, term.weight).truncated(order);
                break;
            case RecipeTerm::Kind::F23a:
            case RecipeTerm::Kind::F23b: {
                const auto& parts = term.kind == RecipeTerm::Kind::F23a ? f23a_parts()
                                                                        : f23b_parts();
                for (const auto& spec : parts)
                    out = out + slash_quotient(spec, term.weight).truncated(order);
                break;
            }
        }
    }
    return {out.truncated(order), wprime};
}

inline CuspExpansion t_g_at_cusp(const std::string& label, const CuspRep& cusp,
                                 const Rat& order) {
    return t_g_at_cusp(class_by_label(label), cusp, order);
}

// first exponent (below `upto`) whose coefficient is nonzero as a number,
// ignoring the constant term; nullopt if none
inline std::optional<std::pair<Rat, Cyclo>> first_nonconstant_term(const CycloSeries& s,
                                                                   const Rat& upto) {
    for (const auto& [k, c] : s.terms()) {
        Rat e = rq(k, s.denom());
        if (e == 0) continue;
        if (e >= upto) break;
        if (!c.is_zero_value()) return std::make_pair(e, c);
    }
    return std::nullopt;
}

// one row of the asymptotics table: expansion of T_g at one cusp
struct Table2Row {
    std::string label;
    long cusp_a, cusp_c;
    Rat constant;        // claimed constant term
    Rat exponent;        // claimed lower bound for the remainder valuation
};

inline const std::vector<Table2Row>& table2_rows() {
    auto R = [](const char* lbl, long a, long c, const char* cst, const char* ex) {
        return Table2Row{lbl, a, c, parse_rat(cst), parse_rat(ex)};
    };
    static const std::vector<Table2Row> rows = {
        R("1A", 1, 0, "0", "99"),
        R("2A", 1, 0, "4/3", "1"), R("2A", 0, 1, "-2/3", "1/2"),
        R("2B", 1, 0, "2", "1"), R("2B", 0, 1, "0", "1/4"),
        R("3A", 1, 0, "3/2", "1"), R("3A", 0, 1, "-1/2", "1/3"),
        R("3B", 1, 0, "2", "1"), R("3B", 0, 1, "0", "2/9"),
        R("4A", 1, 0, "2", "1"), R("4A", 0, 1, "0", "1/8"), R("4A", 1, 2, "0", "1/6"),
        R("4B", 1, 0, "5/3", "1"), R("4B", 0, 1, "-1/3", "1/4"), R("4B", 1, 2, "-1/3", "1"),
        R("4C", 1, 0, "2", "1"), R("4C", 0, 1, "0", "3/16"), R("4C", 1, 2, "0", "1/4"),
        R("5A", 1, 0, "5/3", "1"), R("5A", 0, 1, "-1/3", "1/5"),
        R("6A", 1, 0, "11/6", "1"), R("6A", 0, 1, "-1/6", "1/6"),
        R("6A", 1, 2, "-1/6", "1/3"), R("6A", 1, 3, "-1/6", "1/2"),
        R("6B", 1, 0, "2", "1"), R("6B", 0, 1, "0", "5/36"),
        R("6B", 1, 2, "0", "2/9"), R("6B", 1, 3, "0", "1/4"),
        R("7AB", 1, 0, "7/4", "1"), R("7AB", 0, 1, "-1/4", "1/7"),
        R("8A", 1, 0, "11/6", "1"), R("8A", 0, 1, "-1/6", "1/8"),
        R("8A", 1, 2, "-1/6", "1/2"), R("8A", 1, 4, "-1/6", "1"),
        R("10A", 1, 0, "2", "1"), R("10A", 0, 1, "0", "3/10"),
        R("10A", 1, 2, "0", "1/5"), R("10A", 1, 5, "0", "1/4"),
        R("11A", 1, 0, "11/6", "1"), R("11A", 0, 1, "-1/6", "2/11"),
        R("12A", 1, 0, "2", "1"), R("12A", 0, 1, "0", "1/8"), R("12A", 1, 2, "0", "1/6"),
        R("12A", 1, 3, "0", "1/8"), R("12A", 1, 4, "0", "1/3"), R("12A", 1, 6, "0", "1/2"),
        R("12B", 1, 0, "2", "1"), R("12B", 0, 1, "0", "23/144"), R("12B", 1, 2, "0", "5/36"),
        R("12B", 1, 3, "0", "7/48"), R("12B", 1, 4, "0", "2/9"), R("12B", 1, 6, "0", "1/4"),
        R("14AB", 1, 0, "23/12", "1"), R("14AB", 0, 1, "-1/12", "1/7"),
        R("14AB", 1, 2, "-1/12", "1/7"), R("14AB", 1, 7, "-1/12", "1/2"),
        R("15AB", 1, 0, "23/12", "1"), R("15AB", 0, 1, "-1/12", "2/15"),
        R("15AB", 1, 3, "-1/12", "1/5"), R("15AB", 1, 5, "-1/12", "1/3"),
        R("21AB", 1, 0, "2", "1"), R("21AB", 0, 1, "0", "8/63"),
        R("21AB", 1, 3, "0", "1/7"), R("21AB", 1, 7, "0", "2/9"),
        R("23AB", 1, 0, "23/12", "1"), R("23AB", 0, 1, "-1/12", "3/23"),
    };
    return rows;
}

struct CuspCheck {
    Table2Row row;
    long width = 1;
    bool constant_ok = false;
    bool valuation_ok = false;
    Rat computed_constant;
    std::optional<Rat> computed_valuation;  // first non-vanishing exponent
    bool pass() const { return constant_ok && valuation_ok; }
};

// exact verification of the asymptotics table for one class
inline std::vector<CuspCheck> verify_table2(const ConjugacyClassData& cls) {
    std::vector<CuspCheck> out;
    auto cusps = enumerate_cusps(cls.n);
    for (const auto& row : table2_rows()) {
        if (row.label != cls.label) continue;
        CuspCheck chk;
        chk.row = row;
        const CuspRep& cusp = find_cusp(cusps, row.cusp_a, row.cusp_c);
        chk.width = cusp.width;
        Rat order = rq(3, 2);
        CuspExpansion ex = t_g_at_cusp(cls, cusp, order);
        auto cst = ex.series.coefficient(Rat(0)).to_rational();
        chk.computed_constant = cst.value_or(Rat(0));
        chk.constant_ok = cst.has_value() && *cst == row.constant;
        auto first = first_nonconstant_term(ex.series, order);
        if (first) chk.computed_valuation = first->first;
        chk.valuation_ok = !first || first->first >= row.exponent;
        out.push_back(std::move(chk));
    }
    return out;
}

// the stronger condition needed for Z_g: constant -chi/12 and remainder O(q^{1/4})
struct ZgCuspCondition {
    bool holds = false;
    std::optional<Rat> witness_exponent;
    Cyclo witness_coefficient;
};

inline ZgCuspCondition zg_cusp_condition(const ConjugacyClassData& cls, const CuspRep& cusp) {
    if (cusp.is_infinite())
        throw std::invalid_argument("zg_cusp_condition: cusp must be non-infinite");
    CuspExpansion ex = t_g_at_cusp(cls, cusp, rq(1, 2));
    ZgCuspCondition out;
    auto cst = ex.series.coefficient(Rat(0)).to_rational();
    if (!cst || *cst != -rq(cls.chi, 12)) {
        out.holds = false;
        out.witness_exponent = Rat(0);
        out.witness_coefficient = ex.series.coefficient(Rat(0));
        return out;
    }
    auto first = first_nonconstant_term(ex.series, rq(1, 4));
    if (first) {
        out.holds = false;
        out.witness_exponent = first->first;
        out.witness_coefficient = first->second;
    } else {
        out.holds = true;
    }
    return out;
}

} // namespace m24
