#pragma once

#include "m24/classdata.hpp"
#include "m24/qseries.hpp"

namespace m24 {

// q-expansion of a weight-1/2 mock form with a q^{-1/8} pole of residue -2
// and integer coefficients above it.
struct MockFormExpansion {
    RatSeries series;
};

// H = (-2 E_2 + 48 F_2^{(2)}) / eta^3; leading term -2 q^{-1/8}.
inline MockFormExpansion mock_h(const Rat& order) {
    Rat rel = order + rq(1, 8);
    if (rel <= 0) throw std::invalid_argument("mock_h: order must exceed -1/8");
    RatSeries num = eisenstein_e2(rel) * QI(Rat(-2)) + f2_2(rel) * QI(Rat(48));
    RatSeries h = num * eta_power(-3, order + 1);
    return {h.truncated(order)};
}

// Weight-two form T_g from the class recipe; constant term 2 - chi/12.
inline RatSeries t_g(const ConjugacyClassData& cls, const Rat& order) {
    RatSeries out = RatSeries::zero(order, 24);
    for (const auto& term : cls.recipe) {
        RatSeries part;
        switch (term.kind) {
            case RecipeTerm::Kind::Lambda:
                part = lambda_m(term.lambda_scale, order);
                break;
            case RecipeTerm::Kind::Eta:
                part = eta_quotient(term.eta, order);
                break;
            case RecipeTerm::Kind::F23a:
            case RecipeTerm::Kind::F23b: {
                const auto& parts = term.kind == RecipeTerm::Kind::F23a ? f23a_parts()
                                                                        : f23b_parts();
                part = RatSeries::zero(order, 24);
                for (const auto& spec : parts) part = part + eta_quotient(spec, order);
                break;
            }
        }
        out = out + part * QI(term.weight);
    }
    return out.truncated(order);
}

inline RatSeries t_g(const std::string& label, const Rat& order) {
    return t_g(class_by_label(label), order);
}

// H_g = (chi/24) H - T_g / eta^3
inline MockFormExpansion h_g(const ConjugacyClassData& cls, const Rat& order) {
    RatSeries h = mock_h(order).series * QI(rq(cls.chi, 24));
    RatSeries t = t_g(cls, order + 1);
    return {(h - t * eta_power(-3, order + 1)).truncated(order)};
}

inline MockFormExpansion h_g(const std::string& label, const Rat& order) {
    return h_g(class_by_label(label), order);
}

} // namespace m24
