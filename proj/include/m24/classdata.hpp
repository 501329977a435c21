#pragma once

#include <string>
#include <vector>

#include "m24/qseries.hpp"

namespace m24 {

struct UnknownClassLabel : std::invalid_argument {
    explicit UnknownClassLabel(const std::string& l)
        : std::invalid_argument("unknown conjugacy class label: " + l) {}
};

// One term of a weight-two recipe: weight * node, where node is Lambda_M,
// an eta quotient, or one of the two fixed level-23 cusp-form combinations.
struct RecipeTerm {
    enum class Kind { Lambda, Eta, F23a, F23b };
    Kind kind;
    Rat weight{1};
    long lambda_scale{0};    // M for Kind::Lambda
    EtaQuotientSpec eta;     // for Kind::Eta

    static RecipeTerm lambda(const Rat& w, long M) {
        RecipeTerm t;
        t.kind = Kind::Lambda; t.weight = w; t.lambda_scale = M;
        return t;
    }
    static RecipeTerm eta_q(const Rat& w, std::vector<EtaQuotientSpec::Factor> fs) {
        RecipeTerm t;
        t.kind = Kind::Eta; t.weight = w; t.eta.factors = std::move(fs);
        return t;
    }
    static RecipeTerm f23(const Rat& w, bool b) {
        RecipeTerm t;
        t.kind = b ? Kind::F23b : Kind::F23a; t.weight = w;
        return t;
    }
};

struct ConjugacyClassData {
    std::string label;
    long chi;   // fixed points in the 24-point permutation representation
    long n;     // element order
    long h;     // multiplier parameter; level of the attached forms is n*h
    std::vector<RecipeTerm> recipe;

    long level() const { return n * h; }
};

// f_{23,a}, f_{23,b}: weight-two cusp forms on Gamma_0(23), as eta-quotient sums.
inline const std::vector<EtaQuotientSpec>& f23a_parts() {
    static const std::vector<EtaQuotientSpec> parts = {
        {{{1, 3}, {23, 3}, {2, -1}, {46, -1}}, Rat(1)},
        {{{1, 2}, {23, 2}}, Rat(3)},
        {{{1, 1}, {2, 1}, {23, 1}, {46, 1}}, Rat(4)},
        {{{2, 2}, {46, 2}}, Rat(4)},
    };
    return parts;
}

inline const std::vector<EtaQuotientSpec>& f23b_parts() {
    static const std::vector<EtaQuotientSpec> parts = {
        {{{1, 2}, {23, 2}}, Rat(1)},
    };
    return parts;
}

inline const std::vector<ConjugacyClassData>& all_classes() {
    using RT = RecipeTerm;
    auto E = [](const Rat& w, std::vector<EtaQuotientSpec::Factor> fs) {
        return RT::eta_q(w, std::move(fs));
    };
    static const std::vector<ConjugacyClassData> table = {
        {"1A", 24, 1, 1, {}},
        {"2A", 8, 2, 1, {RT::lambda(Rat(16), 2)}},
        {"2B", 0, 2, 2, {E(Rat(2), {{1, 8}, {2, -4}})}},
        {"3A", 6, 3, 1, {RT::lambda(Rat(6), 3)}},
        {"3B", 0, 3, 3, {E(Rat(2), {{1, 6}, {3, -2}})}},
        {"4A", 0, 4, 2, {E(Rat(2), {{2, 8}, {4, -4}})}},
        {"4B", 4, 4, 1, {RT::lambda(Rat(-4), 2), RT::lambda(Rat(4), 4)}},
        {"4C", 0, 4, 4, {E(Rat(2), {{1, 4}, {2, 2}, {4, -2}})}},
        {"5A", 4, 5, 1, {RT::lambda(Rat(2), 5)}},
        {"6A", 2, 6, 1,
         {RT::lambda(Rat(-2), 2), RT::lambda(Rat(-2), 3), RT::lambda(Rat(2), 6)}},
        {"6B", 0, 6, 6, {E(Rat(2), {{1, 2}, {2, 2}, {3, 2}, {6, -2}})}},
        {"7AB", 3, 7, 1, {RT::lambda(Rat(1), 7)}},
        {"8A", 2, 8, 1, {RT::lambda(Rat(-1), 4), RT::lambda(Rat(1), 8)}},
        {"10A", 0, 10, 2, {E(Rat(2), {{1, 3}, {2, 1}, {5, 1}, {10, -1}})}},
        {"11A", 2, 11, 1,
         {RT::lambda(rq(2, 5), 11), E(rq(-22, 5), {{1, 2}, {11, 2}})}},
        {"12A", 0, 12, 2,
         {E(Rat(2), {{1, 3}, {4, 2}, {6, 3}, {2, -1}, {3, -1}, {12, -2}})}},
        {"12B", 0, 12, 12, {E(Rat(2), {{1, 4}, {4, 1}, {6, 1}, {2, -1}, {12, -1}})}},
        {"14AB", 1, 14, 1,
         {RT::lambda(rq(-1, 3), 2), RT::lambda(rq(-1, 3), 7), RT::lambda(rq(1, 3), 14),
          E(rq(-14, 3), {{1, 1}, {2, 1}, {7, 1}, {14, 1}})}},
        {"15AB", 1, 15, 1,
         {RT::lambda(rq(-1, 4), 3), RT::lambda(rq(-1, 4), 5), RT::lambda(rq(1, 4), 15),
          E(rq(-15, 4), {{1, 1}, {3, 1}, {5, 1}, {15, 1}})}},
        {"21AB", 0, 21, 3,
         {E(rq(7, 3), {{1, 3}, {7, 3}, {3, -1}, {21, -1}}),
          E(rq(-1, 3), {{1, 6}, {3, -2}})}},
        {"23AB", 1, 23, 1,
         {RT::lambda(rq(1, 11), 23), RT::f23(rq(-23, 11), false), RT::f23(rq(-69, 11), true)}},
    };
    return table;
}

inline const ConjugacyClassData& class_by_label(const std::string& label) {
    for (const auto& c : all_classes())
        if (c.label == label) return c;
    throw UnknownClassLabel(label);
}

// FNV-1a over the canonical (label, chi, n, h) rows; pins the transcription.
inline std::string class_table_checksum() {
    unsigned long long h = 1469598103934665603ULL;
    auto eat = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& c : all_classes()) {
        eat(c.label);
        eat("|" + std::to_string(c.chi) + "|" + std::to_string(c.n) + "|" +
            std::to_string(c.h) + ";");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

} // namespace m24
