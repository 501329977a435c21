#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "m24/qseries.hpp"
#include "oracles.hpp"

using namespace m24;

namespace {

RatSeries geometric(const Rat& order) {
    RatSeries s(1, order);
    for (long n = 0; Rat(n) < order; ++n) s.set(Rat(n), QI(1));
    return s;
}

RatSeries random_series(std::mt19937& rng, const Rat& order) {
    std::uniform_int_distribution<long> coeff(-9, 9), den(1, 4), pick(0, 3);
    RatSeries s(12, order);
    for (long k = -6; rq(k, 2) < order; ++k) {
        if (pick(rng) == 0) continue;
        s.add_to(rq(k, 2), QI(rq(coeff(rng), den(rng)), rq(coeff(rng), den(rng))));
    }
    return s;
}

} // namespace

TEST_CASE("product of (1-q) with the geometric series telescopes") {
    RatSeries one_minus_q(1, Rat(16));
    one_minus_q.set(Rat(0), QI(1));
    one_minus_q.set(Rat(1), QI(-1));
    RatSeries prod = one_minus_q * geometric(Rat(16));
    CHECK(prod == RatSeries::constant(QI(1), Rat(15)));
}

TEST_CASE("valuations add under multiplication") {
    RatSeries e3 = eta_power(3, Rat(8));
    RatSeries sq = e3 * e3;
    REQUIRE(sq.valuation().has_value());
    CHECK(*sq.valuation() == rq(1, 4));
}

TEST_CASE("E2 * E2 coefficient of q^1 by direct convolution") {
    auto e2 = oracle::eisenstein_e2(4);
    auto conv = oracle::mul(e2, e2, 4);
    CHECK(conv[1] == Rat(-48));
    RatSeries s = eisenstein_e2(Rat(4));
    CHECK((s * s).coefficient(Rat(1)) == QI(conv[1]));
}

TEST_CASE("series inverse against the long-division oracle") {
    // 1 - 3q + 5q^3 - 7q^6 ... is eta^3 without its q^{1/8} prefactor
    auto e3 = oracle::euler_cubed(12);
    auto inv = oracle::inverse(e3, 12);
    CHECK(inv[1] == Rat(3));
    CHECK(inv[2] == Rat(9));
    CHECK(inv[3] == Rat(22));
    RatSeries s = eta_power(3, Rat(12)).shifted(rq(-1, 8)).inverse();
    for (long k = 0; k < 10; ++k) CHECK(s.coefficient(Rat(k)) == QI(inv[(size_t)k]));
}

TEST_CASE("inverse of a monomial negates the exponent") {
    RatSeries m = RatSeries::monomial(QI(1), rq(1, 8), Rat(5));
    RatSeries inv = m.inverse();
    CHECK(inv.coefficient(rq(-1, 8)) == QI(1));
    CHECK(*inv.valuation() == rq(-1, 8));
}

TEST_CASE("inverse errors") {
    CHECK_THROWS_AS(RatSeries::zero(Rat(3), 1).inverse(), ZeroSeries);
}

TEST_CASE("eta powers against the pentagonal and cube closed forms") {
    auto pent = oracle::euler_pentagonal(11);
    RatSeries e1 = eta_power(1, Rat(11));
    for (long k = 0; k < 10; ++k)
        CHECK(e1.coefficient(rq(1, 24) + k) == QI(pent[(size_t)k]));
    auto cube = oracle::euler_cubed(11);
    RatSeries e3 = eta_power(3, Rat(11));
    for (long k = 0; k < 10; ++k)
        CHECK(e3.coefficient(rq(1, 8) + k) == QI(cube[(size_t)k]));
    CHECK(eta_power(0, Rat(5)) == RatSeries::constant(QI(1), Rat(5)));
}

TEST_CASE("eta inverse identities for exponents in [-8, 8]") {
    for (long e = -8; e <= 8; ++e) {
        RatSeries prod = eta_power(e, Rat(16)) * eta_power(-e, Rat(16));
        CHECK(prod == RatSeries::constant(QI(1), Rat(15)));
    }
}

TEST_CASE("E2 coefficients are -24 sigma_1(n)") {
    RatSeries s = eisenstein_e2(Rat(51));
    CHECK(s.coefficient(Rat(1)) == QI(Rat(-24)));
    CHECK(s.coefficient(Rat(2)) == QI(Rat(-72)));
    CHECK(s.coefficient(Rat(6)) == QI(Rat(-288)));
    for (long n = 1; n <= 50; ++n)
        CHECK(s.coefficient(Rat(n)) == QI(Rat(-24 * oracle::sigma1(n))));
}

TEST_CASE("F_2^{(2)} against direct pair enumeration") {
    RatSeries s = f2_2(Rat(11));
    // expansion starts q + q^2 - q^3 + q^4 - q^5
    CHECK(s.coefficient(Rat(1)) == QI(1));
    CHECK(s.coefficient(Rat(2)) == QI(1));
    CHECK(s.coefficient(Rat(3)) == QI(-1));
    CHECK(s.coefficient(Rat(4)) == QI(1));
    CHECK(s.coefficient(Rat(5)) == QI(-1));
    // no half-integral exponents: r-s odd forces rs even
    CHECK(s.coefficient(rq(1, 2)) == QI(0));
    CHECK(s.coefficient(rq(7, 2)) == QI(0));
    // q^3 comes from pairs (3,2) -> -2 and (6,1) -> +1
    Rat q3(0);
    for (long r = 2; r <= 6; ++r)
        for (long ss = 1; ss < r; ++ss)
            if ((r - ss) % 2 == 1 && r * ss == 6) q3 += Rat((r % 2 ? -1 : 1) * ss);
    CHECK(q3 == Rat(-1));
    CHECK(s.coefficient(Rat(3)) == QI(q3));
}

TEST_CASE("Lambda_M expansion") {
    RatSeries l2 = lambda_m(2, Rat(5));
    CHECK(l2.coefficient(Rat(0)) == QI(rq(1, 12)));
    CHECK(l2.coefficient(Rat(1)) == QI(Rat(2)));
    CHECK(l2.coefficient(Rat(2)) == QI(Rat(2)));
    CHECK(l2.coefficient(Rat(3)) == QI(Rat(8)));
    CHECK((l2 * QI(Rat(16))).coefficient(Rat(0)) == QI(rq(4, 3)));
    CHECK_THROWS(lambda_m(1, Rat(3)));
}

TEST_CASE("eta quotients against a dense-polynomial oracle") {
    // 2 eta(tau)^8 eta(2tau)^{-4} = 2 - 16q + 64q^2 - ...
    size_t N = 12;
    auto e = oracle::euler_pentagonal(N);
    auto e8 = e;
    for (int i = 1; i < 8; ++i) e8 = oracle::mul(e8, e, N);
    auto e2d = oracle::dilate(e, 2, N);
    auto e2d4 = e2d;
    for (int i = 1; i < 4; ++i) e2d4 = oracle::mul(e2d4, e2d, N);
    auto expect = oracle::mul(e8, oracle::inverse(e2d4, N), N);
    EtaQuotientSpec spec{{{1, 8}, {2, -4}}, Rat(2)};
    RatSeries s = eta_quotient(spec, Rat(10));
    for (long k = 0; k < 10; ++k)
        CHECK(s.coefficient(Rat(k)) == QI(Rat(2) * expect[(size_t)k]));
    CHECK(s.coefficient(Rat(0)) == QI(Rat(2)));
    CHECK(s.coefficient(Rat(1)) == QI(Rat(-16)));
    CHECK(s.coefficient(Rat(2)) == QI(Rat(48)));
    CHECK(s.coefficient(Rat(3)) == QI(Rat(-64)));

    EtaQuotientSpec spec11{{{1, 2}, {11, 2}}, Rat(1)};
    CHECK(*eta_quotient(spec11, Rat(6)).valuation() == Rat(1));

    EtaQuotientSpec scalar_only{{}, Rat(5)};
    CHECK(eta_quotient(scalar_only, Rat(4)) == RatSeries::constant(QI(Rat(5)), Rat(4)));
}

TEST_CASE("ring laws on random series") {
    std::mt19937 rng(1928373);
    for (int trial = 0; trial < 100; ++trial) {
        RatSeries a = random_series(rng, Rat(15));
        RatSeries b = random_series(rng, Rat(15));
        RatSeries c = random_series(rng, Rat(15));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("valuation additivity on random nonzero series") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        RatSeries a = random_series(rng, Rat(15));
        RatSeries b = random_series(rng, Rat(15));
        if (a.is_zero() || b.is_zero()) continue;
        QI la = a.terms().begin()->second, lb = b.terms().begin()->second;
        if ((la * lb).is_zero()) continue;
        CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
    }
}
