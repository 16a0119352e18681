#include <doctest.h>

#include <numeric>

#include "mono/sigma_ratio.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {
const Sieve& shared_sieve() {
    static Sieve s;
    return s;
}
}  // namespace

TEST_CASE("powerful_decompose") {
    const Sieve& s = shared_sieve();
    PowerfulSplit a = powerful_decompose(12, s);
    CHECK(a.gamma == 4);
    CHECK(a.s == 3);
    PowerfulSplit b = powerful_decompose(72, s);
    CHECK(b.gamma == 72);
    CHECK(b.s == 1);
    PowerfulSplit c = powerful_decompose(30, s);
    CHECK(c.gamma == 1);
    CHECK(c.s == 30);
    PowerfulSplit d = powerful_decompose(1, s);
    CHECK(d.gamma == 1);
    CHECK(d.s == 1);
    CHECK_THROWS_AS(powerful_decompose(0, s), std::domain_error);
}

TEST_CASE("powerful split round-trips with coprime parts") {
    const Sieve& s = shared_sieve();
    s.for_each_factored(1, 100'001, [&](const FactorView& fv) {
        PowerfulSplit ps = powerful_split(fv);
        REQUIRE(ps.gamma * ps.s == fv.n);
        REQUIRE(std::gcd(ps.gamma, ps.s) == 1);
    });
}

TEST_CASE("solve_s_gamma examples") {
    const Sieve& s = shared_sieve();
    SGammaRecord perfect = solve_s_gamma(Rational(2), 1, 100, s);
    REQUIRE(perfect.found());
    CHECK(perfect.s == 6);  // the first perfect number
    CHECK(perfect.term == Rational(1, 6));

    SGammaRecord g4 = solve_s_gamma(Rational(2), 4, 100, s);
    REQUIRE(g4.found());
    CHECK(g4.s == 7);  // sigma(28)/28 = 2
    CHECK(g4.term == Rational(1, 28));

    SGammaRecord half = solve_s_gamma(Rational(3, 2), 1, 100, s);
    REQUIRE(half.found());
    CHECK(half.s == 2);

    SGammaRecord none = solve_s_gamma(Rational(5), 1, 100'000, s);
    CHECK_FALSE(none.found());
    CHECK(none.s_max == 100'000);

    CHECK_THROWS_AS(solve_s_gamma(Rational(2), 12, 100, s), contract_error);
}

TEST_CASE("solve_s_gamma recovers the split of every d up to 1e4") {
    const Sieve& s = shared_sieve();
    s.for_each_factored(1, 10'001, [&](const FactorView& fv) {
        uint64_t sigma = eval(Fn::Sigma, fv);
        uint64_t g = std::gcd(sigma, fv.n);
        Rational q(sigma / g, fv.n / g);
        PowerfulSplit ps = powerful_split(fv);
        SGammaRecord rec = solve_s_gamma(q, ps.gamma, 10'000, s);
        REQUIRE(rec.found());
        REQUIRE(rec.s == ps.s);
    });
}

TEST_CASE("sigma_class_partial_sum") {
    const Sieve& s = shared_sieve();
    // Perfect numbers up to 1e4 are 6, 28, 496.
    Rational expected = Rational(1, 6) + Rational(1, 28) + Rational(1, 496);
    CHECK(sigma_class_partial_sum(Rational(2), 10'000, s) == expected);
    CHECK(sigma_class_partial_sum(Rational(1), 1'000'000, s) == Rational(1));
    CHECK(sigma_class_partial_sum(Rational(3, 2), 1000, s) == Rational(1, 2));
    CHECK(sigma_class_partial_sum(Rational(7, 5), 1000, s) == Rational());  // unrealized
}

TEST_CASE("powerful_sum") {
    uint64_t count = 0;
    CHECK(powerful_sum(1, &count) == doctest::Approx(1.0));
    CHECK(count == 1);

    double p10 = powerful_sum(10, &count);
    CHECK(count == 4);  // 1, 4, 8, 9
    CHECK(p10 == doctest::Approx(1.0 + 0.25 + 0.125 + 1.0 / 9).epsilon(1e-12));

    double p6 = powerful_sum(1'000'000);
    CHECK(p6 > p10);
    CHECK(p6 < 1.97730);  // zeta(2) zeta(3)

    // Spot-check the enumeration against a factorization scan.
    const Sieve& s = shared_sieve();
    uint64_t direct = 0;
    s.for_each_factored(1, 10'001, [&](const FactorView& fv) {
        bool powerful = true;
        for (auto [p, e] : fv.factors) powerful &= e >= 2;
        if (powerful) ++direct;
    });
    powerful_sum(10'000, &count);
    CHECK(count == direct);
}

TEST_CASE("key_observation_check finds no violations") {
    const Sieve& s = shared_sieve();
    CHECK(key_observation_check(1, s).empty());
    CHECK(key_observation_check(600, s).empty());
    CHECK(key_observation_check(10'000, s).empty());

    // The q = 2 class below 600 has members with three distinct gammas.
    std::vector<uint64_t> gammas;
    for (uint64_t d : {6, 28, 496}) gammas.push_back(powerful_decompose(d, s).gamma);
    CHECK(gammas == std::vector<uint64_t>{1, 4, 16});
}

TEST_CASE("final_inequality_eval cases") {
    const Sieve& s = shared_sieve();

    FinalInequalityReport r32 = final_inequality_eval(Rational(3, 2), 10, 10'000, s);
    CHECK(r32.s1_case == FinalInequalityReport::S1Case::Two);
    CHECK(r32.truncated == Rational(1) - Rational(1, 1 << 10));
    CHECK(r32.lower_bound == r32.truncated);
    CHECK(r32.bound_holds);

    FinalInequalityReport r2 = final_inequality_eval(Rational(2), 8, 10'000, s);
    CHECK(r2.s1_case == FinalInequalityReport::S1Case::AtLeastThree);
    REQUIRE(r2.s1.found());
    CHECK(r2.s1.s == 6);
    CHECK(r2.bound_holds);
    CHECK(r2.lower_bound >= Rational(1) - Rational(1, 1 << 8));

    FinalInequalityReport r5 = final_inequality_eval(Rational(5), 6, 100'000, s);
    CHECK(r5.s1_case == FinalInequalityReport::S1Case::Unresolved);
    CHECK(r5.lower_bound >= Rational(1));
    CHECK(r5.bound_holds);

    CHECK_THROWS_AS(final_inequality_eval(Rational(1), 4, 100, s), std::domain_error);
    CHECK_THROWS_AS(final_inequality_eval(Rational(2), 1, 100, s), contract_error);
}

TEST_CASE("every realized sigma ratio up to 5000 has partial sum at most one") {
    const Sieve& s = shared_sieve();
    auto sums = sigma_class_partial_sums_all(5000, s);
    CHECK(sums.size() > 3000);
    int at_one = 0;
    for (const auto& [q, partial] : sums) {
        REQUIRE(partial <= Rational(1));
        if (partial == Rational(1)) ++at_one;
    }
    CHECK(at_one == 1);  // only q = 1 (d = 1)
}
