#include <doctest.h>

#include <set>

#include "mono/ratio.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {
const Sieve& shared_sieve() {
    static Sieve s;
    return s;
}
}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("1/2").str() == "1/2");
    CHECK(Rational::parse("4/6").str() == "2/3");  // canonicalized
    CHECK(Rational::parse("7").str() == "7/1");
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("3/0"), contract_error);
    CHECK_THROWS_AS(Rational::parse("abc"), contract_error);
    CHECK_THROWS_AS(Rational(1, 0), contract_error);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK_THROWS_AS(Rational(1, 3) - Rational(1, 2), contract_error);
}

TEST_CASE("fn_ratio") {
    const Sieve& s = shared_sieve();
    CHECK(fn_ratio(Fn::Phi, 1, s) == Rational(1));
    CHECK(fn_ratio(Fn::Phi, 6, s) == Rational(1, 3));
    CHECK(fn_ratio(Fn::Psi, 6, s) == Rational(2));
    CHECK(fn_ratio(Fn::Phi, 8, s) == Rational(1, 2));
    CHECK_THROWS_AS(fn_ratio(Fn::Sigma, 6, s), contract_error);
    CHECK_THROWS_AS(fn_ratio(Fn::Phi, 0, s), std::domain_error);
}

TEST_CASE("phi_class_exact base and recursive cases") {
    const Sieve& s = shared_sieve();

    RatioClassResult one = phi_class_exact(Rational(1), s);
    REQUIRE(one.nonempty());
    CHECK(one.primes.empty());
    CHECK(one.value == Rational(1));

    RatioClassResult half = phi_class_exact(Rational(1, 2), s);
    REQUIRE(half.nonempty());
    CHECK(half.primes == std::vector<uint64_t>{2});
    CHECK(half.value == Rational(1));

    RatioClassResult two_thirds = phi_class_exact(Rational(2, 3), s);
    REQUIRE(two_thirds.nonempty());
    CHECK(two_thirds.primes == std::vector<uint64_t>{3});
    CHECK(two_thirds.value == Rational(1, 2));

    CHECK_FALSE(phi_class_exact(Rational(3, 4), s).nonempty());  // q' = 3/2 > 1
    CHECK_FALSE(phi_class_exact(Rational(1, 4), s).nonempty());  // v_2 = 2
    CHECK_FALSE(phi_class_exact(Rational(2), s).nonempty());     // q > 1
    CHECK_FALSE(phi_class_exact(Rational(5, 7), s).nonempty());

    RatioClassResult third = phi_class_exact(Rational(1, 3), s);
    REQUIRE(third.nonempty());
    CHECK(third.primes == std::vector<uint64_t>{2, 3});
    CHECK(third.value == Rational(1, 2));
}

TEST_CASE("psi_class_exact including the q = 2 exception") {
    const Sieve& s = shared_sieve();

    RatioClassResult two = psi_class_exact(Rational(2), s);
    REQUIRE(two.nonempty());
    CHECK(two.primes == std::vector<uint64_t>{2, 3});
    CHECK(two.value == Rational(1, 2));

    RatioClassResult three_halves = psi_class_exact(Rational(3, 2), s);
    REQUIRE(three_halves.nonempty());
    CHECK(three_halves.primes == std::vector<uint64_t>{2});
    CHECK(three_halves.value == Rational(1));

    RatioClassResult one = psi_class_exact(Rational(1), s);
    REQUIRE(one.nonempty());
    CHECK(one.primes.empty());
    CHECK(one.value == Rational(1));

    RatioClassResult six_fifths = psi_class_exact(Rational(6, 5), s);
    REQUIRE(six_fifths.nonempty());
    CHECK(six_fifths.primes == std::vector<uint64_t>{5});

    RatioClassResult twelve_fifths = psi_class_exact(Rational(12, 5), s);
    REQUIRE(twelve_fifths.nonempty());
    CHECK(twelve_fifths.primes == std::vector<uint64_t>{2, 3, 5});
    CHECK(twelve_fifths.value == Rational(1, 8));

    CHECK_FALSE(psi_class_exact(Rational(1, 2), s).nonempty());  // psi ratio >= 1
    CHECK_FALSE(psi_class_exact(Rational(7, 6), s).nonempty());
    CHECK_FALSE(psi_class_exact(Rational(8, 3), s).nonempty());
}

TEST_CASE("class_enumerate examples") {
    const Sieve& s = shared_sieve();
    CHECK(class_enumerate(Fn::Phi, Rational(1, 2), 20, s) ==
          std::vector<uint64_t>{2, 4, 8, 16});
    CHECK(class_enumerate(Fn::Phi, Rational(1, 3), 20, s) ==
          std::vector<uint64_t>{6, 12, 18});
    CHECK(class_enumerate(Fn::Phi, Rational(1), 5, s) == std::vector<uint64_t>{1});
    CHECK(class_enumerate(Fn::Phi, Rational(2, 3), 30, s) ==
          std::vector<uint64_t>{3, 9, 27});
    CHECK(class_enumerate(Fn::Phi, Rational(3, 4), 1000, s).empty());
    CHECK(class_enumerate(Fn::Psi, Rational(2), 40, s) ==
          std::vector<uint64_t>{6, 12, 18, 24, 36});
}

TEST_CASE("class members share one prime support") {
    const Sieve& s = shared_sieve();
    for (Rational q : {Rational(1, 3), Rational(2, 3), Rational(4, 15), Rational(8, 15)}) {
        std::vector<uint64_t> members = class_enumerate(Fn::Phi, q, 100'000, s);
        if (members.empty()) continue;
        std::set<uint64_t> support;
        for (auto [p, e] : s.factorize(members.front()).factors) support.insert(p);
        for (uint64_t d : members) {
            std::set<uint64_t> other;
            for (auto [p, e] : s.factorize(d).factors) other.insert(p);
            REQUIRE(other == support);
        }
        // And the closed form names exactly that support.
        RatioClassResult exact = phi_class_exact(q, s);
        REQUIRE(exact.nonempty());
        CHECK(std::set<uint64_t>(exact.primes.begin(), exact.primes.end()) == support);
    }
}

TEST_CASE("class_partial_sum closed-form examples") {
    const Sieve& s = shared_sieve();
    // Geometric: sum over 2, 4, ..., 1024 of 1/d = 1 - 2^-10.
    CHECK(class_partial_sum(Fn::Phi, Rational(1, 2), 1 << 10, s) ==
          Rational((1 << 10) - 1, 1 << 10));
    CHECK(class_partial_sum(Fn::Phi, Rational(1), 1'000'000, s) == Rational(1));

    // Sum over {2^i 3^j <= 1e4}, computed directly.
    Rational sum13;
    for (uint64_t p2 = 2; p2 <= 10'000; p2 *= 2)
        for (uint64_t p3 = 3; p2 * p3 <= 10'000; p3 *= 3) sum13 += Rational(1, p2 * p3);
    CHECK(class_partial_sum(Fn::Phi, Rational(1, 3), 10'000, s) == sum13);
    CHECK(sum13 < Rational(1, 2));
}

TEST_CASE("partial sums are increasing in N and bounded by the closed form") {
    const Sieve& s = shared_sieve();
    for (Rational q : {Rational(1, 2), Rational(1, 3), Rational(2, 3)}) {
        Rational s1 = class_partial_sum(Fn::Phi, q, 100, s);
        Rational s2 = class_partial_sum(Fn::Phi, q, 1000, s);
        Rational s3 = class_partial_sum(Fn::Phi, q, 10'000, s);
        CHECK(s1 <= s2);
        CHECK(s2 <= s3);
        RatioClassResult exact = phi_class_exact(q, s);
        REQUIRE(exact.nonempty());
        CHECK(s3 <= exact.value);
        CHECK(exact.value <= Rational(1));
    }
}

TEST_CASE("every realized phi ratio up to 5000 obeys the sharp inequality") {
    const Sieve& s = shared_sieve();
    auto sums = class_partial_sums_all(Fn::Phi, 5000, s);
    CHECK(sums.size() > 2000);
    int full_value = 0;
    for (const auto& [q, partial] : sums) {
        RatioClassResult exact = phi_class_exact(q, s);
        REQUIRE(exact.nonempty());
        REQUIRE(partial <= exact.value);
        REQUIRE(exact.value <= Rational(1));
        if (exact.value == Rational(1)) {
            ++full_value;
            bool is_one = q == Rational(1);
            bool is_half = q == Rational(1, 2);
            REQUIRE((is_one || is_half));
        }
    }
    CHECK(full_value == 2);
}

TEST_CASE("psi partial sums stay below one") {
    const Sieve& s = shared_sieve();
    auto sums = class_partial_sums_all(Fn::Psi, 5000, s);
    for (const auto& [q, partial] : sums) REQUIRE(partial <= Rational(1));
}
