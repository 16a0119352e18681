#include <doctest.h>

#include <random>

#include "mono/sieve.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {
const Sieve& shared_sieve() {
    static Sieve s;
    return s;
}
}  // namespace

TEST_CASE("spf_segment matches direct inspection") {
    const Sieve& s = shared_sieve();
    SieveSegment seg = s.spf_segment(2, 12);
    std::vector<uint32_t> expected = {2, 3, 2, 5, 2, 7, 2, 3, 2, 11};
    CHECK(seg.spf == expected);

    SieveSegment sq = s.spf_segment(49, 50);
    CHECK(sq.spf_of(49) == 7);

    // 999983 is prime (trial-division oracle); spf equals the number itself.
    REQUIRE(oracles::trial_is_prime(999'983));
    SieveSegment pr = s.spf_segment(999'983, 999'984);
    CHECK(pr.spf_of(999'983) == 999'983);
}

TEST_CASE("spf_segment window errors") {
    Sieve small(1'000'000, 1 << 10);
    CHECK_THROWS_AS(small.spf_segment(2, 2 + (1 << 11)), capacity_error);
    CHECK_THROWS_AS(small.spf_segment(10, 10), contract_error);
    CHECK_THROWS_AS(small.spf_segment(1, 10), contract_error);
    CHECK_THROWS_AS(small.spf_segment(999'999, 1'000'002), capacity_error);
}

TEST_CASE("factorize canonical forms") {
    const Sieve& s = shared_sieve();
    FactorView f12 = s.factorize(12);
    CHECK(f12.factors == std::vector<std::pair<uint64_t, uint32_t>>{{2, 2}, {3, 1}});
    CHECK(s.factorize(1).factors.empty());
    FactorView f8128 = s.factorize(8128);
    CHECK(f8128.factors == std::vector<std::pair<uint64_t, uint32_t>>{{2, 6}, {127, 1}});
    CHECK_THROWS_AS(s.factorize(0), std::domain_error);
}

TEST_CASE("eval_fn on the spec examples") {
    const Sieve& s = shared_sieve();
    CHECK(s.eval_fn(Fn::Phi, 97) == 96);
    CHECK(s.eval_fn(Fn::Sigma, 6) == 12);  // 6 is perfect
    CHECK(s.eval_fn(Fn::Psi, 6) == 12);
    CHECK(s.eval_fn(Fn::Phi, 1) == 1);
    CHECK(s.eval_fn(Fn::Sigma, 1) == 1);
    CHECK(s.eval_fn(Fn::Psi, 1) == 1);
}

TEST_CASE("prime_count exact values") {
    const Sieve& s = shared_sieve();
    CHECK(s.prime_count(10) == 4);
    CHECK(s.prime_count(1) == 0);
    CHECK(s.prime_count(100'000) == oracles::pi_simple(100'000));
    CHECK(s.prime_count(100'000) == 9592);
}

TEST_CASE("prime_count is nondecreasing with unit steps") {
    const Sieve& s = shared_sieve();
    uint64_t prev = 0;
    for (uint64_t x = 1; x <= 2000; ++x) {
        uint64_t cur = s.prime_count(x);
        CHECK(cur >= prev);
        CHECK(cur - prev <= 1);
        prev = cur;
    }
}

TEST_CASE("mertens_sum") {
    const Sieve& s = shared_sieve();
    CHECK(s.mertens_sum(2, 10) == doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7)
                                      .epsilon(1e-12));
    CHECK(s.mertens_sum(11, 10) == 0.0);

    // 21 primes between 10 and 100.
    double direct = 0.0;
    auto table = oracles::simple_sieve(100);
    int count = 0;
    for (uint64_t p = 10; p <= 100; ++p)
        if (table[p]) {
            direct += 1.0 / static_cast<double>(p);
            ++count;
        }
    CHECK(count == 21);
    CHECK(s.mertens_sum(10, 100) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("is_smooth") {
    const Sieve& s = shared_sieve();
    CHECK(s.is_smooth(12, 3));
    CHECK_FALSE(s.is_smooth(12, 3, /*strict=*/true));
    CHECK(s.is_smooth(1 << 10, 5));
    CHECK(s.is_smooth(1, 2));
    CHECK(s.is_smooth(1, 2, true));
}

TEST_CASE("multiplicative identities against primes up to 1e6") {
    const Sieve& s = shared_sieve();
    uint64_t checked = 0;
    s.for_each_prime(2, 1'000'000, [&](uint64_t p) {
        FactorView fv;
        fv.n = p;
        fv.factors = {{p, 1}};
        REQUIRE(eval(Fn::Phi, fv) == p - 1);
        REQUIRE(eval(Fn::Sigma, fv) == p + 1);
        REQUIRE(eval(Fn::Psi, fv) == p + 1);
        ++checked;
    });
    CHECK(checked == 78'498);
}

TEST_CASE("sum of phi over divisors equals n") {
    const Sieve& s = shared_sieve();
    std::vector<uint64_t> phi(10'001);
    s.for_each_value(Fn::Phi, 1, 10'001, [&](uint64_t n, uint64_t v) { phi[n] = v; });
    for (uint64_t n = 1; n <= 10'000; ++n) {
        uint64_t total = 0;
        for (uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            total += phi[d];
            if (d != n / d) total += phi[n / d];
        }
        REQUIRE(total == n);
    }
}

TEST_CASE("psi identity as exact integers up to 1e4") {
    const Sieve& s = shared_sieve();
    s.for_each_value(Fn::Psi, 1, 10'001, [&](uint64_t n, uint64_t v) {
        // psi(n) = n * prod (p+1)/p, checked multiplicatively.
        REQUIRE(v == oracles::psi_brute(n));
    });
}

TEST_CASE("spf_segment agrees with factorize in three windows") {
    const Sieve& s = shared_sieve();
    std::mt19937_64 rng(20240817);
    for (uint64_t base : {uint64_t(1000), uint64_t(1'000'000), uint64_t(100'000'000)}) {
        uint64_t span = 1 << 16;
        SieveSegment seg = s.spf_segment(base, base + span);
        for (int i = 0; i < 10'000; ++i) {
            uint64_t n = base + rng() % span;
            CHECK(seg.spf_of(n) == s.factorize(n).factors.front().first);
        }
    }
}

TEST_CASE("for_each_value agrees with brute force on mixed range") {
    const Sieve& s = shared_sieve();
    for (Fn f : {Fn::Phi, Fn::Sigma, Fn::Psi}) {
        uint64_t expected_n = 1;
        s.for_each_value(f, 1, 3000, [&](uint64_t n, uint64_t v) {
            REQUIRE(n == expected_n++);
            uint64_t want = f == Fn::Phi    ? oracles::phi_brute(n)
                            : f == Fn::Sigma ? oracles::sigma_brute(n)
                                             : oracles::psi_brute(n);
            REQUIRE(v == want);
        });
    }
}

TEST_CASE("for_each_prime window semantics") {
    const Sieve& s = shared_sieve();
    std::vector<uint64_t> got;
    s.for_each_prime(10, 30, [&](uint64_t p) { got.push_back(p); });
    CHECK(got == std::vector<uint64_t>{11, 13, 17, 19, 23, 29});
    got.clear();
    s.for_each_prime(2, 3, [&](uint64_t p) { got.push_back(p); });
    CHECK(got == std::vector<uint64_t>{2});
}
