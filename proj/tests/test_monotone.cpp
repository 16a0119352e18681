#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "mono/monotone.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {
const Sieve& shared_sieve() {
    static Sieve s;
    return s;
}

std::vector<int64_t> values_upto(Fn f, uint64_t x) {
    std::vector<int64_t> v;
    v.reserve(x);
    shared_sieve().for_each_value(f, 1, x + 1,
                                  [&](uint64_t, uint64_t val) { v.push_back(int64_t(val)); });
    return v;
}

// The first 18 values of M(x) for phi.
const std::vector<uint64_t> kFirstM = {1, 2, 3, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 11, 12, 12};
}  // namespace

TEST_CASE("lnds_length basics") {
    CHECK(lnds_length(std::vector<int64_t>{1, 2, 3}) == 3);
    CHECK(lnds_length(std::vector<int64_t>{1, 1, 2, 2, 4, 2}) == 5);  // phi(1..6)
    CHECK(lnds_length(std::vector<int64_t>{5, 4, 3}) == 1);
    CHECK(lnds_length(std::vector<int64_t>{}) == 0);
}

TEST_CASE("lnds_oracle basics and capacity") {
    CHECK(lnds_oracle(std::vector<int64_t>{1, 1, 2, 2, 4, 2}) == 5);
    CHECK(lnds_oracle(std::vector<int64_t>{}) == 0);
    std::vector<int64_t> too_long(5001, 1);
    CHECK_THROWS_AS(lnds_oracle(too_long), capacity_error);
}

TEST_CASE("engine and oracle agree on random arrays") {
    std::mt19937_64 rng(987654);
    for (int trial = 0; trial < 60; ++trial) {
        size_t len = 1 + rng() % 1500;
        // Small value range forces plenty of ties.
        int64_t range = 1 + int64_t(rng() % 50);
        std::vector<int64_t> v(len);
        for (auto& e : v) e = int64_t(rng() % uint64_t(range));
        CHECK(lnds_length(v) == lnds_oracle(v));
    }
}

TEST_CASE("prefix lengths match the DP oracle for all three functions") {
    for (Fn f : {Fn::Phi, Fn::Sigma, Fn::Psi}) {
        std::vector<int64_t> v = values_upto(f, 2000);
        std::vector<uint64_t> fast = lnds_prefix_lengths(v);
        std::vector<uint64_t> slow = lnds_oracle_prefix_lengths(v);
        REQUIRE(fast == slow);
        // M(x) - M(x-1) in {0, 1}.
        for (size_t i = 1; i < fast.size(); ++i) {
            REQUIRE(fast[i] >= fast[i - 1]);
            REQUIRE(fast[i] - fast[i - 1] <= 1);
        }
    }
}

TEST_CASE("compute_stats on the opening values") {
    const Sieve& s = shared_sieve();
    MonotoneStats st18 = compute_stats(18, Fn::Phi, s);
    CHECK(st18.m == 12);

    MonotoneStats st6 = compute_stats(6, Fn::Phi, s);
    CHECK(st6.m == 5);
    CHECK(st6.w == 3);        // {1, 2, 4}
    CHECK(st6.m_const == 3);  // value 2 at n = 3, 4, 6
    CHECK(st6.m_down == 3);
    CHECK(st6.pi == 3);
    CHECK(st6.delta == 2);

    MonotoneStats st1 = compute_stats(1, Fn::Phi, s);
    CHECK(st1.m == 1);
    CHECK(st1.w == 1);
    CHECK(st1.pi == 0);
}

TEST_CASE("first 18 M(x) values match the published list") {
    std::vector<int64_t> v = values_upto(Fn::Phi, 18);
    std::vector<uint64_t> lengths = lnds_prefix_lengths(v);
    CHECK(lengths == kFirstM);
}

TEST_CASE("M >= pi for all three functions up to 1e5") {
    const Sieve& s = shared_sieve();
    uint64_t pi = s.prime_count(100'000);
    for (Fn f : {Fn::Phi, Fn::Sigma, Fn::Psi}) CHECK(m_length(100'000, f, s) >= pi);
}

TEST_CASE("m_subset") {
    const Sieve& s = shared_sieve();
    CHECK(m_subset(std::vector<uint64_t>{2, 3, 5, 7}, Fn::Phi, s) == 4);
    CHECK(m_subset(std::vector<uint64_t>{1, 2, 3, 4, 5, 6}, Fn::Phi, s) == 5);
    CHECK(m_subset(std::vector<uint64_t>{22, 24}, Fn::Phi, s) == 1);  // 10 > 8
    CHECK(m_subset(std::vector<uint64_t>{}, Fn::Phi, s) == 0);
    CHECK_THROWS_AS(m_subset(std::vector<uint64_t>{5, 3}, Fn::Phi, s), contract_error);
    CHECK_THROWS_AS(m_subset(std::vector<uint64_t>{3, 3}, Fn::Phi, s), contract_error);
}

TEST_CASE("witness at x = 6 is one of the two published maximizers") {
    const Sieve& s = shared_sieve();
    WitnessSequence w = witness(6, Fn::Phi, s);
    CHECK(w.indices.size() == 5);
    bool first = w.indices == std::vector<uint64_t>{1, 2, 3, 4, 5};
    bool second = w.indices == std::vector<uint64_t>{1, 2, 3, 4, 6};
    CHECK((first || second));
}

TEST_CASE("witness edge cases and validity") {
    const Sieve& s = shared_sieve();
    WitnessSequence w1 = witness(1, Fn::Phi, s);
    CHECK(w1.indices == std::vector<uint64_t>{1});
    CHECK(w1.values == std::vector<uint64_t>{1});

    WitnessSequence w100 = witness(100, Fn::Phi, s);
    CHECK(w100.indices.size() == m_length(100, Fn::Phi, s));
    for (size_t i = 0; i < w100.indices.size(); ++i) {
        REQUIRE(s.eval_fn(Fn::Phi, w100.indices[i]) == w100.values[i]);
        if (i) {
            REQUIRE(w100.indices[i] > w100.indices[i - 1]);
            REQUIRE(w100.values[i] >= w100.values[i - 1]);
        }
    }

    CHECK_THROWS_AS(witness(1000, Fn::Phi, s, /*witness_limit=*/100), capacity_error);
}

TEST_CASE("witness length equals M for a spread of x") {
    const Sieve& s = shared_sieve();
    for (uint64_t x : {2ull, 10ull, 97ull, 1000ull, 12345ull}) {
        WitnessSequence w = witness(x, Fn::Phi, s);
        CHECK(w.indices.size() == m_length(x, Fn::Phi, s));
    }
}

TEST_CASE("harmonic_check") {
    // The fixed nondecreasing subset {1,2,3,4,5,7} at x = 10.
    WitnessSequence w;
    w.indices = {1, 2, 3, 4, 5, 7};
    w.values = {1, 1, 2, 2, 4, 6};
    HarmonicCheck hc = harmonic_check(w, 10);
    double expected = 1 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 7;
    CHECK(hc.sum == doctest::Approx(expected).epsilon(1e-12));
    CHECK(hc.excess == doctest::Approx(expected - std::log(std::log(10.0))).epsilon(1e-9));

    WitnessSequence one;
    one.indices = {1};
    one.values = {1};
    CHECK(harmonic_check(one, 10).sum == doctest::Approx(1.0));
    CHECK_THROWS_AS(harmonic_check(one, 9), std::domain_error);

    WitnessSequence bad;
    bad.indices = {4, 2};
    CHECK_THROWS_AS(harmonic_check(bad, 10), contract_error);
}

TEST_CASE("m_length matches compute_stats") {
    const Sieve& s = shared_sieve();
    for (uint64_t x : {6ull, 100ull, 5000ull})
        CHECK(m_length(x, Fn::Phi, s) == compute_stats(x, Fn::Phi, s).m);
}

TEST_CASE("M_down and M_const via DP cross-check at small x") {
    const Sieve& s = shared_sieve();
    for (Fn f : {Fn::Phi, Fn::Sigma, Fn::Psi}) {
        std::vector<int64_t> v = values_upto(f, 300);
        // Longest nonincreasing subsequence via the negated oracle.
        std::vector<int64_t> neg(v.size());
        for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        uint64_t down = lnds_oracle(neg);
        std::map<int64_t, uint64_t> mult;
        uint64_t mconst = 0;
        for (int64_t e : v) mconst = std::max(mconst, ++mult[e]);
        MonotoneStats st = compute_stats(300, f, s);
        CHECK(st.m_down == down);
        CHECK(st.m_const == mconst);
        CHECK(st.m >= st.m_const);
        CHECK(st.m_down >= st.m_const);
    }
}
