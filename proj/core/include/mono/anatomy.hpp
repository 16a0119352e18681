#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mono/rational.hpp"
#include "mono/sieve.hpp"

namespace mono {

// The scale parameters (x, L, D, R).  L, D, R are stored as exact
// rationals (a double converts exactly), so every membership
// comparison against an integer is exact; only the admissibility
// chain, which involves transcendental expressions, is evaluated in
// floating point.
//
// "admissible" is the asymptotic chain
//     1 < L < D^(1/log L) < D < exp(sqrt(log x)) < R < x,
// which no feasible x satisfies under the canonical formulas.
// "operational" is the minimal set of inequalities the coverage case
// analysis consumes (L >= 2, R >= L^3, R <= x, D >= 1), an inferred
// sufficient condition validated empirically by coverage_check.
struct ScaleSet {
    uint64_t x = 0;
    Rational L, D, R;
    bool admissible = false;
    bool operational = false;

    // Canonical choices L = log^10 x, D = exp(log_2^3 x),
    // R = x^(1/(3 log_2 x)); requires x >= 10.
    static ScaleSet defaults(uint64_t x);
    static ScaleSet synthetic(uint64_t x, const Rational& L, const Rational& D,
                              const Rational& R);
};

// The six unusual-factorization cases defining the exceptional set.
enum class ECase {
    Smallness = 1,         // (i)   n <= x/L
    Smoothness = 2,        // (ii)  n is R-smooth
    LargeSquare = 3,       // (iii) d^2 | n for some d > L
    LargeSmoothFactor = 4, // (iv)  some L-smooth d | n with d > D
    TwoNearbyPrimes = 5,   // (v)   n = d p2 p1, d L-smooth, R/L <= p2 <= p1 <= p2 L
    ThreeNearbyPrimes = 6, // (vi)  n = d p3 p2 p1, R/L^2 <= p3 <= p2 <= p1 <= p3 L^2
};

struct A1Witness {
    uint64_t d = 1, p = 1;  // n = d*p, d L-smooth and <= D, p prime, n > x/L
};
struct A2Witness {
    uint64_t d = 1, p = 1, s = 1;  // n = d*p*s per the A2 definition
};

struct Classification {
    uint64_t n = 0;
    std::vector<ECase> e_cases;
    std::optional<A1Witness> a1;
    std::optional<A2Witness> a2;

    bool in_e() const { return !e_cases.empty(); }
    bool covered() const { return in_e() || a1.has_value() || a2.has_value(); }
};

std::vector<ECase> classify_E(uint64_t n, const ScaleSet& scales, const Sieve& sieve);

// E cases plus A1/A2 membership; every returned witness is
// re-verified against the set definitions before return.
Classification classify_full(uint64_t n, const ScaleSet& scales, const Sieve& sieve);

bool verify_a1(uint64_t n, const A1Witness& w, const ScaleSet& scales, const Sieve& sieve);
bool verify_a2(uint64_t n, const A2Witness& w, const ScaleSet& scales, const Sieve& sieve);

struct CoverageReport {
    uint64_t x = 0;
    uint64_t uncovered = 0;
    std::vector<uint64_t> uncovered_samples;  // first few, if any
    std::array<uint64_t, 6> e_counts{};       // per case (i)..(vi)
    uint64_t e_total = 0;                     // union over the six cases
    uint64_t a1_count = 0;
    uint64_t a2_count = 0;
};

// Scans every n <= x; contract_error unless scales.operational.
CoverageReport coverage_check(const ScaleSet& scales, const Sieve& sieve,
                              unsigned threads = 1);

struct CensusReport {
    uint64_t x = 0;
    std::array<uint64_t, 6> e_counts{};
    uint64_t e_total = 0;
    double ratio = 0.0;  // #E / (x (log log x)^5 / log^2 x)
};

CensusReport exceptional_census(const ScaleSet& scales, const Sieve& sieve,
                                unsigned threads = 1);

}  // namespace mono
