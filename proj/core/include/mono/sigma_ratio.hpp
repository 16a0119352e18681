#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mono/rational.hpp"
#include "mono/sieve.hpp"

namespace mono {

// Unique split n = gamma * s with gamma powerful (every prime
// exponent >= 2), s squarefree, gcd(gamma, s) = 1.
struct PowerfulSplit {
    uint64_t n = 1;
    uint64_t gamma = 1;
    uint64_t s = 1;
};

PowerfulSplit powerful_split(const FactorView& fv);
PowerfulSplit powerful_decompose(uint64_t n, const Sieve& sieve);

bool is_powerful(uint64_t n, const Sieve& sieve);

// Search result for s_gamma: the unique squarefree s coprime to gamma
// with sigma(gamma*s)/(gamma*s) = q, if one exists below the scan
// bound.  Nonexistence is generally unprovable by search, so
// NotFoundWithin is an explicit honest state, never conflated with
// "s_gamma = infinity".
struct SGammaRecord {
    enum class Outcome { Found, NotFoundWithin };
    Rational q;
    uint64_t gamma = 1;
    Outcome outcome = Outcome::NotFoundWithin;
    uint64_t s = 0;       // valid when Found
    uint64_t s_max = 0;   // the scan bound
    Rational term;        // 1/(gamma*s) when Found

    bool found() const { return outcome == Outcome::Found; }
};

// Scans squarefree s <= s_max coprime to gamma; contract_error when
// gamma is not powerful.
SGammaRecord solve_s_gamma(const Rational& q, uint64_t gamma, uint64_t s_max,
                           const Sieve& sieve);

// Exact sum of 1/d over {d <= n_max : sigma(d)/d = q}.
Rational sigma_class_partial_sum(const Rational& q, uint64_t n_max, const Sieve& sieve);

// Partial sums for every q realized by some d <= n_max, in one scan.
std::map<Rational, Rational> sigma_class_partial_sums_all(uint64_t n_max,
                                                          const Sieve& sieve);

// Sum of 1/gamma over powerful gamma <= gamma_max, enumerated
// constructively as a^2 b^3 with b squarefree (a canonical, duplicate
// free representation); compensated summation.
double powerful_sum(uint64_t gamma_max, uint64_t* count_out = nullptr);

// Exhaustive check of the key observation: within a fixed ratio class
// q, the squarefree part s is determined by the powerful part gamma.
struct KeyObsViolation {
    Rational q;
    uint64_t gamma;
    uint64_t d1, d2;  // two members with the same gamma
};
std::vector<KeyObsViolation> key_observation_check(uint64_t n_max, const Sieve& sieve);

// Truncated evaluation of the dyadic lower-bound identity
//   1 - 1/s_1 + sum_{j>=2} 2^-j (1 - 1/s_{2^j}) >= 1,   q != 1,
// with the four-way case split on s_1.  Unresolved searches
// contribute their case-mandated minimum to the lower bound.
struct FinalInequalityReport {
    enum class S1Case { Two, Unresolved, AtLeastThree };
    Rational q;
    int j_max = 2;
    uint64_t s_max = 0;
    S1Case s1_case = S1Case::Unresolved;
    SGammaRecord s1;
    std::vector<SGammaRecord> dyadic;  // j = 2..j_max
    Rational truncated;    // unresolved terms counted as s = infinity
    Rational lower_bound;  // unresolved terms at their case minimum
    bool bound_holds = false;  // lower_bound >= 1 - 2^-j_max
};

// Domain error for q = 1; contract_error for j_max outside [2, 50].
FinalInequalityReport final_inequality_eval(const Rational& q, int j_max, uint64_t s_max,
                                            const Sieve& sieve);

}  // namespace mono
