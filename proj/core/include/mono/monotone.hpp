#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mono/sieve.hpp"

namespace mono {

// Extremal subsequence statistics of one function on [1, x].
struct MonotoneStats {
    uint64_t x = 0;
    Fn fn = Fn::Phi;
    uint64_t m = 0;        // longest nondecreasing
    uint64_t m_down = 0;   // longest nonincreasing
    uint64_t m_const = 0;  // largest fiber (most repeated value)
    uint64_t w = 0;        // distinct values
    uint64_t pi = 0;       // primes <= x
    int64_t delta = 0;     // m - pi
};

// An explicit maximizing nondecreasing subsequence.
struct WitnessSequence {
    std::vector<uint64_t> indices;  // strictly increasing n
    std::vector<uint64_t> values;   // f(n) at those indices, nondecreasing
};

struct HarmonicCheck {
    double sum = 0.0;     // sum of 1/n over the witness indices
    double excess = 0.0;  // sum - log log x
};

// Longest nondecreasing subsequence via patience-style tails
// maintenance, O(n log n).  Ties insert after existing equal tails.
uint64_t lnds_length(std::span<const int64_t> values);

// Lengths for every prefix (one streaming pass).
std::vector<uint64_t> lnds_prefix_lengths(std::span<const int64_t> values);

// Independent O(n^2) dynamic-programming oracle, for cross-validation
// only.  Inputs longer than 5000 raise capacity_error.
uint64_t lnds_oracle(std::span<const int64_t> values);
std::vector<uint64_t> lnds_oracle_prefix_lengths(std::span<const int64_t> values);

// Exact stats for f on [1, x].  Streams f(n) off the sieve in index
// order; needs ~8 bytes per n for the distinct-value and multiplicity
// counts.
MonotoneStats compute_stats(uint64_t x, Fn f, const Sieve& sieve);

// Length-only M(x); memory is just the tails array.
uint64_t m_length(uint64_t x, Fn f, const Sieve& sieve);

// M(A) for a strictly increasing set A; contract_error on unsorted
// or duplicate input.
uint64_t m_subset(std::span<const uint64_t> a, Fn f, const Sieve& sieve);

inline constexpr uint64_t kDefaultWitnessLimit = 10'000'000;

// One maximizing nondecreasing subsequence (any maximizer), via
// back-links.  x above the witness limit raises capacity_error;
// length-only queries stay available through m_length.
WitnessSequence witness(uint64_t x, Fn f, const Sieve& sieve,
                        uint64_t witness_limit = kDefaultWitnessLimit);

// Reciprocal sum over the witness indices and its excess over
// log log x.  Domain error for x < 10.
HarmonicCheck harmonic_check(const WitnessSequence& w, uint64_t x);

}  // namespace mono
