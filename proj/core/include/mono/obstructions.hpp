#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mono/sieve.hpp"

namespace mono {

enum class GapVariant { Legendre, Oppermann };

// For each prime p <= p_max, checks for a prime strictly inside
// ((p-1)^2, p^2) (Legendre) or (p(p-1), p^2) (Oppermann); returns the
// primes failing the check (expected empty).  Sieves up to p_max^2.
std::vector<uint64_t> legendre_scan(uint64_t p_max, GapVariant variant, const Sieve& sieve);

// Number of primes p <= x whose shifted quotient ceil(p/2^k) is also
// prime.
uint64_t dhl_count(uint32_t k, uint64_t x, const Sieve& sieve);

// The unique k with log x < 2^k <= 2 log x; aborts when log x falls
// inside the floating-point guard band around a power of two.
uint32_t k0_for(uint64_t x);

// The set A = {2^k p <= x : 1 <= k <= k0, p an odd prime}, sorted.
// The representation is unique, so no deduplication is needed.
std::vector<uint64_t> construct_A(uint64_t x, const Sieve& sieve);

// One monotonicity violation inside A: n = 2^k p < n' = 2^k' p' with
// phi(n) > phi(n').  Violations force k' > k, p' = ceil(p / 2^(k'-k))
// and 0 < n' - n < 2^k' - 2^k.
struct ViolationPair {
    uint32_t k = 0, k_prime = 0;
    uint64_t p = 0, p_prime = 0;
    uint64_t n = 0, n_prime = 0;
};

// All phi-monotonicity violations in A (which must come from
// construct_A).  Candidates are generated from the characterization;
// a windowed audit over pairs closer than 2^k_max certifies that no
// violation was missed.
std::vector<ViolationPair> find_violations(std::span<const uint64_t> a, const Sieve& sieve);

struct PruneResult {
    std::vector<uint64_t> kept;   // A', sorted
    uint64_t deleted = 0;
    int64_t surplus = 0;          // #A' - pi(x)
};

// Deletes the larger element of each violating pair (greedy,
// ascending, skipping pairs already resolved), then re-audits that
// phi is nondecreasing on the result.
PruneResult prune_A(std::span<const uint64_t> a, uint64_t x, const Sieve& sieve);

// Smallest composite n > p with phi(n) >= phi(p); p must be prime.
uint64_t next_composite_phi(uint64_t p, const Sieve& sieve);

}  // namespace mono
