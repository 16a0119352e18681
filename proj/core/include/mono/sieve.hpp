#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mono/errors.hpp"
#include "mono/factor.hpp"

namespace mono {

// One immutable sieved window [lo, hi).  spf[n - lo] is the smallest
// prime factor of n; spf[n - lo] == n exactly when n is prime.
struct SieveSegment {
    uint64_t lo = 0;
    uint64_t hi = 0;
    std::vector<uint32_t> spf;

    uint32_t spf_of(uint64_t n) const {
        if (n < lo || n >= hi) throw contract_error("spf_of: n outside segment");
        return spf[n - lo];
    }
};

// Segmented smallest-prime-factor sieve with multiplicative-function
// evaluation, primality, exact prime counting and Mertens sums over
// arbitrary windows below the configured global bound.
//
// Base primes (up to sqrt(bound)) are computed once at construction;
// after that every method is read-only and safe to call from any
// thread.  Segments are value types and safe to share.
class Sieve {
public:
    static constexpr uint64_t kDefaultBound = (uint64_t(1) << 32) - 1;
    static constexpr uint64_t kDefaultSegmentSize = uint64_t(1) << 22;

    explicit Sieve(uint64_t global_bound = kDefaultBound,
                   uint64_t segment_size = kDefaultSegmentSize);

    uint64_t bound() const { return bound_; }
    uint64_t segment_size() const { return segment_size_; }
    const std::vector<uint32_t>& base_primes() const { return base_primes_; }

    // Smallest prime factor of every n in [lo, hi).
    // Throws capacity_error when the window exceeds the configured
    // segment size, contract_error for a malformed window.
    SieveSegment spf_segment(uint64_t lo, uint64_t hi) const;

    // Canonical factorization; domain error for n = 0.
    FactorView factorize(uint64_t n) const;

    // phi/sigma/psi via the factorization; f(1) = 1.
    uint64_t eval_fn(Fn f, uint64_t n) const;

    bool is_prime(uint64_t n) const;

    // Exact pi(x).
    uint64_t prime_count(uint64_t x) const;

    // Sum of 1/p over primes z <= p <= y (compensated); 0 when z > y.
    double mertens_sum(double z, double y) const;

    // True iff every prime factor of n is <= y (< y when strict).
    // n = 1 is vacuously smooth.
    bool is_smooth(uint64_t n, double y, bool strict = false) const;

    // Streaming drivers; all visit n in increasing order over [lo, hi).
    void for_each_prime(uint64_t lo, uint64_t hi,
                        const std::function<void(uint64_t)>& cb) const;
    // The FactorView passed to cb is a reused buffer, valid only
    // during the call.
    void for_each_factored(uint64_t lo, uint64_t hi,
                           const std::function<void(const FactorView&)>& cb) const;
    void for_each_value(Fn f, uint64_t lo, uint64_t hi,
                        const std::function<void(uint64_t n, uint64_t value)>& cb) const;

private:
    void check_window(uint64_t lo, uint64_t hi, uint64_t max_span) const;

    uint64_t bound_;
    uint64_t segment_size_;
    std::vector<uint32_t> base_primes_;  // primes <= sqrt(bound)
};

}  // namespace mono
