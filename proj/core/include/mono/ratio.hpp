#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mono/rational.hpp"
#include "mono/sieve.hpp"

namespace mono {

// The fiber {d : f(d)/d = q} for f in {phi, psi}: either empty, or
// exactly the d supported on one finite prime set P, with
// sum 1/d = prod_{p in P} 1/(p-1).
struct RatioClassResult {
    enum class Status { Empty, Nonempty };
    Status status = Status::Empty;
    std::vector<uint64_t> primes;  // P, ascending; present iff Nonempty
    Rational value;                // prod 1/(p-1); 1 for empty P

    bool nonempty() const { return status == Status::Nonempty; }
};

// Exact f(d)/d in lowest terms, f in {phi, psi}; sigma fibers live in
// sigma_ratio.  Depends only on the prime support of d.
Rational fn_ratio(Fn f, uint64_t d, const Sieve& sieve);

// The recursive closed form for phi fibers: peel the largest prime of
// the denominator, multiplying q by p/(p-1), until the base case.
RatioClassResult phi_class_exact(const Rational& q, const Sieve& sieve);

// The psi analogue, with (p+1)/p steps, a finite base case once the
// denominator is {2,3}-smooth, and the q = 2 exception (P = {2,3}).
RatioClassResult psi_class_exact(const Rational& q, const Sieve& sieve);

// All d <= n_max with fn_ratio(f, d) = q, by sieve-driven scan; this
// doubles as an independent oracle for the closed form above.
std::vector<uint64_t> class_enumerate(Fn f, const Rational& q, uint64_t n_max,
                                      const Sieve& sieve);

// Exact rational sum of 1/d over the fiber, truncated at n_max.
Rational class_partial_sum(Fn f, const Rational& q, uint64_t n_max, const Sieve& sieve);

// Partial sums for every q realized by some d <= n_max, in one scan.
std::map<Rational, Rational> class_partial_sums_all(Fn f, uint64_t n_max,
                                                    const Sieve& sieve);

}  // namespace mono
