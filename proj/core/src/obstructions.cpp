#include "mono/obstructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "mono/util.hpp"

namespace mono {

namespace {

// phi(2^k p) = 2^(k-1) (p-1) for odd prime p, k >= 1.
uint64_t phi_of_element(uint32_t k, uint64_t p) { return (uint64_t(1) << (k - 1)) * (p - 1); }

struct AElement {
    uint64_t n;
    uint32_t k;
    uint64_t p;
};

// Validates that every member has the 2^k * odd-prime form and
// decomposes it.
std::vector<AElement> decompose_A(std::span<const uint64_t> a, const Sieve& sieve) {
    std::vector<AElement> out;
    out.reserve(a.size());
    uint64_t prev = 0;
    for (uint64_t n : a) {
        if (n <= prev) throw contract_error("A must be sorted and duplicate-free");
        prev = n;
        uint32_t k = static_cast<uint32_t>(std::countr_zero(n));
        uint64_t p = n >> k;
        if (k < 1 || p < 3 || !sieve.is_prime(p))
            throw contract_error("A member " + std::to_string(n) +
                                 " is not 2^k times an odd prime");
        out.push_back({n, k, p});
    }
    return out;
}

}  // namespace

std::vector<uint64_t> legendre_scan(uint64_t p_max, GapVariant variant, const Sieve& sieve) {
    if (p_max < 2) throw contract_error("legendre_scan requires p_max >= 2");
    if (p_max > sieve.bound() / p_max)
        throw capacity_error("legendre_scan: p_max^2 exceeds the sieve bound");

    struct Interval {
        uint64_t p, lo, hi;  // open interval (lo, hi)
        bool hit = false;
    };
    std::vector<Interval> intervals;
    sieve.for_each_prime(2, p_max + 1, [&](uint64_t p) {
        uint64_t lo = variant == GapVariant::Legendre ? (p - 1) * (p - 1) : p * (p - 1);
        intervals.push_back({p, lo, p * p});
    });

    // Consecutive intervals are disjoint, so one pointer suffices.
    std::vector<uint64_t> failing;
    size_t idx = 0;
    uint64_t limit = p_max * p_max;
    sieve.for_each_prime(2, limit, [&](uint64_t q) {
        while (idx < intervals.size() && q >= intervals[idx].hi) {
            if (!intervals[idx].hit) failing.push_back(intervals[idx].p);
            ++idx;
        }
        if (idx < intervals.size() && q > intervals[idx].lo && q < intervals[idx].hi)
            intervals[idx].hit = true;
    });
    for (; idx < intervals.size(); ++idx)
        if (!intervals[idx].hit) failing.push_back(intervals[idx].p);
    return failing;
}

uint64_t dhl_count(uint32_t k, uint64_t x, const Sieve& sieve) {
    if (x > sieve.bound()) throw capacity_error("dhl_count: x exceeds the sieve bound");
    if (x < 2) return 0;
    if (k == 0) return sieve.prime_count(x);  // ceil(p/1) = p
    if (k >= 64 || (x >> k) == 0) return 0;   // ceil(p/2^k) = 1, never prime

    uint64_t q_max = ceil_div(x, uint64_t(1) << k);
    std::vector<bool> prime_table(q_max + 1, false);
    sieve.for_each_prime(2, q_max + 1, [&](uint64_t q) { prime_table[q] = true; });

    uint64_t count = 0;
    sieve.for_each_prime(2, x + 1, [&](uint64_t p) {
        uint64_t q = ceil_div(p, uint64_t(1) << k);
        if (prime_table[q]) ++count;
    });
    return count;
}

uint32_t k0_for(uint64_t x) {
    if (x < 10) throw contract_error("k0_for requires x >= 10");
    long double lx = logl(static_cast<long double>(x));
    uint32_t k = 1;
    while (exp2l(static_cast<long double>(k)) <= lx) ++k;
    // 2^(k-1) <= log x < 2^k gives log x < 2^k <= 2 log x.  Abort if
    // log x sits too close to 2^(k-1) to trust the float comparison.
    long double lower = exp2l(static_cast<long double>(k - 1));
    if (k > 1 && fabsl(lx - lower) < lx * 1e-15L)
        throw capacity_error("k0_for: log x inside the guard band around 2^(k-1)");
    return k;
}

std::vector<uint64_t> construct_A(uint64_t x, const Sieve& sieve) {
    if (x < 10) throw contract_error("construct_A requires x >= 10");
    if (x > sieve.bound()) throw capacity_error("construct_A: x exceeds the sieve bound");
    uint32_t k0 = k0_for(x);
    std::vector<uint64_t> a;
    for (uint32_t k = 1; k <= k0; ++k) {
        uint64_t pmax = x >> k;
        if (pmax < 3) break;
        sieve.for_each_prime(3, pmax + 1, [&](uint64_t p) { a.push_back(p << k); });
    }
    std::sort(a.begin(), a.end());
    return a;
}

std::vector<ViolationPair> find_violations(std::span<const uint64_t> a, const Sieve& sieve) {
    std::vector<AElement> elems = decompose_A(a, sieve);
    uint32_t k_max = 0;
    for (const AElement& e : elems) k_max = std::max(k_max, e.k);

    std::vector<ViolationPair> out;
    for (const AElement& e : elems) {
        for (uint32_t kp = e.k + 1; kp <= k_max; ++kp) {
            uint64_t pp = ceil_div(e.p, uint64_t(1) << (kp - e.k));
            if (pp < 3) continue;
            uint64_t np = pp << kp;
            if (!std::binary_search(a.begin(), a.end(), np)) continue;
            if (!sieve.is_prime(pp)) continue;  // cannot happen for members of A
            if (phi_of_element(e.k, e.p) > phi_of_element(kp, pp)) {
                ViolationPair v{e.k, kp, e.p, pp, e.n, np};
                // Characterization consequences, asserted per pair.
                if (!(v.n < v.n_prime) ||
                    !(v.n_prime - v.n < (uint64_t(1) << kp) - (uint64_t(1) << e.k)))
                    throw std::logic_error("violation pair outside the difference window");
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ViolationPair& l, const ViolationPair& r) {
        return l.n != r.n ? l.n < r.n : l.n_prime < r.n_prime;
    });

    // Completeness audit: every violating pair lies within 2^k_max of
    // each other, so a windowed pass over the sorted set sees it.
    std::set<std::pair<uint64_t, uint64_t>> found;
    for (const ViolationPair& v : out) found.emplace(v.n, v.n_prime);
    uint64_t window = uint64_t(1) << k_max;
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t j = i + 1; j < elems.size() && elems[j].n - elems[i].n < window; ++j) {
            bool violates = phi_of_element(elems[i].k, elems[i].p) >
                            phi_of_element(elems[j].k, elems[j].p);
            if (violates && !found.count({elems[i].n, elems[j].n}))
                throw std::logic_error("candidate generator missed a violation");
        }
    }
    return out;
}

PruneResult prune_A(std::span<const uint64_t> a, uint64_t x, const Sieve& sieve) {
    std::vector<ViolationPair> violations = find_violations(a, sieve);
    std::sort(violations.begin(), violations.end(),
              [](const ViolationPair& l, const ViolationPair& r) {
                  return l.n_prime != r.n_prime ? l.n_prime < r.n_prime : l.n < r.n;
              });

    std::set<uint64_t> dead;
    for (const ViolationPair& v : violations) {
        if (dead.count(v.n) || dead.count(v.n_prime)) continue;  // already resolved
        dead.insert(v.n_prime);
    }

    PruneResult res;
    res.kept.reserve(a.size() - dead.size());
    for (uint64_t n : a)
        if (!dead.count(n)) res.kept.push_back(n);
    res.deleted = dead.size();

    // Direct audit that phi is nondecreasing on the result.
    uint64_t prev_phi = 0;
    for (uint64_t n : res.kept) {
        uint32_t k = static_cast<uint32_t>(std::countr_zero(n));
        uint64_t phi = phi_of_element(k, n >> k);
        if (phi < prev_phi) throw std::logic_error("prune_A left a phi decrease");
        prev_phi = phi;
    }

    res.surplus = static_cast<int64_t>(res.kept.size()) -
                  static_cast<int64_t>(sieve.prime_count(x));
    return res;
}

uint64_t next_composite_phi(uint64_t p, const Sieve& sieve) {
    if (!sieve.is_prime(p)) throw contract_error("next_composite_phi requires a prime");
    uint64_t target = p - 1;  // phi(p)
    uint64_t chunk = 1024;
    uint64_t found = 0;
    for (uint64_t lo = p + 1; found == 0; lo += chunk) {
        uint64_t hi = lo + chunk;
        if (hi > sieve.bound() + 1)
            throw capacity_error("next_composite_phi: scan exceeded the sieve bound");
        sieve.for_each_value(Fn::Phi, lo, hi, [&](uint64_t n, uint64_t v) {
            // phi(n) = n-1 exactly at primes, so v < n-1 marks composites.
            if (found == 0 && v < n - 1 && v >= target) found = n;
        });
    }
    return found;
}

}  // namespace mono
