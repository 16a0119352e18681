// Independent brute-force oracles for cross-validation.  Everything
// here deliberately avoids the library's sieve and streaming paths.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace oracles {

inline bool trial_is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::map<uint64_t, uint32_t> trial_factor(uint64_t n) {
    std::map<uint64_t, uint32_t> f;
    for (uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

inline uint64_t phi_brute(uint64_t n) {
    uint64_t r = n;
    for (auto [p, e] : trial_factor(n)) r = r / p * (p - 1);
    return r;
}

inline uint64_t sigma_brute(uint64_t n) {
    uint64_t s = 0;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += d;
        if (d != n / d) s += n / d;
    }
    return s;
}

inline uint64_t psi_brute(uint64_t n) {
    uint64_t r = n;
    for (auto [p, e] : trial_factor(n)) r = r / p * (p + 1);
    return r;
}

// Plain byte-array Eratosthenes; independent prime counting.
inline std::vector<uint8_t> simple_sieve(uint64_t limit) {
    std::vector<uint8_t> is_prime(limit + 1, 1);
    if (limit >= 0) is_prime[0] = 0;
    if (limit >= 1) is_prime[1] = 0;
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (is_prime[i])
            for (uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
    return is_prime;
}

inline uint64_t pi_simple(uint64_t x) {
    auto table = simple_sieve(x);
    uint64_t c = 0;
    for (uint64_t i = 2; i <= x; ++i) c += table[i];
    return c;
}

// Largest d with d^2 | n, by direct search.
inline uint64_t largest_square_divisor_root(uint64_t n) {
    uint64_t best = 1;
    for (uint64_t d = 1; d * d <= n; ++d)
        if (n % (d * d) == 0) best = d;
    return best;
}

}  // namespace oracles
