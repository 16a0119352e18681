#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mono/errors.hpp"
#include "mono/util.hpp"

namespace mono {

// The multiplicative functions the toolkit evaluates.
enum class Fn { Phi, Sigma, Psi };

inline const char* to_string(Fn f) {
    switch (f) {
        case Fn::Phi: return "phi";
        case Fn::Sigma: return "sigma";
        case Fn::Psi: return "psi";
    }
    return "?";
}

inline Fn fn_from_string(std::string_view s) {
    if (s == "phi") return Fn::Phi;
    if (s == "sigma") return Fn::Sigma;
    if (s == "psi") return Fn::Psi;
    throw contract_error("unknown function '" + std::string(s) + "' (want phi|sigma|psi)");
}

// Exponent-tagged prime factorization of one integer.  Primes strictly
// increasing, exponents >= 1, empty list for n = 1.
struct FactorView {
    uint64_t n = 1;
    std::vector<std::pair<uint64_t, uint32_t>> factors;

    uint64_t largest_prime() const { return factors.empty() ? 1 : factors.back().first; }

    // Largest d with d^2 | n, i.e. prod p^floor(e/2).
    uint64_t square_part_root() const {
        uint64_t r = 1;
        for (auto [p, e] : factors)
            for (uint32_t i = 0; i < e / 2; ++i) r = checked_mul(r, p);
        return r;
    }

    bool is_squarefree() const {
        for (auto [p, e] : factors)
            if (e >= 2) return false;
        return true;
    }

    // Product over the distinct primes (the radical).
    uint64_t radical() const {
        uint64_t r = 1;
        for (auto [p, e] : factors) r = checked_mul(r, p);
        return r;
    }

    bool consistent() const {
        uint64_t prod = 1, prev = 0;
        for (auto [p, e] : factors) {
            if (p <= prev || e == 0) return false;
            prev = p;
            for (uint32_t i = 0; i < e; ++i) prod = checked_mul(prod, p);
        }
        return prod == n;
    }
};

// sigma(p^e) = 1 + p + ... + p^e, with overflow checks.
inline uint64_t sigma_prime_power(uint64_t p, uint32_t e) {
    uint64_t s = 1, pk = 1;
    for (uint32_t i = 0; i < e; ++i) {
        pk = checked_mul(pk, p);
        s += pk;
    }
    return s;
}

// Multiplicative evaluation of phi/sigma/psi from a factorization.
inline uint64_t eval(Fn f, const FactorView& fv) {
    uint64_t r = 1;
    for (auto [p, e] : fv.factors) {
        uint64_t pk = 1;  // p^(e-1)
        for (uint32_t i = 1; i < e; ++i) pk = checked_mul(pk, p);
        switch (f) {
            case Fn::Phi: r = checked_mul(r, checked_mul(pk, p - 1)); break;
            case Fn::Sigma: r = checked_mul(r, sigma_prime_power(p, e)); break;
            case Fn::Psi: r = checked_mul(r, checked_mul(pk, p + 1)); break;
        }
    }
    return r;
}

}  // namespace mono
