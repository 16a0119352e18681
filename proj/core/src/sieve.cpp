#include "mono/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mono/util.hpp"

namespace mono {

namespace {

// Simple sieve of Eratosthenes, used once to seed the base primes.
std::vector<uint32_t> simple_primes(uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = uint64_t(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

constexpr uint64_t kFactorWindow = uint64_t(1) << 18;

}  // namespace

Sieve::Sieve(uint64_t global_bound, uint64_t segment_size)
    : bound_(global_bound), segment_size_(segment_size) {
    if (bound_ < 4) throw contract_error("global bound must be at least 4");
    if (bound_ > (uint64_t(1) << 32) - 1)
        throw contract_error("global bound above 2^32-1 is not supported");
    if (segment_size_ < 64) throw contract_error("segment size too small");
    base_primes_ = simple_primes(static_cast<uint32_t>(isqrt(bound_)));
}

void Sieve::check_window(uint64_t lo, uint64_t hi, uint64_t max_span) const {
    if (lo >= hi) throw contract_error("empty or inverted window");
    if (hi > bound_ + 1) throw capacity_error("window exceeds global bound");
    if (hi - lo > max_span) throw capacity_error("window exceeds configured segment size");
}

SieveSegment Sieve::spf_segment(uint64_t lo, uint64_t hi) const {
    if (lo < 2) throw contract_error("spf_segment requires lo >= 2");
    check_window(lo, hi, segment_size_);
    SieveSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.spf.assign(hi - lo, 0);
    // Every composite n < hi has a prime factor <= sqrt(hi-1); marking
    // in increasing p with set-if-unset yields the smallest one.
    for (uint32_t p : base_primes_) {
        if (uint64_t(p) * p >= hi) break;
        for (uint64_t m = ceil_div(lo, p) * p; m < hi; m += p) {
            uint32_t& slot = seg.spf[m - lo];
            if (slot == 0) slot = p;
        }
    }
    // Untouched entries are primes.
    for (uint64_t n = lo; n < hi; ++n) {
        uint32_t& slot = seg.spf[n - lo];
        if (slot == 0) slot = static_cast<uint32_t>(n);
    }
    return seg;
}

FactorView Sieve::factorize(uint64_t n) const {
    if (n == 0) throw std::domain_error("factorize(0)");
    if (n > bound_) throw capacity_error("factorize: n exceeds global bound");
    FactorView fv;
    fv.n = n;
    uint64_t rem = n;
    for (uint32_t p : base_primes_) {
        if (uint64_t(p) * p > rem) break;
        if (rem % p == 0) {
            uint32_t e = 0;
            while (rem % p == 0) {
                rem /= p;
                ++e;
            }
            fv.factors.emplace_back(p, e);
        }
    }
    if (rem > 1) fv.factors.emplace_back(rem, 1);
    return fv;
}

uint64_t Sieve::eval_fn(Fn f, uint64_t n) const { return eval(f, factorize(n)); }

bool Sieve::is_prime(uint64_t n) const {
    if (n < 2) return false;
    if (n > bound_) throw capacity_error("is_prime: n exceeds global bound");
    for (uint32_t p : base_primes_) {
        if (uint64_t(p) * p > n) break;
        if (n % p == 0) return n == p;
    }
    return true;
}

// Segmented bit sieve over the odd numbers in [lo, hi), lo >= 3.
// visit(base, word) is called per block; bit i of word set means
// base + 2*i is prime.
namespace {
template <typename Visit>
void odd_prime_bitmap(const std::vector<uint32_t>& base_primes, uint64_t lo, uint64_t hi,
                      uint64_t window, Visit visit) {
    std::vector<uint64_t> bits;
    for (uint64_t a = lo; a < hi; a += window) {
        uint64_t b = std::min(hi, a + window);
        uint64_t first = a | 1;
        if (first >= b) continue;
        uint64_t count = (b - first + 1) / 2;  // odd numbers in [first, b)
        bits.assign((count + 63) / 64, ~uint64_t(0));
        for (uint32_t p : base_primes) {
            if (p == 2) continue;
            uint64_t pp = uint64_t(p) * p;
            if (pp >= b) break;
            uint64_t start = std::max(pp, ceil_div(first, p) * p);
            if ((start & 1) == 0) start += p;
            for (uint64_t m = start; m < b; m += 2 * uint64_t(p))
                bits[(m - first) / 2 / 64] &= ~(uint64_t(1) << ((m - first) / 2 % 64));
        }
        uint64_t tail = count % 64;
        if (tail) bits.back() &= (uint64_t(1) << tail) - 1;
        for (size_t w = 0; w < bits.size(); ++w) visit(first + 128 * w, bits[w]);
    }
}
}  // namespace

uint64_t Sieve::prime_count(uint64_t x) const {
    if (x > bound_) throw capacity_error("prime_count: x exceeds global bound");
    if (x < 2) return 0;
    uint64_t count = 1;  // the prime 2
    odd_prime_bitmap(base_primes_, 3, x + 1, segment_size_,
                     [&](uint64_t, uint64_t word) { count += std::popcount(word); });
    return count;
}

void Sieve::for_each_prime(uint64_t lo, uint64_t hi,
                           const std::function<void(uint64_t)>& cb) const {
    if (hi > bound_ + 1) throw capacity_error("for_each_prime: window exceeds global bound");
    if (lo < 2) lo = 2;
    if (lo >= hi) return;
    if (lo <= 2) cb(2);
    odd_prime_bitmap(base_primes_, std::max<uint64_t>(lo, 3), hi, segment_size_,
                     [&](uint64_t base, uint64_t word) {
                         while (word) {
                             int b = std::countr_zero(word);
                             word &= word - 1;
                             cb(base + 2 * uint64_t(b));
                         }
                     });
}

double Sieve::mertens_sum(double z, double y) const {
    if (z > y) return 0.0;
    if (y > static_cast<double>(bound_)) throw capacity_error("mertens_sum: y exceeds bound");
    uint64_t lo = z <= 2 ? 2 : static_cast<uint64_t>(std::ceil(z));
    uint64_t hi = static_cast<uint64_t>(std::floor(y)) + 1;
    KahanSum sum;
    for_each_prime(lo, hi, [&](uint64_t p) { sum.add(1.0 / static_cast<double>(p)); });
    return sum.value();
}

bool Sieve::is_smooth(uint64_t n, double y, bool strict) const {
    if (n == 0) throw std::domain_error("is_smooth(0)");
    if (n == 1) return true;
    double p = static_cast<double>(factorize(n).largest_prime());
    return strict ? p < y : p <= y;
}

void Sieve::for_each_factored(uint64_t lo, uint64_t hi,
                              const std::function<void(const FactorView&)>& cb) const {
    if (lo < 1) throw contract_error("for_each_factored requires lo >= 1");
    if (hi > bound_ + 1) throw capacity_error("for_each_factored: window exceeds bound");
    if (lo >= hi) return;

    // At most 9 distinct primes fit below 2^32; slot 10 is the leftover.
    struct Slot {
        uint32_t p[10];
        uint8_t e[10];
        uint8_t count;
    };
    std::vector<Slot> slots;
    std::vector<uint64_t> rem;
    FactorView fv;
    fv.factors.reserve(10);

    for (uint64_t a = lo; a < hi; a += kFactorWindow) {
        uint64_t b = std::min(hi, a + kFactorWindow);
        uint64_t w = b - a;
        slots.assign(w, Slot{});
        rem.resize(w);
        for (uint64_t i = 0; i < w; ++i) rem[i] = a + i;
        for (uint32_t p : base_primes_) {
            if (uint64_t(p) * p >= b) break;
            for (uint64_t m = ceil_div(a, p) * p; m < b; m += p) {
                uint64_t i = m - a;
                uint32_t e = 0;
                while (rem[i] % p == 0) {
                    rem[i] /= p;
                    ++e;
                }
                if (e) {
                    Slot& s = slots[i];
                    s.p[s.count] = p;
                    s.e[s.count] = static_cast<uint8_t>(e);
                    ++s.count;
                }
            }
        }
        for (uint64_t i = 0; i < w; ++i) {
            Slot& s = slots[i];
            if (rem[i] > 1) {
                s.p[s.count] = static_cast<uint32_t>(rem[i]);
                s.e[s.count] = 1;
                ++s.count;
            }
            fv.n = a + i;
            fv.factors.clear();
            for (uint8_t k = 0; k < s.count; ++k) fv.factors.emplace_back(s.p[k], s.e[k]);
            cb(fv);
        }
    }
}

void Sieve::for_each_value(Fn f, uint64_t lo, uint64_t hi,
                           const std::function<void(uint64_t, uint64_t)>& cb) const {
    if (lo < 1) throw contract_error("for_each_value requires lo >= 1");
    if (hi > bound_ + 1) throw capacity_error("for_each_value: window exceeds bound");
    if (lo >= hi) return;

    auto factor_of = [f](uint64_t p, uint32_t e) {
        uint64_t pk = 1;  // p^(e-1)
        for (uint32_t i = 1; i < e; ++i) pk = checked_mul(pk, p);
        switch (f) {
            case Fn::Phi: return checked_mul(pk, p - 1);
            case Fn::Sigma: return sigma_prime_power(p, e);
            case Fn::Psi: return checked_mul(pk, p + 1);
        }
        return uint64_t(1);
    };

    std::vector<uint64_t> rem, val;
    for (uint64_t a = lo; a < hi; a += kFactorWindow) {
        uint64_t b = std::min(hi, a + kFactorWindow);
        uint64_t w = b - a;
        rem.resize(w);
        val.assign(w, 1);
        for (uint64_t i = 0; i < w; ++i) rem[i] = a + i;
        for (uint32_t p : base_primes_) {
            if (uint64_t(p) * p >= b) break;
            for (uint64_t m = ceil_div(a, p) * p; m < b; m += p) {
                uint64_t i = m - a;
                uint32_t e = 0;
                while (rem[i] % p == 0) {
                    rem[i] /= p;
                    ++e;
                }
                if (e) val[i] = checked_mul(val[i], factor_of(p, e));
            }
        }
        for (uint64_t i = 0; i < w; ++i) {
            uint64_t v = val[i];
            if (rem[i] > 1) v = checked_mul(v, factor_of(rem[i], 1));
            cb(a + i, v);
        }
    }
}

}  // namespace mono
