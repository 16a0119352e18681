#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mono {

// a*b with overflow detection; sigma of a 64-bit integer can in
// principle overflow, and we refuse to return a wrapped value.
inline uint64_t checked_mul(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("64-bit overflow in " + std::to_string(a) + " * " +
                                  std::to_string(b));
    }
    return r;
}

inline uint64_t ceil_div(uint64_t a, uint64_t b) { return a / b + (a % b != 0); }

// floor(sqrt(n)), exact for n < 2^62.
inline uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Compensated (Kahan) accumulator.  Reciprocal sums over 10^7+ terms
// need ~12 significant digits, which naive summation does not keep.
class KahanSum {
public:
    void add(double v) {
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace mono
