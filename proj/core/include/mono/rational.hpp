#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "mono/errors.hpp"

namespace mono {

// Arbitrary-precision non-negative rational in lowest terms.
// Serialized as "a/b" everywhere to avoid precision loss.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(uint64_t num, uint64_t den) {
        if (den == 0) throw contract_error("rational with zero denominator");
        q_ = mpq_class(to_mpz(num), to_mpz(den));
        q_.canonicalize();
    }
    explicit Rational(uint64_t num) : q_(to_mpz(num)) {}
    explicit Rational(const mpq_class& q) : q_(q) {
        if (q_ < 0) throw contract_error("negative rational");
        q_.canonicalize();
    }

    // Parses "a/b" or "a" with arbitrary-precision components.
    static Rational parse(std::string_view text);

    // The exact value of a double (scale parameters arrive as reals).
    static Rational from_double_exact(double v) {
        if (v < 0) throw contract_error("negative rational");
        mpq_class q;
        mpq_set_d(q.get_mpq_t(), v);
        return Rational(q);
    }

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }

    bool fits_u64() const {
        return q_.get_num().fits_ulong_p() && q_.get_den().fits_ulong_p();
    }
    uint64_t num_u64() const { return q_.get_num().get_ui(); }
    uint64_t den_u64() const { return q_.get_den().get_ui(); }

    double to_double() const { return q_.get_d(); }
    std::string str() const;  // always "a/b"

    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw contract_error("division by zero rational");
        q_ /= o.q_;
        return *this;
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) {
        if (o.q_ > q_) throw contract_error("rational subtraction would go negative");
        q_ -= o.q_;
        return *this;
    }

    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

private:
    static mpz_class to_mpz(uint64_t v) {
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        return z;
    }

    mpq_class q_;
};

}  // namespace mono
