#include "mono/ratio.hpp"

#include <algorithm>
#include <numeric>

namespace mono {

namespace {

void require_phi_or_psi(Fn f) {
    if (f == Fn::Sigma)
        throw contract_error("sigma fibers are handled by the sigma_ratio module");
}

// Largest prime factor of the denominator, which must fit in 64 bits
// and below the sieve bound to be factorable here.
uint64_t largest_den_prime(const Rational& q, const Sieve& sieve) {
    mpz_class den = q.den();
    if (!den.fits_ulong_p()) throw capacity_error("denominator too large to factor");
    return sieve.factorize(den.get_ui()).largest_prime();
}

Rational value_of(const std::vector<uint64_t>& primes) {
    Rational v(1);
    for (uint64_t p : primes) v *= Rational(1, p - 1);
    return v;
}

RatioClassResult nonempty_result(std::vector<uint64_t> primes) {
    std::sort(primes.begin(), primes.end());
    RatioClassResult r;
    r.status = RatioClassResult::Status::Nonempty;
    r.value = value_of(primes);
    r.primes = std::move(primes);
    return r;
}

// Reduced f(d)/d from a factorization, as a 64-bit fraction.  The
// ratio depends only on the radical, so both parts stay well inside
// 64 bits for any d below the sieve bound.
struct SmallRatio {
    uint64_t num, den;
};
SmallRatio small_ratio(Fn f, const FactorView& fv) {
    uint64_t num = 1, den = 1;
    for (auto [p, e] : fv.factors) {
        num = checked_mul(num, f == Fn::Phi ? p - 1 : p + 1);
        den = checked_mul(den, p);
    }
    uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

}  // namespace

Rational fn_ratio(Fn f, uint64_t d, const Sieve& sieve) {
    require_phi_or_psi(f);
    if (d == 0) throw std::domain_error("fn_ratio(0)");
    SmallRatio r = small_ratio(f, sieve.factorize(d));
    return Rational(r.num, r.den);
}

RatioClassResult phi_class_exact(const Rational& q, const Sieve& sieve) {
    if (q.is_zero()) throw contract_error("phi_class_exact requires q > 0");
    std::vector<uint64_t> primes;
    Rational cur = q;
    for (;;) {
        if (cur > Rational(1)) return {};  // phi(d)/d <= 1
        if (cur.is_integer()) {
            if (cur.is_one()) return nonempty_result(std::move(primes));
            return {};
        }
        uint64_t p1 = largest_den_prime(cur, sieve);
        Rational next = cur * Rational(p1, p1 - 1);
        // The largest denominator prime must strictly decrease; a
        // repeat means v_p1(q) >= 2, which no ratio attains.
        if (!next.is_integer() && largest_den_prime(next, sieve) >= p1) return {};
        primes.push_back(p1);
        cur = next;
    }
}

RatioClassResult psi_class_exact(const Rational& q, const Sieve& sieve) {
    if (q.is_zero()) throw contract_error("psi_class_exact requires q > 0");
    std::vector<uint64_t> primes;
    Rational cur = q;
    for (;;) {
        if (cur < Rational(1)) return {};  // psi(d)/d >= 1
        uint64_t p1 = cur.is_integer() ? 1 : largest_den_prime(cur, sieve);
        if (p1 <= 3) {
            // Base case: the denominator is {2,3}-smooth.  Enumerate
            // the four candidate supports; their ratios 1, 3/2, 4/3, 2
            // are pairwise distinct, so at most one matches.  The
            // q = 2 entry is the documented 2,3 cancellation.
            struct Candidate {
                Rational ratio;
                std::vector<uint64_t> support;
            };
            const Candidate candidates[] = {
                {Rational(1), {}},
                {Rational(3, 2), {2}},
                {Rational(4, 3), {3}},
                {Rational(2), {2, 3}},
            };
            int matches = 0;
            const Candidate* hit = nullptr;
            for (const auto& c : candidates)
                if (c.ratio == cur) {
                    ++matches;
                    hit = &c;
                }
            if (matches > 1) throw std::logic_error("psi base case: ambiguous support");
            if (!hit) return {};
            primes.insert(primes.end(), hit->support.begin(), hit->support.end());
            return nonempty_result(std::move(primes));
        }
        Rational next = cur * Rational(p1, p1 + 1);
        if (next < Rational(1)) return {};
        if (!next.is_integer() && largest_den_prime(next, sieve) >= p1) return {};
        primes.push_back(p1);
        cur = next;
    }
}

std::vector<uint64_t> class_enumerate(Fn f, const Rational& q, uint64_t n_max,
                                      const Sieve& sieve) {
    require_phi_or_psi(f);
    std::vector<uint64_t> out;
    if (!q.fits_u64()) return out;  // reduced ratios of d <= n_max always fit
    uint64_t a = q.num_u64(), b = q.den_u64();
    sieve.for_each_factored(1, n_max + 1, [&](const FactorView& fv) {
        SmallRatio r = small_ratio(f, fv);
        if (r.num == a && r.den == b) out.push_back(fv.n);
    });
    return out;
}

Rational class_partial_sum(Fn f, const Rational& q, uint64_t n_max, const Sieve& sieve) {
    require_phi_or_psi(f);
    if (!q.fits_u64()) return Rational();
    uint64_t a = q.num_u64(), b = q.den_u64();
    mpq_class sum(0);
    sieve.for_each_factored(1, n_max + 1, [&](const FactorView& fv) {
        SmallRatio r = small_ratio(f, fv);
        if (r.num == a && r.den == b) {
            mpq_class term(1, static_cast<unsigned long>(fv.n));
            term.canonicalize();
            sum += term;
        }
    });
    return Rational(sum);
}

std::map<Rational, Rational> class_partial_sums_all(Fn f, uint64_t n_max,
                                                    const Sieve& sieve) {
    require_phi_or_psi(f);
    std::map<std::pair<uint64_t, uint64_t>, mpq_class> acc;
    sieve.for_each_factored(1, n_max + 1, [&](const FactorView& fv) {
        SmallRatio r = small_ratio(f, fv);
        mpq_class term(1, static_cast<unsigned long>(fv.n));
        term.canonicalize();
        acc[{r.num, r.den}] += term;
    });
    std::map<Rational, Rational> out;
    for (auto& [key, sum] : acc) out.emplace(Rational(key.first, key.second), Rational(sum));
    return out;
}

}  // namespace mono
