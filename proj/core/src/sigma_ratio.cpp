#include "mono/sigma_ratio.hpp"

#include <algorithm>
#include <numeric>

#include "mono/util.hpp"

namespace mono {

namespace {

using u128 = unsigned __int128;

struct SmallRatio {
    uint64_t num, den;
};

SmallRatio reduced(uint64_t num, uint64_t den) {
    uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

bool is_squarefree_small(uint64_t n) {
    for (uint64_t p = 2; p * p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
            break;
        }
    uint64_t r = isqrt(n);
    if (r * r == n && n > 1) return false;
    return true;
}

}  // namespace

PowerfulSplit powerful_split(const FactorView& fv) {
    PowerfulSplit ps;
    ps.n = fv.n;
    for (auto [p, e] : fv.factors) {
        uint64_t pk = 1;
        for (uint32_t i = 0; i < e; ++i) pk = checked_mul(pk, p);
        if (e >= 2)
            ps.gamma = checked_mul(ps.gamma, pk);
        else
            ps.s = checked_mul(ps.s, pk);
    }
    return ps;
}

PowerfulSplit powerful_decompose(uint64_t n, const Sieve& sieve) {
    if (n == 0) throw std::domain_error("powerful_decompose(0)");
    return powerful_split(sieve.factorize(n));
}

bool is_powerful(uint64_t n, const Sieve& sieve) {
    return powerful_decompose(n, sieve).s == 1;
}

SGammaRecord solve_s_gamma(const Rational& q, uint64_t gamma, uint64_t s_max,
                           const Sieve& sieve) {
    FactorView gfv = sieve.factorize(gamma);
    for (auto [p, e] : gfv.factors)
        if (e < 2) throw contract_error("solve_s_gamma: gamma is not powerful");

    SGammaRecord rec;
    rec.q = q;
    rec.gamma = gamma;
    rec.s_max = s_max;

    // sigma(gamma*s)/(gamma*s) = q  <=>  sigma(s)/s = q*gamma/sigma(gamma).
    Rational target = q * Rational(gamma) / Rational(eval(Fn::Sigma, gfv));
    // The reduced ratio of any s <= s_max fits 64 bits; a target that
    // does not can never match.
    if (!target.fits_u64()) return rec;
    uint64_t tn = target.num_u64(), td = target.den_u64();
    if (tn < td) return rec;  // sigma(s)/s >= 1

    std::vector<uint64_t> gamma_primes;
    for (auto [p, e] : gfv.factors) gamma_primes.push_back(p);

    constexpr uint64_t kChunk = uint64_t(1) << 16;
    for (uint64_t a = 1; a <= s_max && !rec.found(); a += kChunk) {
        uint64_t b = std::min(s_max + 1, a + kChunk);
        sieve.for_each_factored(a, b, [&](const FactorView& fv) {
            if (rec.found()) return;
            uint64_t sigma = 1;
            for (auto [p, e] : fv.factors) {
                if (e >= 2) return;  // not squarefree
                for (uint64_t gp : gamma_primes)
                    if (gp == p) return;  // not coprime to gamma
                sigma = checked_mul(sigma, p + 1);
            }
            if (u128(sigma) * td == u128(fv.n) * tn) {
                rec.outcome = SGammaRecord::Outcome::Found;
                rec.s = fv.n;
                rec.term = Rational(1) / Rational(checked_mul(gamma, fv.n));
            }
        });
    }
    return rec;
}

Rational sigma_class_partial_sum(const Rational& q, uint64_t n_max, const Sieve& sieve) {
    if (!q.fits_u64()) return Rational();
    uint64_t a = q.num_u64(), b = q.den_u64();
    mpq_class sum(0);
    sieve.for_each_value(Fn::Sigma, 1, n_max + 1, [&](uint64_t n, uint64_t sigma) {
        if (u128(sigma) * b == u128(n) * a) {
            mpq_class term(1, static_cast<unsigned long>(n));
            term.canonicalize();
            sum += term;
        }
    });
    return Rational(sum);
}

std::map<Rational, Rational> sigma_class_partial_sums_all(uint64_t n_max,
                                                          const Sieve& sieve) {
    std::map<std::pair<uint64_t, uint64_t>, mpq_class> acc;
    sieve.for_each_value(Fn::Sigma, 1, n_max + 1, [&](uint64_t n, uint64_t sigma) {
        SmallRatio r = reduced(sigma, n);
        mpq_class term(1, static_cast<unsigned long>(n));
        term.canonicalize();
        acc[{r.num, r.den}] += term;
    });
    std::map<Rational, Rational> out;
    for (auto& [key, sum] : acc) out.emplace(Rational(key.first, key.second), Rational(sum));
    return out;
}

double powerful_sum(uint64_t gamma_max, uint64_t* count_out) {
    // Every powerful number is uniquely a^2 b^3 with b squarefree.
    KahanSum sum;
    uint64_t count = 0;
    for (uint64_t b = 1; b * b * b <= gamma_max; ++b) {
        if (!is_squarefree_small(b)) continue;
        uint64_t b3 = b * b * b;
        for (uint64_t a = 1; a * a <= gamma_max / b3; ++a) {
            sum.add(1.0 / (static_cast<double>(a) * a * b3));
            ++count;
        }
    }
    if (count_out) *count_out = count;
    return sum.value();
}

std::vector<KeyObsViolation> key_observation_check(uint64_t n_max, const Sieve& sieve) {
    std::vector<KeyObsViolation> violations;
    struct Entry {
        uint64_t gamma, d;
    };
    std::map<std::pair<uint64_t, uint64_t>, std::vector<Entry>> classes;
    sieve.for_each_factored(1, n_max + 1, [&](const FactorView& fv) {
        uint64_t sigma = eval(Fn::Sigma, fv);
        SmallRatio r = reduced(sigma, fv.n);
        PowerfulSplit ps = powerful_split(fv);
        classes[{r.num, r.den}].push_back({ps.gamma, fv.n});
    });
    for (auto& [key, entries] : classes) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.gamma < b.gamma; });
        for (size_t i = 1; i < entries.size(); ++i)
            if (entries[i].gamma == entries[i - 1].gamma)
                violations.push_back({Rational(key.first, key.second), entries[i].gamma,
                                      entries[i - 1].d, entries[i].d});
    }
    return violations;
}

FinalInequalityReport final_inequality_eval(const Rational& q, int j_max, uint64_t s_max,
                                            const Sieve& sieve) {
    if (q.is_one()) throw std::domain_error("final_inequality_eval assumes q != 1");
    if (q.is_zero()) throw std::domain_error("final_inequality_eval requires q > 0");
    if (j_max < 2 || j_max > 50) throw contract_error("j_max must lie in [2, 50]");

    FinalInequalityReport rep;
    rep.q = q;
    rep.j_max = j_max;
    rep.s_max = s_max;
    rep.s1 = solve_s_gamma(q, 1, s_max, sieve);
    for (int j = 2; j <= j_max; ++j)
        rep.dyadic.push_back(solve_s_gamma(q, uint64_t(1) << j, s_max, sieve));

    if (rep.s1.found() && rep.s1.s == 1)
        throw std::logic_error("s_1 = 1 is impossible for q != 1");

    Rational one(1);
    auto term_found = [](const SGammaRecord& r) { return Rational(1) - Rational(1, r.s); };

    if (!rep.s1.found()) {
        // Treated as the s_1 = infinity case: 1 - 1/s_1 alone already
        // reaches 1; unresolved dyadic terms contribute 0.
        rep.s1_case = FinalInequalityReport::S1Case::Unresolved;
        rep.truncated = one;
        rep.lower_bound = one;
        for (int j = 2; j <= j_max; ++j) {
            const SGammaRecord& r = rep.dyadic[j - 2];
            Rational weight(1, uint64_t(1) << j);
            rep.truncated += weight * (r.found() ? term_found(r) : one);
            if (r.found()) rep.lower_bound += weight * term_found(r);
        }
    } else if (rep.s1.s == 2) {
        // q = sigma(2)/2 = 3/2; no s_{2^j} exists for j >= 2, so the
        // dyadic terms are exactly 2^-j.
        rep.s1_case = FinalInequalityReport::S1Case::Two;
        if (q != Rational(3, 2)) throw std::logic_error("s_1 = 2 forces q = 3/2");
        rep.truncated = Rational(1, 2);
        for (int j = 2; j <= j_max; ++j) {
            if (rep.dyadic[j - 2].found())
                throw std::logic_error("s_{2^j} cannot exist when q = 3/2");
            rep.truncated += Rational(1, uint64_t(1) << j);
        }
        rep.lower_bound = rep.truncated;
    } else {
        // 3 <= s_1 < infinity: q has squarefree denominator, so each
        // s_{2^j} is either found or at least 3.
        rep.s1_case = FinalInequalityReport::S1Case::AtLeastThree;
        rep.truncated = term_found(rep.s1);
        rep.lower_bound = term_found(rep.s1);
        for (int j = 2; j <= j_max; ++j) {
            const SGammaRecord& r = rep.dyadic[j - 2];
            Rational weight(1, uint64_t(1) << j);
            if (r.found()) {
                if (r.s < 3) throw std::logic_error("s_{2^j} < 3 contradicts coprimality");
                rep.truncated += weight * term_found(r);
                rep.lower_bound += weight * term_found(r);
            } else {
                rep.truncated += weight * one;
                rep.lower_bound += weight * (one - Rational(1, 3));
            }
        }
    }

    rep.bound_holds = rep.lower_bound >= one - Rational(1, uint64_t(1) << j_max);
    return rep;
}

}  // namespace mono
