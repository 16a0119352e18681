#include "mono/anatomy.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mono/util.hpp"

namespace mono {

namespace {

// Integer cutoffs derived once per scale set, so the per-n membership
// predicates reduce to exact 64-bit comparisons.  For an integer m
// and positive rational t:  m <= t  <=>  m <= floor(t), and
// m > t  <=>  m >= floor(t) + 1.
struct ScaleContext {
    uint64_t x = 0;
    mpq_class L, D, R;
    uint64_t small_cut = 0;  // floor(x/L)
    uint64_t r_floor = 0;    // floor(R)
    uint64_t l_floor = 0;    // floor(L)
    uint64_t d_floor = 0;    // floor(D)
    uint64_t rl_ceil = 0;    // ceil(R/L)
    uint64_t rl2_ceil = 0;   // ceil(R/L^2)

    static uint64_t to_u64_clamped(const mpz_class& z) {
        if (z < 0) return 0;
        if (!z.fits_ulong_p()) return ~uint64_t(0);
        return z.get_ui();
    }
    static uint64_t floor_of(const mpq_class& q) {
        mpz_class z;
        mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return to_u64_clamped(z);
    }
    static uint64_t ceil_of(const mpq_class& q) {
        mpz_class z;
        mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return to_u64_clamped(z);
    }

    explicit ScaleContext(const ScaleSet& s)
        : x(s.x), L(s.L.raw()), D(s.D.raw()), R(s.R.raw()) {
        small_cut = floor_of(mpq_class(x) / L);
        r_floor = floor_of(R);
        l_floor = floor_of(L);
        d_floor = floor_of(D);
        rl_ceil = ceil_of(R / L);
        rl2_ceil = ceil_of(R / (L * L));
    }

    uint64_t mul_L_floor(uint64_t p) const { return floor_of(mpq_class(p) * L); }
    uint64_t mul_L2_floor(uint64_t p) const { return floor_of(mpq_class(p) * L * L); }
};

bool has_case_i(const FactorView& fv, const ScaleContext& c) { return fv.n <= c.small_cut; }

bool has_case_ii(const FactorView& fv, const ScaleContext& c) {
    return fv.largest_prime() <= c.r_floor;
}

bool has_case_iii(const FactorView& fv, const ScaleContext& c) {
    return fv.square_part_root() > c.l_floor;
}

bool has_case_iv(const FactorView& fv, const ScaleContext& c) {
    // The maximal L-smooth divisor; any L-smooth divisor > D exists
    // iff it does.
    uint64_t m = 1;
    for (auto [p, e] : fv.factors) {
        if (p > c.l_floor) continue;
        for (uint32_t i = 0; i < e; ++i) m = checked_mul(m, p);
    }
    return m > c.d_floor;
}

bool has_case_v(const FactorView& fv, const ScaleContext& c) {
    // n = d p2 p1 with d L-smooth and R/L <= p2 <= p1 <= p2 L: the
    // chosen pair must carry every prime factor above L, with
    // multiplicity.
    uint64_t heavy_mult = 0;
    for (auto [p, e] : fv.factors)
        if (p > c.l_floor) heavy_mult += e;
    if (heavy_mult > 2) return false;

    size_t k = fv.factors.size();
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i; j < k; ++j) {
            uint64_t pb = fv.factors[i].first, pa = fv.factors[j].first;  // pb <= pa
            if (i == j && fv.factors[i].second < 2) continue;
            if (pb < c.rl_ceil) continue;
            if (pa > c.mul_L_floor(pb)) continue;
            bool covers = true;
            for (auto [r, e] : fv.factors) {
                if (r <= c.l_floor) continue;
                uint32_t used = (r == pa ? 1 : 0) + (r == pb ? 1 : 0);
                if (e != used) {
                    covers = false;
                    break;
                }
            }
            if (covers) return true;
        }
    }
    return false;
}

bool has_case_vi(const FactorView& fv, const ScaleContext& c) {
    // Three prime factors (with multiplicity) inside a window
    // [r, r L^2] with r >= R/L^2; the cofactor is unconstrained.
    for (auto [r, er] : fv.factors) {
        if (r < c.rl2_ceil) continue;
        uint64_t hi = c.mul_L2_floor(r);
        uint64_t total = 0;
        for (auto [p, e] : fv.factors)
            if (p >= r && p <= hi) total += std::min<uint32_t>(e, 3);
        if (total >= 3) return true;
    }
    return false;
}

std::vector<ECase> e_cases_of(const FactorView& fv, const ScaleContext& c) {
    std::vector<ECase> cases;
    if (has_case_i(fv, c)) cases.push_back(ECase::Smallness);
    if (has_case_ii(fv, c)) cases.push_back(ECase::Smoothness);
    if (has_case_iii(fv, c)) cases.push_back(ECase::LargeSquare);
    if (has_case_iv(fv, c)) cases.push_back(ECase::LargeSmoothFactor);
    if (has_case_v(fv, c)) cases.push_back(ECase::TwoNearbyPrimes);
    if (has_case_vi(fv, c)) cases.push_back(ECase::ThreeNearbyPrimes);
    return cases;
}

std::optional<A1Witness> a1_of(const FactorView& fv, const ScaleContext& c) {
    if (fv.n <= c.small_cut) return std::nullopt;  // needs n > x/L
    if (fv.factors.empty()) return std::nullopt;   // n = 1
    auto [p1, e1] = fv.factors.back();
    if (p1 > c.l_floor) {
        // Only d = n/p1 can be L-smooth, and only if p1 enters once.
        if (e1 != 1) return std::nullopt;
        if (fv.factors.size() >= 2 && fv.factors[fv.factors.size() - 2].first > c.l_floor)
            return std::nullopt;
        uint64_t d = fv.n / p1;
        if (d > c.d_floor) return std::nullopt;
        return A1Witness{d, p1};
    }
    // n itself is L-smooth; n/p is smallest for the largest prime.
    uint64_t d = fv.n / p1;
    if (d > c.d_floor) return std::nullopt;
    return A1Witness{d, p1};
}

std::optional<A2Witness> a2_of(const FactorView& fv, const ScaleContext& c) {
    for (auto [p, ep] : fv.factors) {
        if (p <= c.l_floor || ep != 1) continue;
        uint64_t pl = c.mul_L_floor(p);  // s-primes must exceed p*L
        uint64_t s = 1, s_mult = 0;
        bool feasible = true;
        for (auto [r, e] : fv.factors) {
            if (r == p) continue;
            if (r < p) continue;  // goes into d
            if (r <= pl) {
                feasible = false;  // caught between p and p*L
                break;
            }
            s_mult += e;
            if (s_mult > 2) {
                feasible = false;
                break;
            }
            for (uint32_t i = 0; i < e; ++i) s = checked_mul(s, r);
        }
        if (!feasible || s_mult == 0) continue;
        return A2Witness{fv.n / p / s, p, s};
    }
    return std::nullopt;
}

Classification classify_from_factors(const FactorView& fv, const ScaleContext& c) {
    Classification cl;
    cl.n = fv.n;
    cl.e_cases = e_cases_of(fv, c);
    cl.a1 = a1_of(fv, c);
    cl.a2 = a2_of(fv, c);
    return cl;
}

void compute_flags(ScaleSet& s) {
    double xd = static_cast<double>(s.x);
    double ld = s.L.to_double(), dd = s.D.to_double(), rd = s.R.to_double();
    s.admissible = false;
    if (ld > 1.0) {
        double mid = std::pow(dd, 1.0 / std::log(ld));
        double es = std::exp(std::sqrt(std::log(xd)));
        s.admissible = 1.0 < ld && ld < mid && mid < dd && dd < es && es < rd && rd < xd;
    }
    Rational two(2), one(1);
    s.operational = s.L >= two && s.R >= s.L * s.L * s.L && s.R <= Rational(s.x) &&
                    s.D >= one;
}

}  // namespace

ScaleSet ScaleSet::defaults(uint64_t x) {
    if (x < 10) throw contract_error("scales require x >= 10");
    double lx = std::log(static_cast<double>(x));
    double llx = std::log(lx);
    ScaleSet s;
    s.x = x;
    s.L = Rational::from_double_exact(std::pow(lx, 10.0));
    s.D = Rational::from_double_exact(std::exp(llx * llx * llx));
    s.R = Rational::from_double_exact(std::exp(lx / (3.0 * llx)));
    compute_flags(s);
    return s;
}

ScaleSet ScaleSet::synthetic(uint64_t x, const Rational& L, const Rational& D,
                             const Rational& R) {
    if (x < 10) throw contract_error("scales require x >= 10");
    if (L.is_zero() || D.is_zero() || R.is_zero())
        throw contract_error("scales must be positive");
    ScaleSet s;
    s.x = x;
    s.L = L;
    s.D = D;
    s.R = R;
    compute_flags(s);
    return s;
}

std::vector<ECase> classify_E(uint64_t n, const ScaleSet& scales, const Sieve& sieve) {
    if (n < 1 || n > scales.x) throw contract_error("classify requires 1 <= n <= x");
    ScaleContext c(scales);
    return e_cases_of(sieve.factorize(n), c);
}

bool verify_a1(uint64_t n, const A1Witness& w, const ScaleSet& scales, const Sieve& sieve) {
    ScaleContext c(scales);
    if (w.d == 0 || checked_mul(w.d, w.p) != n) return false;
    if (!sieve.is_prime(w.p)) return false;
    if (n <= c.small_cut || n > scales.x) return false;
    if (w.d > c.d_floor) return false;
    return sieve.factorize(w.d).largest_prime() <= c.l_floor;
}

bool verify_a2(uint64_t n, const A2Witness& w, const ScaleSet& scales, const Sieve& sieve) {
    ScaleContext c(scales);
    if (w.d == 0 || w.s <= 1) return false;
    if (checked_mul(checked_mul(w.d, w.p), w.s) != n || n > scales.x) return false;
    if (!sieve.is_prime(w.p) || w.p <= c.l_floor) return false;
    FactorView dfv = sieve.factorize(w.d);
    if (dfv.largest_prime() >= w.p) return false;  // d in N_{<p}
    FactorView sfv = sieve.factorize(w.s);
    uint64_t omega = 0;
    for (auto [p, e] : sfv.factors) omega += e;
    if (omega < 1 || omega > 2) return false;  // prime or product of two primes
    uint64_t pl = c.mul_L_floor(w.p);
    return sfv.factors.front().first > pl;
}

Classification classify_full(uint64_t n, const ScaleSet& scales, const Sieve& sieve) {
    if (n < 1 || n > scales.x) throw contract_error("classify requires 1 <= n <= x");
    ScaleContext c(scales);
    Classification cl = classify_from_factors(sieve.factorize(n), c);
    if (cl.a1 && !verify_a1(n, *cl.a1, scales, sieve))
        throw std::logic_error("A1 witness failed re-verification");
    if (cl.a2 && !verify_a2(n, *cl.a2, scales, sieve))
        throw std::logic_error("A2 witness failed re-verification");
    return cl;
}

namespace {

struct ScanTally {
    std::array<uint64_t, 6> e_counts{};
    uint64_t e_total = 0;
    uint64_t a1_count = 0;
    uint64_t a2_count = 0;
    uint64_t uncovered = 0;
    std::vector<uint64_t> uncovered_samples;
};

ScanTally scan_range(const ScaleSet& scales, const Sieve& sieve, uint64_t lo, uint64_t hi) {
    ScaleContext c(scales);
    ScanTally t;
    sieve.for_each_factored(lo, hi, [&](const FactorView& fv) {
        Classification cl = classify_from_factors(fv, c);
        for (ECase e : cl.e_cases) ++t.e_counts[static_cast<int>(e) - 1];
        if (cl.in_e()) ++t.e_total;
        if (cl.a1) ++t.a1_count;
        if (cl.a2) ++t.a2_count;
        if (!cl.covered()) {
            ++t.uncovered;
            if (t.uncovered_samples.size() < 16) t.uncovered_samples.push_back(fv.n);
        }
    });
    return t;
}

ScanTally scan_all(const ScaleSet& scales, const Sieve& sieve, unsigned threads) {
    uint64_t x = scales.x;
    if (threads <= 1 || x < 4096) return scan_range(scales, sieve, 1, x + 1);

    // Window-parallel with ordered merge; tallies are additive, so the
    // result is independent of the partition.
    std::vector<ScanTally> parts(threads);
    std::vector<std::thread> pool;
    uint64_t chunk = x / threads + 1;
    for (unsigned t = 0; t < threads; ++t) {
        uint64_t lo = 1 + uint64_t(t) * chunk;
        uint64_t hi = std::min(x + 1, lo + chunk);
        if (lo >= hi) continue;
        pool.emplace_back([&, t, lo, hi] { parts[t] = scan_range(scales, sieve, lo, hi); });
    }
    for (auto& th : pool) th.join();
    ScanTally total;
    for (const ScanTally& p : parts) {
        for (int i = 0; i < 6; ++i) total.e_counts[i] += p.e_counts[i];
        total.e_total += p.e_total;
        total.a1_count += p.a1_count;
        total.a2_count += p.a2_count;
        total.uncovered += p.uncovered;
        for (uint64_t n : p.uncovered_samples)
            if (total.uncovered_samples.size() < 16) total.uncovered_samples.push_back(n);
    }
    return total;
}

}  // namespace

CoverageReport coverage_check(const ScaleSet& scales, const Sieve& sieve, unsigned threads) {
    if (!scales.operational)
        throw contract_error("coverage_check requires operational scales");
    ScanTally t = scan_all(scales, sieve, threads);
    CoverageReport r;
    r.x = scales.x;
    r.uncovered = t.uncovered;
    r.uncovered_samples = std::move(t.uncovered_samples);
    r.e_counts = t.e_counts;
    r.e_total = t.e_total;
    r.a1_count = t.a1_count;
    r.a2_count = t.a2_count;
    return r;
}

CensusReport exceptional_census(const ScaleSet& scales, const Sieve& sieve,
                                unsigned threads) {
    if (!scales.operational)
        throw contract_error("exceptional_census requires operational scales");
    ScanTally t = scan_all(scales, sieve, threads);
    CensusReport r;
    r.x = scales.x;
    r.e_counts = t.e_counts;
    r.e_total = t.e_total;
    double xd = static_cast<double>(scales.x);
    double ll = std::log(std::log(xd));
    r.ratio = static_cast<double>(t.e_total) /
              (xd * std::pow(ll, 5.0) / (std::log(xd) * std::log(xd)));
    return r;
}

}  // namespace mono
