#include "mono/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mono/util.hpp"

namespace mono {

namespace {

// Patience tails for the longest nondecreasing (or nonincreasing)
// subsequence.  tails_[k] is the best (smallest, resp. largest)
// possible final value of a monotone subsequence of length k+1; an
// incoming value replaces the first tail that breaks monotonicity.
class PatienceTails {
public:
    explicit PatienceTails(bool nonincreasing = false) : nonincreasing_(nonincreasing) {}

    // Returns the pile the value landed on.
    size_t push(int64_t v) {
        size_t pos;
        if (!nonincreasing_)
            pos = std::upper_bound(tails_.begin(), tails_.end(), v) - tails_.begin();
        else
            pos = std::upper_bound(tails_.begin(), tails_.end(), v, std::greater<int64_t>()) -
                  tails_.begin();
        if (pos == tails_.size())
            tails_.push_back(v);
        else
            tails_[pos] = v;
        return pos;
    }

    uint64_t length() const { return tails_.size(); }

private:
    bool nonincreasing_;
    std::vector<int64_t> tails_;
};

int64_t to_signed(uint64_t v) {
    if (v > uint64_t(std::numeric_limits<int64_t>::max()))
        throw std::overflow_error("value does not fit in int64");
    return static_cast<int64_t>(v);
}

}  // namespace

uint64_t lnds_length(std::span<const int64_t> values) {
    PatienceTails t;
    for (int64_t v : values) t.push(v);
    return t.length();
}

std::vector<uint64_t> lnds_prefix_lengths(std::span<const int64_t> values) {
    PatienceTails t;
    std::vector<uint64_t> out;
    out.reserve(values.size());
    for (int64_t v : values) {
        t.push(v);
        out.push_back(t.length());
    }
    return out;
}

std::vector<uint64_t> lnds_oracle_prefix_lengths(std::span<const int64_t> values) {
    if (values.size() > 5000) throw capacity_error("lnds_oracle limited to 5000 values");
    size_t n = values.size();
    std::vector<uint64_t> dp(n, 1), out(n, 0);
    uint64_t best = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < i; ++j)
            if (values[j] <= values[i] && dp[j] + 1 > dp[i]) dp[i] = dp[j] + 1;
        best = std::max(best, dp[i]);
        out[i] = best;
    }
    return out;
}

uint64_t lnds_oracle(std::span<const int64_t> values) {
    if (values.empty()) return 0;
    return lnds_oracle_prefix_lengths(values).back();
}

uint64_t m_length(uint64_t x, Fn f, const Sieve& sieve) {
    if (x < 1) throw contract_error("m_length requires x >= 1");
    PatienceTails up;
    sieve.for_each_value(f, 1, x + 1, [&](uint64_t, uint64_t v) { up.push(to_signed(v)); });
    return up.length();
}

MonotoneStats compute_stats(uint64_t x, Fn f, const Sieve& sieve) {
    if (x < 1) throw contract_error("compute_stats requires x >= 1");
    MonotoneStats st;
    st.x = x;
    st.fn = f;

    PatienceTails up, down(true);
    std::vector<uint64_t> values;
    values.reserve(x);
    sieve.for_each_value(f, 1, x + 1, [&](uint64_t, uint64_t v) {
        int64_t sv = to_signed(v);
        up.push(sv);
        down.push(sv);
        values.push_back(v);
    });
    st.m = up.length();
    st.m_down = down.length();

    std::sort(values.begin(), values.end());
    uint64_t distinct = 0, best_run = 0, run = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i == 0 || values[i] != values[i - 1]) {
            ++distinct;
            run = 1;
        } else {
            ++run;
        }
        best_run = std::max(best_run, run);
    }
    st.w = distinct;
    st.m_const = best_run;

    st.pi = sieve.prime_count(x);
    st.delta = static_cast<int64_t>(st.m) - static_cast<int64_t>(st.pi);
    return st;
}

uint64_t m_subset(std::span<const uint64_t> a, Fn f, const Sieve& sieve) {
    if (a.empty()) return 0;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1]) throw contract_error("m_subset requires a strictly increasing set");
    if (a.front() < 1) throw contract_error("m_subset requires positive members");

    PatienceTails up;
    size_t next = 0;
    sieve.for_each_value(f, a.front(), a.back() + 1, [&](uint64_t n, uint64_t v) {
        if (next < a.size() && a[next] == n) {
            up.push(to_signed(v));
            ++next;
        }
    });
    return up.length();
}

WitnessSequence witness(uint64_t x, Fn f, const Sieve& sieve, uint64_t witness_limit) {
    if (x < 1) throw contract_error("witness requires x >= 1");
    if (x > witness_limit)
        throw capacity_error("witness: x exceeds the witness limit (length-only mode remains available)");

    // Patience with back-links: pile_top_[k] is the index ending the
    // current best subsequence of length k+1; prev_[n] the index
    // before n in that subsequence.
    std::vector<int64_t> tails;
    std::vector<uint32_t> pile_top;
    std::vector<uint32_t> prev(x + 1, 0);

    sieve.for_each_value(f, 1, x + 1, [&](uint64_t n, uint64_t v) {
        int64_t sv = to_signed(v);
        size_t pos = std::upper_bound(tails.begin(), tails.end(), sv) - tails.begin();
        if (pos == tails.size()) {
            tails.push_back(sv);
            pile_top.push_back(static_cast<uint32_t>(n));
        } else {
            tails[pos] = sv;
            pile_top[pos] = static_cast<uint32_t>(n);
        }
        prev[n] = pos > 0 ? pile_top[pos - 1] : 0;
    });

    WitnessSequence w;
    w.indices.resize(tails.size());
    uint32_t cur = pile_top.back();
    for (size_t i = tails.size(); i-- > 0;) {
        w.indices[i] = cur;
        cur = prev[cur];
    }

    w.values.resize(w.indices.size());
    size_t next = 0;
    sieve.for_each_value(f, 1, x + 1, [&](uint64_t n, uint64_t v) {
        if (next < w.indices.size() && w.indices[next] == n) w.values[next++] = v;
    });
    return w;
}

HarmonicCheck harmonic_check(const WitnessSequence& w, uint64_t x) {
    if (x < 10) throw std::domain_error("harmonic_check requires x >= 10");
    if (w.indices.empty()) throw contract_error("harmonic_check: empty witness");
    for (size_t i = 0; i < w.indices.size(); ++i) {
        if (w.indices[i] < 1 || w.indices[i] > x)
            throw contract_error("harmonic_check: witness index outside [1, x]");
        if (i > 0 && w.indices[i] <= w.indices[i - 1])
            throw contract_error("harmonic_check: witness indices not increasing");
    }
    KahanSum sum;
    for (uint64_t n : w.indices) sum.add(1.0 / static_cast<double>(n));
    HarmonicCheck hc;
    hc.sum = sum.value();
    hc.excess = hc.sum - std::log(std::log(static_cast<double>(x)));
    return hc;
}

}  // namespace mono
