#include "mono/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "mono/anatomy.hpp"
#include "mono/bfile.hpp"
#include "mono/ledger.hpp"
#include "mono/monotone.hpp"
#include "mono/obstructions.hpp"
#include "mono/ratio.hpp"
#include "mono/sieve.hpp"
#include "mono/sigma_ratio.hpp"

namespace mono::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;
constexpr int kCapacity = 3;

struct Output {
    json payload;
    std::string csv;
    int status = kOk;
};

std::string csv_join(const std::vector<std::string>& cells) {
    std::string row;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

std::string join_u64(const std::vector<uint64_t>& v, char sep = ';') {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

const char* e_case_label(ECase e) {
    switch (e) {
        case ECase::Smallness: return "i";
        case ECase::Smoothness: return "ii";
        case ECase::LargeSquare: return "iii";
        case ECase::LargeSmoothFactor: return "iv";
        case ECase::TwoNearbyPrimes: return "v";
        case ECase::ThreeNearbyPrimes: return "vi";
    }
    return "?";
}

// Shared per-invocation state, filled by CLI11 before the handler runs.
struct Ctx {
    // common options
    std::string format = "json";
    std::string out_path;
    std::string ledger_path;
    uint64_t bound = Sieve::kDefaultBound;
    unsigned threads = 1;

    // subcommand parameters
    uint64_t x = 0;
    uint64_t n = 0;
    uint64_t limit = 0;
    uint64_t gamma = 1;
    uint64_t s_max = 100'000;
    uint64_t p = 0;
    uint32_t k = 0;
    int j_max = 10;
    std::string fn_name = "phi";
    std::string q_text;
    std::string scale_l, scale_d, scale_r;
    std::string in_path, set_text;
    std::string file_path, seq_id, quantity = "m";
    bool prune = false;
    bool elements = false;

    std::map<std::string, std::string> params;
    const Sieve& sieve() {
        if (!sieve_) sieve_ = std::make_unique<Sieve>(bound);
        return *sieve_;
    }

private:
    std::unique_ptr<Sieve> sieve_;
};

ScaleSet scales_from(Ctx& c) {
    if (c.scale_l.empty() != c.scale_d.empty() || c.scale_l.empty() != c.scale_r.empty())
        throw contract_error("provide all of --L/--D/--R or none");
    if (c.scale_l.empty()) return ScaleSet::defaults(c.x);
    return ScaleSet::synthetic(c.x, Rational::parse(c.scale_l), Rational::parse(c.scale_d),
                               Rational::parse(c.scale_r));
}

json scales_json(const ScaleSet& s) {
    return json{{"x", s.x},
                {"L", s.L.str()},
                {"D", s.D.str()},
                {"R", s.R.str()},
                {"admissible", s.admissible},
                {"operational", s.operational}};
}

// ---- handlers ------------------------------------------------------

Output run_stats(Ctx& c) {
    c.params = {{"x", std::to_string(c.x)}, {"fn", c.fn_name}};

    Fn f = fn_from_string(c.fn_name);
    MonotoneStats st = compute_stats(c.x, f, c.sieve());
    Output o;
    o.payload = json{{"x", st.x},       {"fn", to_string(f)},  {"M", st.m},
                     {"M_down", st.m_down}, {"M_const", st.m_const}, {"W", st.w},
                     {"pi", st.pi},     {"delta", st.delta}};
    o.csv = csv_join({"x", "fn", "M", "M_down", "M_const", "W", "pi", "delta"}) +
            csv_join({std::to_string(st.x), to_string(f), std::to_string(st.m),
                      std::to_string(st.m_down), std::to_string(st.m_const),
                      std::to_string(st.w), std::to_string(st.pi),
                      std::to_string(st.delta)});
    return o;
}

Output run_witness(Ctx& c) {
    c.params = {{"x", std::to_string(c.x)}, {"fn", c.fn_name}};

    Fn f = fn_from_string(c.fn_name);
    uint64_t limit = c.limit ? c.limit : kDefaultWitnessLimit;
    WitnessSequence w = witness(c.x, f, c.sieve(), limit);
    Output o;
    o.payload = json{{"x", c.x},
                     {"fn", to_string(f)},
                     {"length", w.indices.size()},
                     {"indices", w.indices},
                     {"values", w.values}};
    if (c.x >= 10) {
        HarmonicCheck hc = harmonic_check(w, c.x);
        o.payload["harmonic_sum"] = hc.sum;
        o.payload["harmonic_excess"] = hc.excess;
    }
    o.csv = csv_join({"n", "value"});
    for (size_t i = 0; i < w.indices.size(); ++i)
        o.csv += csv_join({std::to_string(w.indices[i]), std::to_string(w.values[i])});
    return o;
}

Output run_subset_m(Ctx& c) {
    c.params = {{"fn", c.fn_name}, {"in", c.in_path}, {"set", c.set_text}};

    Fn f = fn_from_string(c.fn_name);
    std::vector<uint64_t> a;
    if (!c.in_path.empty()) {
        std::ifstream in(c.in_path);
        if (!in) throw contract_error("cannot open set file '" + c.in_path + "'");
        uint64_t v;
        while (in >> v) a.push_back(v);
    } else if (!c.set_text.empty()) {
        std::stringstream ss(c.set_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) a.push_back(std::stoull(tok));
    } else {
        throw contract_error("subset-m needs --in or --set");
    }
    uint64_t m = m_subset(a, f, c.sieve());
    Output o;
    o.payload = json{{"size", a.size()}, {"fn", to_string(f)}, {"M", m}};
    o.csv = csv_join({"size", "fn", "M"}) +
            csv_join({std::to_string(a.size()), to_string(f), std::to_string(m)});
    return o;
}

Output run_ratio_exact(Ctx& c) {
    c.params = {{"fn", c.fn_name}, {"q", c.q_text}};

    Fn f = fn_from_string(c.fn_name);
    Rational q = Rational::parse(c.q_text);
    RatioClassResult r =
        f == Fn::Phi ? phi_class_exact(q, c.sieve()) : psi_class_exact(q, c.sieve());
    Output o;
    o.payload = json{{"fn", to_string(f)},
                     {"q", q.str()},
                     {"status", r.nonempty() ? "nonempty" : "empty"},
                     {"primes", r.primes}};
    o.payload["value"] = r.nonempty() ? json(r.value.str()) : json(nullptr);
    o.csv = csv_join({"fn", "q", "status", "primes", "value"}) +
            csv_join({to_string(f), q.str(), r.nonempty() ? "nonempty" : "empty",
                      join_u64(r.primes), r.nonempty() ? r.value.str() : ""});
    return o;
}

Output run_ratio_enumerate(Ctx& c) {
    c.params = {{"fn", c.fn_name}, {"q", c.q_text}, {"limit", std::to_string(c.limit)}};

    Fn f = fn_from_string(c.fn_name);
    Rational q = Rational::parse(c.q_text);
    std::vector<uint64_t> members = class_enumerate(f, q, c.limit, c.sieve());
    Output o;
    o.payload = json{{"fn", to_string(f)},
                     {"q", q.str()},
                     {"limit", c.limit},
                     {"count", members.size()},
                     {"members", members}};
    o.csv = csv_join({"d"});
    for (uint64_t d : members) o.csv += csv_join({std::to_string(d)});
    return o;
}

Output run_ratio_sum(Ctx& c) {
    c.params = {{"fn", c.fn_name}, {"q", c.q_text}, {"limit", std::to_string(c.limit)}};

    Fn f = fn_from_string(c.fn_name);
    Rational q = Rational::parse(c.q_text);
    Rational sum = class_partial_sum(f, q, c.limit, c.sieve());
    Output o;
    o.payload = json{{"fn", to_string(f)},
                     {"q", q.str()},
                     {"limit", c.limit},
                     {"sum", sum.str()},
                     {"approx", sum.to_double()}};
    o.csv = csv_join({"fn", "q", "limit", "sum", "approx"}) +
            csv_join({to_string(f), q.str(), std::to_string(c.limit), sum.str(),
                      std::to_string(sum.to_double())});
    return o;
}

Output run_sigma_sum(Ctx& c) {
    c.params = {{"q", c.q_text}, {"limit", std::to_string(c.limit)}};

    Rational q = Rational::parse(c.q_text);
    Rational sum = sigma_class_partial_sum(q, c.limit, c.sieve());
    Output o;
    o.payload = json{{"q", q.str()},
                     {"limit", c.limit},
                     {"sum", sum.str()},
                     {"approx", sum.to_double()}};
    o.csv = csv_join({"q", "limit", "sum", "approx"}) +
            csv_join({q.str(), std::to_string(c.limit), sum.str(),
                      std::to_string(sum.to_double())});
    return o;
}

Output run_sigma_sgamma(Ctx& c) {
    c.params = {{"q", c.q_text}, {"gamma", std::to_string(c.gamma)}, {"smax", std::to_string(c.s_max)}};

    Rational q = Rational::parse(c.q_text);
    SGammaRecord rec = solve_s_gamma(q, c.gamma, c.s_max, c.sieve());
    Output o;
    o.payload = json{{"q", q.str()},
                     {"gamma", rec.gamma},
                     {"s_max", rec.s_max},
                     {"outcome", rec.found() ? "found" : "not_found_within"}};
    if (rec.found()) {
        o.payload["s"] = rec.s;
        o.payload["term"] = rec.term.str();
    }
    o.csv = csv_join({"q", "gamma", "s_max", "outcome", "s", "term"}) +
            csv_join({q.str(), std::to_string(rec.gamma), std::to_string(rec.s_max),
                      rec.found() ? "found" : "not_found_within",
                      rec.found() ? std::to_string(rec.s) : "",
                      rec.found() ? rec.term.str() : ""});
    return o;
}

Output run_sigma_powerful(Ctx& c) {
    c.params = {{"limit", std::to_string(c.limit)}};

    uint64_t count = 0;
    double sum = powerful_sum(c.limit, &count);
    Output o;
    o.payload = json{{"limit", c.limit}, {"count", count}, {"sum", sum}};
    o.csv = csv_join({"limit", "count", "sum"}) +
            csv_join({std::to_string(c.limit), std::to_string(count), std::to_string(sum)});
    return o;
}

Output run_sigma_keyobs(Ctx& c) {
    c.params = {{"limit", std::to_string(c.limit)}};

    std::vector<KeyObsViolation> violations = key_observation_check(c.limit, c.sieve());
    Output o;
    o.payload = json{{"limit", c.limit}, {"violations", json::array()}};
    o.csv = csv_join({"q", "gamma", "d1", "d2"});
    for (const KeyObsViolation& v : violations) {
        o.payload["violations"].push_back(
            {{"q", v.q.str()}, {"gamma", v.gamma}, {"d1", v.d1}, {"d2", v.d2}});
        o.csv += csv_join({v.q.str(), std::to_string(v.gamma), std::to_string(v.d1),
                           std::to_string(v.d2)});
    }
    o.status = violations.empty() ? kOk : kVerificationFailure;
    return o;
}

Output run_sigma_final(Ctx& c) {
    c.params = {{"q", c.q_text}, {"jmax", std::to_string(c.j_max)}, {"smax", std::to_string(c.s_max)}};

    Rational q = Rational::parse(c.q_text);
    FinalInequalityReport rep = final_inequality_eval(q, c.j_max, c.s_max, c.sieve());
    const char* case_name = rep.s1_case == FinalInequalityReport::S1Case::Two ? "s1_eq_2"
                            : rep.s1_case == FinalInequalityReport::S1Case::Unresolved
                                ? "s1_unresolved"
                                : "s1_at_least_3";
    Output o;
    o.payload = json{{"q", q.str()},
                     {"j_max", rep.j_max},
                     {"s_max", rep.s_max},
                     {"case", case_name},
                     {"s1", rep.s1.found() ? json(rep.s1.s) : json(nullptr)},
                     {"truncated", rep.truncated.str()},
                     {"lower_bound", rep.lower_bound.str()},
                     {"holds", rep.bound_holds}};
    o.csv = csv_join({"q", "j_max", "s_max", "case", "s1", "truncated", "lower_bound",
                      "holds"}) +
            csv_join({q.str(), std::to_string(rep.j_max), std::to_string(rep.s_max),
                      case_name, rep.s1.found() ? std::to_string(rep.s1.s) : "",
                      rep.truncated.str(), rep.lower_bound.str(),
                      rep.bound_holds ? "true" : "false"});
    o.status = rep.bound_holds ? kOk : kVerificationFailure;
    return o;
}

Output run_classify(Ctx& c) {
    c.params = {{"n", std::to_string(c.n)}, {"x", std::to_string(c.x)}, {"L", c.scale_l}, {"D", c.scale_d}, {"R", c.scale_r}};

    ScaleSet scales = scales_from(c);
    Classification cl = classify_full(c.n, scales, c.sieve());
    std::vector<std::string> labels;
    for (ECase e : cl.e_cases) labels.push_back(e_case_label(e));
    Output o;
    o.payload = json{{"n", cl.n}, {"scales", scales_json(scales)}, {"e_cases", labels}};
    o.payload["a1"] =
        cl.a1 ? json{{"d", cl.a1->d}, {"p", cl.a1->p}} : json(nullptr);
    o.payload["a2"] = cl.a2 ? json{{"d", cl.a2->d}, {"p", cl.a2->p}, {"s", cl.a2->s}}
                            : json(nullptr);
    std::string joined;
    for (size_t i = 0; i < labels.size(); ++i) joined += (i ? ";" : "") + labels[i];
    o.csv = csv_join({"n", "x", "e_cases", "a1_d", "a1_p", "a2_d", "a2_p", "a2_s"}) +
            csv_join({std::to_string(cl.n), std::to_string(scales.x), joined,
                      cl.a1 ? std::to_string(cl.a1->d) : "",
                      cl.a1 ? std::to_string(cl.a1->p) : "",
                      cl.a2 ? std::to_string(cl.a2->d) : "",
                      cl.a2 ? std::to_string(cl.a2->p) : "",
                      cl.a2 ? std::to_string(cl.a2->s) : ""});
    return o;
}

Output run_coverage(Ctx& c) {
    c.params = {{"x", std::to_string(c.x)}, {"L", c.scale_l}, {"D", c.scale_d}, {"R", c.scale_r}, {"threads", std::to_string(c.threads)}};

    ScaleSet scales = scales_from(c);
    CoverageReport r = coverage_check(scales, c.sieve(), c.threads);
    Output o;
    o.payload = json{{"scales", scales_json(scales)},
                     {"uncovered", r.uncovered},
                     {"uncovered_samples", r.uncovered_samples},
                     {"e_counts", r.e_counts},
                     {"e_total", r.e_total},
                     {"a1", r.a1_count},
                     {"a2", r.a2_count}};
    o.csv = csv_join({"x", "L", "D", "R", "uncovered", "e_i", "e_ii", "e_iii", "e_iv",
                      "e_v", "e_vi", "e_total", "a1", "a2"}) +
            csv_join({std::to_string(r.x), scales.L.str(), scales.D.str(), scales.R.str(),
                      std::to_string(r.uncovered), std::to_string(r.e_counts[0]),
                      std::to_string(r.e_counts[1]), std::to_string(r.e_counts[2]),
                      std::to_string(r.e_counts[3]), std::to_string(r.e_counts[4]),
                      std::to_string(r.e_counts[5]), std::to_string(r.e_total),
                      std::to_string(r.a1_count), std::to_string(r.a2_count)});
    o.status = r.uncovered == 0 ? kOk : kVerificationFailure;
    return o;
}

Output run_census(Ctx& c) {
    c.params = {{"x", std::to_string(c.x)}, {"L", c.scale_l}, {"D", c.scale_d}, {"R", c.scale_r}, {"threads", std::to_string(c.threads)}};

    ScaleSet scales = scales_from(c);
    CensusReport r = exceptional_census(scales, c.sieve(), c.threads);
    Output o;
    o.payload = json{{"scales", scales_json(scales)},
                     {"e_counts", r.e_counts},
                     {"e_total", r.e_total},
                     {"ratio", r.ratio}};
    o.csv = csv_join({"x", "L", "D", "R", "e_i", "e_ii", "e_iii", "e_iv", "e_v", "e_vi",
                      "e_total", "ratio"}) +
            csv_join({std::to_string(r.x), scales.L.str(), scales.D.str(), scales.R.str(),
                      std::to_string(r.e_counts[0]), std::to_string(r.e_counts[1]),
                      std::to_string(r.e_counts[2]), std::to_string(r.e_counts[3]),
                      std::to_string(r.e_counts[4]), std::to_string(r.e_counts[5]),
                      std::to_string(r.e_total), std::to_string(r.ratio)});
    return o;
}

Output run_scan_gap(Ctx& c, GapVariant variant) {
    c.params = {{"limit", std::to_string(c.limit)}};

    std::vector<uint64_t> failing = legendre_scan(c.limit, variant, c.sieve());
    Output o;
    o.payload = json{{"variant", variant == GapVariant::Legendre ? "legendre" : "oppermann"},
                     {"p_max", c.limit},
                     {"counterexamples", failing}};
    o.csv = csv_join({"p"});
    for (uint64_t p : failing) o.csv += csv_join({std::to_string(p)});
    o.status = failing.empty() ? kOk : kVerificationFailure;
    return o;
}

Output run_scan_phigap(Ctx& c) {
    c.params = {{"p", std::to_string(c.p)}, {"limit", std::to_string(c.limit)}};

    const Sieve& sieve = c.sieve();
    Output o;
    if (c.p) {
        uint64_t n = next_composite_phi(c.p, sieve);
        // n > p + sqrt(p) - 1  <=>  (n - p + 1)^2 > p, exactly.
        uint64_t diff = n - c.p + 1;
        bool ok = diff * diff > c.p;
        o.payload = json{{"p", c.p}, {"n", n}, {"exceeds_sqrt_bound", ok}};
        o.csv = csv_join({"p", "n", "exceeds_sqrt_bound"}) +
                csv_join({std::to_string(c.p), std::to_string(n), ok ? "true" : "false"});
        o.status = ok ? kOk : kVerificationFailure;
        return o;
    }
    uint64_t checked = 0;
    std::vector<uint64_t> violations;
    sieve.for_each_prime(2, c.limit + 1, [&](uint64_t p) {
        uint64_t n = next_composite_phi(p, sieve);
        uint64_t diff = n - p + 1;
        if (!(diff * diff > p)) violations.push_back(p);
        ++checked;
    });
    o.payload = json{{"p_max", c.limit}, {"checked", checked}, {"violations", violations}};
    o.csv = csv_join({"p_max", "checked", "violations"}) +
            csv_join({std::to_string(c.limit), std::to_string(checked),
                      std::to_string(violations.size())});
    o.status = violations.empty() ? kOk : kVerificationFailure;
    return o;
}

Output run_dhl(Ctx& c) {
    c.params = {{"k", std::to_string(c.k)}, {"x", std::to_string(c.x)}};

    uint64_t count = dhl_count(c.k, c.x, c.sieve());
    Output o;
    o.payload = json{{"k", c.k}, {"x", c.x}, {"count", count}};
    o.csv = csv_join({"k", "x", "count"}) +
            csv_join({std::to_string(c.k), std::to_string(c.x), std::to_string(count)});
    return o;
}

Output run_construct_a(Ctx& c) {
    c.params = {{"x", std::to_string(c.x)}, {"prune", c.prune ? "true" : "false"}};

    const Sieve& sieve = c.sieve();
    std::vector<uint64_t> a = construct_A(c.x, sieve);
    uint32_t k0 = k0_for(c.x);
    std::vector<ViolationPair> violations = find_violations(a, sieve);
    Output o;
    o.payload = json{{"x", c.x},
                     {"k0", k0},
                     {"size", a.size()},
                     {"violations", violations.size()}};
    json vlist = json::array();
    for (const ViolationPair& v : violations)
        vlist.push_back({{"n", v.n},
                         {"n_prime", v.n_prime},
                         {"k", v.k},
                         {"k_prime", v.k_prime},
                         {"p", v.p},
                         {"p_prime", v.p_prime}});
    o.payload["violation_pairs"] = vlist;
    std::string prune_cells[3] = {"", "", ""};
    if (c.prune) {
        PruneResult pr = prune_A(a, c.x, sieve);
        o.payload["deleted"] = pr.deleted;
        o.payload["kept"] = pr.kept.size();
        o.payload["surplus"] = pr.surplus;
        prune_cells[0] = std::to_string(pr.deleted);
        prune_cells[1] = std::to_string(pr.kept.size());
        prune_cells[2] = std::to_string(pr.surplus);
    }
    if (c.elements) o.payload["elements"] = a;
    o.csv = csv_join({"x", "k0", "size", "violations", "deleted", "kept", "surplus"}) +
            csv_join({std::to_string(c.x), std::to_string(k0), std::to_string(a.size()),
                      std::to_string(violations.size()), prune_cells[0], prune_cells[1],
                      prune_cells[2]});
    return o;
}

Output run_oeis_check(Ctx& c) {
    c.params = {{"file", c.file_path}, {"seq", c.seq_id}, {"quantity", c.quantity}, {"fn", c.fn_name}, {"limit", std::to_string(c.limit)}};

    const Sieve& sieve = c.sieve();
    Fn f = fn_from_string(c.fn_name);
    BFile bf = load_bfile(c.file_path, c.seq_id.empty() ? "?" : c.seq_id);
    if (bf.terms.empty()) throw contract_error("b-file has no terms");
    if (bf.first_index() < 1) throw contract_error("b-file indices must start at >= 1");
    uint64_t x_max = static_cast<uint64_t>(bf.last_index());
    if (c.limit) x_max = std::min(x_max, c.limit);

    // Stream the function once, tracking the prefix quantity.
    std::vector<std::pair<int64_t, int64_t>> computed;
    if (c.quantity == "m") {
        std::vector<int64_t> values;
        values.reserve(x_max);
        sieve.for_each_value(f, 1, x_max + 1, [&](uint64_t, uint64_t v) {
            values.push_back(static_cast<int64_t>(v));
        });
        std::vector<uint64_t> lengths = lnds_prefix_lengths(values);
        for (int64_t i = bf.first_index(); i <= static_cast<int64_t>(x_max); ++i)
            computed.emplace_back(i, static_cast<int64_t>(lengths[i - 1]));
    } else if (c.quantity == "w") {
        std::unordered_set<uint64_t> seen;
        std::vector<uint64_t> w_prefix;
        w_prefix.reserve(x_max);
        sieve.for_each_value(f, 1, x_max + 1, [&](uint64_t, uint64_t v) {
            seen.insert(v);
            w_prefix.push_back(seen.size());
        });
        for (int64_t i = bf.first_index(); i <= static_cast<int64_t>(x_max); ++i)
            computed.emplace_back(i, static_cast<int64_t>(w_prefix[i - 1]));
    } else {
        throw contract_error("--quantity must be m or w");
    }

    std::vector<OeisMismatch> mismatches = oeis_check(bf, computed);
    Output o;
    o.payload = json{{"seq", bf.id},
                     {"quantity", c.quantity},
                     {"fn", to_string(f)},
                     {"checked", computed.size()},
                     {"mismatches", json::array()}};
    o.csv = csv_join({"index", "expected", "got"});
    for (const OeisMismatch& m : mismatches) {
        o.payload["mismatches"].push_back(
            {{"index", m.index}, {"expected", m.expected}, {"got", m.got}});
        o.csv += csv_join({std::to_string(m.index), std::to_string(m.expected),
                           std::to_string(m.got)});
    }
    o.status = mismatches.empty() ? kOk : kVerificationFailure;
    return o;
}

void write_output(const Ctx& c, const Output& o) {
    std::string text =
        c.format == "csv" ? o.csv : o.payload.dump(2) + "\n";
    if (c.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.out_path);
        if (!out) throw std::runtime_error("cannot open output '" + c.out_path + "'");
        out << text;
    }
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Desk-scale toolkit for monotone behaviour of phi, sigma and psi"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersionTag);

    Ctx c;
    std::string command;
    std::function<Output(Ctx&)> handler;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "Output format (csv|json)")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", c.out_path, "Write output to this path instead of stdout");
        sub->add_option("--ledger", c.ledger_path, "Append a run record to this NDJSON file");
        sub->add_option("--bound", c.bound, "Global sieve bound")->capture_default_str();
    };
    auto arm = [&](CLI::App* sub, const char* name, Output (*fn)(Ctx&)) {
        sub->callback([&, name, fn] {
            command = name;
            handler = fn;
        });
    };

    {
        CLI::App* s = app.add_subcommand("stats", "MonotoneStats for f on [1, x]");
        s->add_option("--x", c.x, "Upper bound")->required();
        s->add_option("--fn", c.fn_name, "phi|sigma|psi")->capture_default_str();
        add_common(s);
        arm(s, "stats", run_stats);
    }
    {
        CLI::App* s = app.add_subcommand("witness", "A maximizing nondecreasing subsequence");
        s->add_option("--x", c.x, "Upper bound")->required();
        s->add_option("--fn", c.fn_name, "phi|sigma|psi")->capture_default_str();
        s->add_option("--limit", c.limit, "Witness-mode bound override");
        add_common(s);
        arm(s, "witness", run_witness);
    }
    {
        CLI::App* s = app.add_subcommand("subset-m", "M(A) for an explicit set");
        s->add_option("--fn", c.fn_name, "phi|sigma|psi")->capture_default_str();
        s->add_option("--in", c.in_path, "File of whitespace-separated members");
        s->add_option("--set", c.set_text, "Comma-separated members");
        add_common(s);
        arm(s, "subset-m", run_subset_m);
    }
    {
        CLI::App* ratio = app.add_subcommand("ratio", "Ratio classes of phi or psi");
        ratio->require_subcommand(1);
        CLI::App* exact = ratio->add_subcommand("exact", "Closed form for the class of q");
        exact->add_option("--fn", c.fn_name, "phi|psi")->capture_default_str();
        exact->add_option("--q", c.q_text, "Target ratio a/b")->required();
        add_common(exact);
        arm(exact, "ratio exact", run_ratio_exact);
        CLI::App* en = ratio->add_subcommand("enumerate", "Members of the class up to a bound");
        en->add_option("--fn", c.fn_name, "phi|psi")->capture_default_str();
        en->add_option("--q", c.q_text, "Target ratio a/b")->required();
        en->add_option("--limit", c.limit, "Enumeration bound")->required();
        add_common(en);
        arm(en, "ratio enumerate", run_ratio_enumerate);
        CLI::App* sum = ratio->add_subcommand("sum", "Exact partial sum of 1/d over the class");
        sum->add_option("--fn", c.fn_name, "phi|psi")->capture_default_str();
        sum->add_option("--q", c.q_text, "Target ratio a/b")->required();
        sum->add_option("--limit", c.limit, "Truncation bound")->required();
        add_common(sum);
        arm(sum, "ratio sum", run_ratio_sum);
    }
    {
        CLI::App* sg = app.add_subcommand("sigma", "Sigma ratio-class machinery");
        sg->require_subcommand(1);
        CLI::App* sum = sg->add_subcommand("sum", "Partial sum of 1/d over a sigma class");
        sum->add_option("--q", c.q_text, "Target ratio a/b")->required();
        sum->add_option("--limit", c.limit, "Truncation bound")->required();
        add_common(sum);
        arm(sum, "sigma sum", run_sigma_sum);
        CLI::App* sgm = sg->add_subcommand("sgamma", "Solve for s_gamma by bounded search");
        sgm->add_option("--q", c.q_text, "Target ratio a/b")->required();
        sgm->add_option("--gamma", c.gamma, "Powerful part")->required();
        sgm->add_option("--smax", c.s_max, "Search bound")->capture_default_str();
        add_common(sgm);
        arm(sgm, "sigma sgamma", run_sigma_sgamma);
        CLI::App* pw = sg->add_subcommand("powerful", "Reciprocal sum over powerful numbers");
        pw->add_option("--limit", c.limit, "Upper bound")->required();
        add_common(pw);
        arm(pw, "sigma powerful", run_sigma_powerful);
        CLI::App* ko = sg->add_subcommand("keyobs", "gamma-determines-s uniqueness check");
        ko->add_option("--limit", c.limit, "Upper bound")->required();
        add_common(ko);
        arm(ko, "sigma keyobs", run_sigma_keyobs);
        CLI::App* fin = sg->add_subcommand("final", "Dyadic lower-bound case analysis");
        fin->add_option("--q", c.q_text, "Target ratio a/b (!= 1)")->required();
        fin->add_option("--jmax", c.j_max, "Dyadic truncation")->capture_default_str();
        fin->add_option("--smax", c.s_max, "Search bound per term")->capture_default_str();
        add_common(fin);
        arm(fin, "sigma final", run_sigma_final);
    }
    {
        CLI::App* s = app.add_subcommand("classify", "E cases and A1/A2 membership of n");
        s->add_option("--n", c.n, "Integer to classify")->required();
        s->add_option("--x", c.x, "Ambient bound")->required();
        s->add_option("--L", c.scale_l, "Scale L (rational)");
        s->add_option("--D", c.scale_d, "Scale D (rational)");
        s->add_option("--R", c.scale_r, "Scale R (rational)");
        add_common(s);
        arm(s, "classify", run_classify);
    }
    {
        CLI::App* s = app.add_subcommand("coverage", "Full-coverage scan of [1, x]");
        s->add_option("--x", c.x, "Upper bound")->required();
        s->add_option("--L", c.scale_l, "Scale L (rational)")->required();
        s->add_option("--D", c.scale_d, "Scale D (rational)")->required();
        s->add_option("--R", c.scale_r, "Scale R (rational)")->required();
        s->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
        add_common(s);
        arm(s, "coverage", run_coverage);
    }
    {
        CLI::App* s = app.add_subcommand("census", "Exceptional-set census over [1, x]");
        s->add_option("--x", c.x, "Upper bound")->required();
        s->add_option("--L", c.scale_l, "Scale L (rational)")->required();
        s->add_option("--D", c.scale_d, "Scale D (rational)")->required();
        s->add_option("--R", c.scale_r, "Scale R (rational)")->required();
        s->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
        add_common(s);
        arm(s, "census", run_census);
    }
    {
        CLI::App* scan = app.add_subcommand("scan", "Prime gap and phi gap scanners");
        scan->require_subcommand(1);
        CLI::App* leg = scan->add_subcommand("legendre", "Primes in ((p-1)^2, p^2)");
        leg->add_option("--limit", c.limit, "Largest p to check")->required();
        add_common(leg);
        leg->callback([&] {
            command = "scan legendre";
            handler = [](Ctx& cc) { return run_scan_gap(cc, GapVariant::Legendre); };
        });
        CLI::App* opp = scan->add_subcommand("oppermann", "Primes in (p(p-1), p^2)");
        opp->add_option("--limit", c.limit, "Largest p to check")->required();
        add_common(opp);
        opp->callback([&] {
            command = "scan oppermann";
            handler = [](Ctx& cc) { return run_scan_gap(cc, GapVariant::Oppermann); };
        });
        CLI::App* pg = scan->add_subcommand("phigap", "First composite with phi(n) >= phi(p)");
        pg->add_option("--p", c.p, "Single prime to query");
        pg->add_option("--limit", c.limit, "Check all primes up to this bound");
        add_common(pg);
        arm(pg, "scan phigap", run_scan_phigap);
    }
    {
        CLI::App* s = app.add_subcommand("dhl", "Count primes p with ceil(p/2^k) prime");
        s->add_option("--k", c.k, "Shift exponent")->required();
        s->add_option("--x", c.x, "Upper bound")->required();
        add_common(s);
        arm(s, "dhl", run_dhl);
    }
    {
        CLI::App* s = app.add_subcommand("construct-a", "The set A = {2^k p} and its pruning");
        s->add_option("--x", c.x, "Upper bound")->required();
        s->add_flag("--prune", c.prune, "Also prune to a monotone subset");
        s->add_flag("--elements", c.elements, "Include the elements in JSON output");
        add_common(s);
        arm(s, "construct-a", run_construct_a);
    }
    {
        CLI::App* oeis = app.add_subcommand("oeis", "Cross-checks against OEIS b-files");
        oeis->require_subcommand(1);
        CLI::App* chk = oeis->add_subcommand("check", "Compare computed terms to a b-file");
        chk->add_option("--file", c.file_path, "Local b-file path")->required();
        chk->add_option("--seq", c.seq_id, "Sequence id for reporting");
        chk->add_option("--quantity", c.quantity, "m|w")->capture_default_str();
        chk->add_option("--fn", c.fn_name, "phi|sigma|psi")->capture_default_str();
        chk->add_option("--limit", c.limit, "Check at most this many indices");
        add_common(chk);
        arm(chk, "oeis check", run_oeis_check);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        Output o = handler(c);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        write_output(c, o);
        if (!c.ledger_path.empty()) {
            RunRecord rec;
            rec.command = command;
            rec.params = c.params;
            rec.payload = o.payload;
            rec.wall_seconds = wall;
            rec.timestamp = utc_timestamp();
            Ledger(c.ledger_path).append(rec);
        }
        return o.status;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const contract_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kUsage;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
}

int dispatch(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("mono");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : full) argv.push_back(s.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mono::cli
