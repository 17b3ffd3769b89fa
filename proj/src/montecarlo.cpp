#include "rgk/montecarlo.hpp"

#include "rgk/errors.hpp"
#include "rgk/primes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

namespace rgk {

void RunConfig::validate() const {
    model.validate();
    if (samples < 1) throw InvalidInput("samples must be at least 1");
    if (max_exp < 1) throw InvalidInput("max_exp must be at least 1");
    for (auto p : primes)
        if (!is_prime(p)) throw InvalidInput("not a prime: " + std::to_string(p));
}

unsigned RunConfig::resolved_workers() const {
    if (workers > 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

TallySheet TallySheet::empty(const std::vector<std::uint64_t>& primes, int max_exp) {
    TallySheet t;
    for (auto p : primes) {
        PrimeTally pt;
        pt.p = p;
        pt.is_pN.assign(max_exp, 0);
        pt.is_elem_N.assign(max_exp, 0);
        t.per_prime.push_back(std::move(pt));
    }
    return t;
}

void TallySheet::add(const KInvariant& inv, const std::vector<SylowEntry>& sylow) {
    ++m;
    if (inv.strongly_connected) ++connected;
    if (inv.sinks_present) ++sinks_present;
    if (inv.k1_rank > 0) ++k1_nonzero;
    const bool cyclic = is_cyclic(inv.k0);
    if (cyclic) ++k0_cyclic;
    if (inv.det_I_minus_A_sign < 0) {
        ++det_negative;
        if (cyclic) ++det_negative_and_cyclic;
    }
    if (flow_equiv_full_shift(inv)) ++full_shift;
    if (stably_cuntz_polygon(inv)) ++stably_polygon;
    if (stably_cuntz_algebra(inv)) ++stably_cuntz;
    if (exactly_cuntz_polygon(inv)) ++exact_polygon;
    if (exactly_cuntz_algebra(inv)) ++exact_cuntz;
    for (std::size_t i = 0; i < sylow.size(); ++i) {
        PrimeTally& pt = per_prime[i];
        const SylowEntry& e = sylow[i];
        if (e.cyclic) ++pt.cyclic;
        if (e.trivial) ++pt.trivial;
        if (e.cyclic_exponent > 0) ++pt.is_pN[e.cyclic_exponent - 1];
        if (e.elementary_rank > 0) ++pt.is_elem_N[e.elementary_rank - 1];
        ++pt.histogram[e.partition];
    }
}

void TallySheet::merge(const TallySheet& o) {
    m += o.m;
    connected += o.connected;
    sinks_present += o.sinks_present;
    k1_nonzero += o.k1_nonzero;
    k0_cyclic += o.k0_cyclic;
    det_negative += o.det_negative;
    det_negative_and_cyclic += o.det_negative_and_cyclic;
    full_shift += o.full_shift;
    stably_polygon += o.stably_polygon;
    stably_cuntz += o.stably_cuntz;
    exact_polygon += o.exact_polygon;
    exact_cuntz += o.exact_cuntz;
    if (per_prime.size() != o.per_prime.size()) throw InternalError("merging tallies with different prime lists");
    for (std::size_t i = 0; i < per_prime.size(); ++i) {
        PrimeTally& a = per_prime[i];
        const PrimeTally& b = o.per_prime[i];
        a.cyclic += b.cyclic;
        a.trivial += b.trivial;
        for (std::size_t k = 0; k < a.is_pN.size(); ++k) {
            a.is_pN[k] += b.is_pN[k];
            a.is_elem_N[k] += b.is_elem_N[k];
        }
        for (const auto& [part, c] : b.histogram) a.histogram[part] += c;
    }
}

std::map<std::string, std::uint64_t> TallySheet::named_counts() const {
    std::map<std::string, std::uint64_t> out{
        {"connected", connected},
        {"sinks_present", sinks_present},
        {"k1_nonzero", k1_nonzero},
        {"k0_cyclic", k0_cyclic},
        {"det_negative", det_negative},
        {"det_negative_and_cyclic", det_negative_and_cyclic},
        {"full_shift", full_shift},
        {"stably_polygon", stably_polygon},
        {"stably_cuntz", stably_cuntz},
        {"exact_polygon", exact_polygon},
        {"exact_cuntz", exact_cuntz},
    };
    for (const auto& pt : per_prime) {
        const std::string pre = "p" + std::to_string(pt.p) + "_";
        out[pre + "cyclic"] = pt.cyclic;
        out[pre + "trivial"] = pt.trivial;
        for (std::size_t k = 0; k < pt.is_pN.size(); ++k) {
            out[pre + "is_pN" + std::to_string(k + 1)] = pt.is_pN[k];
            out[pre + "is_elem" + std::to_string(k + 1)] = pt.is_elem_N[k];
        }
    }
    return out;
}

Interval ci(std::uint64_t count, std::uint64_t m, double z) {
    if (m == 0) throw InvalidInput("ci: sample size must be positive");
    if (count > m) throw InvalidInput("ci: count exceeds sample size");
    Interval iv;
    iv.estimate = static_cast<double>(count) / static_cast<double>(m);
    iv.half_width = z * std::sqrt(iv.estimate * (1 - iv.estimate) / static_cast<double>(m));
    iv.lo = std::max(0.0, iv.estimate - iv.half_width);
    iv.hi = std::min(1.0, iv.estimate + iv.half_width);
    return iv;
}

CiReport ci_report(const TallySheet& t) {
    CiReport r;
    for (const auto& [name, c] : t.named_counts()) r[name] = ci(c, t.m);
    return r;
}

SampleFailure::SampleFailure(std::uint64_t s, std::uint64_t i, const std::string& what)
    : std::runtime_error("sample failed (seed " + std::to_string(s) + ", index " + std::to_string(i) + "): " + what),
      seed(s), index(i) {}

RawRecord classify_sample(const RunConfig& config, std::uint64_t index) {
    RawRecord rec;
    rec.sample_index = index;
    const AdjacencyMatrix a = generate(config.model, SeedSpec{config.master_seed, index});
    rec.inv = compute_invariant(a);
    rec.sylow = sylow_profile(rec.inv, config.primes, config.max_exp);
    rec.stably_polygon = stably_cuntz_polygon(rec.inv);
    rec.stably_cuntz = stably_cuntz_algebra(rec.inv);
    rec.exact_polygon = exactly_cuntz_polygon(rec.inv);
    rec.exact_cuntz = exactly_cuntz_algebra(rec.inv);
    rec.full_shift = flow_equiv_full_shift(rec.inv);
    return rec;
}

namespace {

struct WorkerState {
    TallySheet tally;
    std::vector<RawRecord> raw;
    std::optional<std::uint64_t> failed_index;
    std::string failure;
};

void work_range(const RunConfig& config, std::uint64_t begin, std::uint64_t end, bool keep_raw, WorkerState& st) {
    for (std::uint64_t i = begin; i < end; ++i) {
        try {
            RawRecord rec = classify_sample(config, i);
            st.tally.add(rec.inv, rec.sylow);
            if (keep_raw) st.raw.push_back(std::move(rec));
        } catch (const std::exception& e) {
            st.failed_index = i;
            st.failure = e.what();
            return;
        }
    }
}

} // namespace

RunResult run(const RunConfig& config, const RawSink& raw) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const unsigned workers = config.resolved_workers();
    const bool keep_raw = config.emit_raw && static_cast<bool>(raw);

    // With raw output, samples are processed in batches so rows can be
    // streamed in index order without buffering the whole run.
    const std::uint64_t batch = keep_raw ? std::uint64_t{256} * workers : config.samples;

    TallySheet total = TallySheet::empty(config.primes, config.max_exp);
    for (std::uint64_t lo = 0; lo < config.samples; lo += batch) {
        const std::uint64_t hi = std::min(config.samples, lo + batch);
        const std::uint64_t len = hi - lo;
        std::vector<WorkerState> states(workers);
        for (auto& st : states) st.tally = TallySheet::empty(config.primes, config.max_exp);
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = lo + len * w / workers;
            const std::uint64_t e = lo + len * (w + 1) / workers;
            if (b == e) continue;
            if (workers == 1)
                work_range(config, b, e, keep_raw, states[w]);
            else
                threads.emplace_back(work_range, std::cref(config), b, e, keep_raw, std::ref(states[w]));
        }
        for (auto& t : threads) t.join();
        for (auto& st : states)
            if (st.failed_index) throw SampleFailure(config.master_seed, *st.failed_index, st.failure);
        for (auto& st : states) {
            total.merge(st.tally);
            if (keep_raw)
                for (const auto& rec : st.raw) raw(rec);
        }
    }

    RunResult res;
    res.tallies = std::move(total);
    res.cis = ci_report(res.tallies);
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

namespace {

TheoryTarget target(std::string stat, std::string count, std::optional<double> v, TheoryStatus s) {
    return TheoryTarget{std::move(stat), std::move(count), v, s};
}

double constant(const std::string& name) { return theory_constants().at(name).value; }

} // namespace

std::vector<TheoryTarget> theory_targets(const ModelSpec& model, const std::vector<std::uint64_t>& primes) {
    using S = TheoryStatus;
    std::vector<TheoryTarget> out;
    auto per_prime = [&](auto value_and_status) {
        for (auto p : primes) {
            auto [v, s] = value_and_status(p);
            const std::string key = "p" + std::to_string(p) + "_cyclic";
            out.push_back(target(key, key, v, s));
        }
    };
    switch (model.kind) {
    case ModelKind::bernoulli:
    case ModelKind::shifted_bernoulli: {
        const bool shifted = model.kind == ModelKind::shifted_bernoulli;
        out.push_back(target("connected", "connected", 1.0, S::theorem));
        out.push_back(target("k1_nonzero", "k1_nonzero", 0.0, S::theorem));
        out.push_back(target("k0_cyclic", "k0_cyclic", constant("p_cuntz_iid"), S::theorem));
        per_prime([](std::uint64_t p) { return std::pair<std::optional<double>, S>{p_cyclic_iid(p), S::theorem}; });
        out.push_back(target("det_negative", "det_negative", 0.5, shifted ? S::theorem : S::conjecture));
        out.push_back(target("full_shift", "full_shift", constant("p_cuntz_iid") / 2, shifted ? S::theorem : S::conjecture));
        out.push_back(target("exact_polygon", "exact_polygon", constant("dexact"), S::conjecture));
        out.push_back(target("exact_cuntz", "exact_cuntz", constant("dcuntz"), S::conjecture));
        break;
    }
    case ModelKind::erdos_loops:
        out.push_back(target("connected", "connected", 1.0, S::theorem));
        out.push_back(target("k1_nonzero", "k1_nonzero", 0.0, S::theorem));
        out.push_back(target("k0_cyclic", "k0_cyclic", constant("p_cyclic_symmetric_all"), S::conjecture));
        per_prime([](std::uint64_t p) { return std::pair<std::optional<double>, S>{p_cyclic_symmetric(p), S::theorem}; });
        out.push_back(target("delta_hat", "det_negative", std::nullopt, S::open));
        out.push_back(target("sigma_hat", "det_negative_and_cyclic", std::nullopt, S::open));
        out.push_back(target("full_shift", "full_shift", std::nullopt, S::open));
        out.push_back(target("exact_polygon", "exact_polygon", constant("eexact"), S::conjecture));
        out.push_back(target("exact_cuntz", "exact_cuntz", constant("ecuntz"), S::conjecture));
        break;
    case ModelKind::regular_matchings: {
        const std::uint32_t r = model.r;
        if (r >= 3) {
            out.push_back(target("connected", "connected", 1.0, S::theorem));
            out.push_back(target("k1_nonzero", "k1_nonzero", 0.0, S::theorem));
            out.push_back(target("k0_cyclic", "k0_cyclic", gamma_r(r), S::conjecture));
            per_prime([r](std::uint64_t p) {
                const bool special = p == 2 || (r - 1) % p == 0;
                return std::pair<std::optional<double>, S>{pi_pr(p, r), special ? S::conjecture : S::theorem};
            });
        }
        out.push_back(target("epsilon_hat", "det_negative", std::nullopt, S::open));
        out.push_back(target("tau_hat", "det_negative_and_cyclic", std::nullopt, S::open));
        out.push_back(target("full_shift", "full_shift", std::nullopt, S::open));
        out.push_back(target("exact_polygon", "exact_polygon", std::nullopt, S::open));
        break;
    }
    case ModelKind::uniform_counts:
        out.push_back(target("stably_polygon", "stably_polygon", std::nullopt, S::open));
        out.push_back(target("k0_cyclic", "k0_cyclic", std::nullopt, S::open));
        break;
    case ModelKind::cuntz_polygon:
        out.push_back(target("exact_polygon", "exact_polygon", 1.0, S::theorem));
        break;
    }
    return out;
}

std::vector<Comparison> compare(const TallySheet& t, const std::vector<TheoryTarget>& targets) {
    const auto counts = t.named_counts();
    std::vector<Comparison> out;
    for (const auto& tg : targets) {
        auto it = counts.find(tg.count);
        if (it == counts.end()) continue;
        Comparison c;
        c.statistic = tg.statistic;
        c.count = tg.count;
        c.interval = ci(it->second, t.m);
        c.theory = tg.value;
        c.status = tg.status;
        if (tg.value) {
            const double th = *tg.value;
            const double m = static_cast<double>(t.m);
            double sd = std::sqrt(th * (1 - th) / m);
            if (sd == 0) sd = std::sqrt(c.interval.estimate * (1 - c.interval.estimate) / m);
            const double diff = c.interval.estimate - th;
            c.z_score = sd > 0 ? diff / sd : 0.0;
            c.pass = th >= c.interval.lo && th <= c.interval.hi;
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<std::pair<double, TheoryStatus>> sylow_theory(const ModelSpec& model, std::uint64_t p,
                                                            const Partition& lambda) {
    const BigInt bp(static_cast<unsigned long>(p));
    PrimaryDecomposition parts;
    if (!lambda.empty()) parts[bp] = lambda;
    const FinAbGroup g = from_primary(parts);
    switch (model.kind) {
    case ModelKind::bernoulli:
    case ModelKind::shifted_bernoulli: return std::pair{p_sylow_iid(g, {p}), TheoryStatus::theorem};
    case ModelKind::erdos_loops: return std::pair{p_sylow_symmetric(g, {p}), TheoryStatus::theorem};
    case ModelKind::regular_matchings:
        if (p != 2 && model.r >= 3 && (model.r - 1) % p != 0)
            return std::pair{p_sylow_symmetric(g, {p}), TheoryStatus::theorem};
        return std::nullopt;
    default: return std::nullopt;
    }
}

} // namespace rgk
