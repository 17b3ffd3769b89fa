#pragma once

// Sampling harness: generate, classify, tally, attach confidence intervals
// and theory targets.

#include "rgk/graphgen.hpp"
#include "rgk/invariants.hpp"
#include "rgk/theory.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rgk {

struct RunConfig {
    ModelSpec model;
    std::uint64_t samples = 1;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> primes;
    int max_exp = 3;
    // 0 means one worker per hardware thread.
    unsigned workers = 0;
    bool emit_raw = false;

    void validate() const;
    unsigned resolved_workers() const;
};

struct PrimeTally {
    std::uint64_t p = 0;
    std::uint64_t cyclic = 0;
    std::uint64_t trivial = 0;
    // Index N-1 counts Sylow subgroups isomorphic to Z/p^N (resp. (Z/p)^N).
    std::vector<std::uint64_t> is_pN;
    std::vector<std::uint64_t> is_elem_N;
    std::map<Partition, std::uint64_t> histogram;

    bool operator==(const PrimeTally&) const = default;
};

struct TallySheet {
    std::uint64_t m = 0;
    std::uint64_t connected = 0;
    std::uint64_t sinks_present = 0;
    std::uint64_t k1_nonzero = 0;
    std::uint64_t k0_cyclic = 0;
    std::uint64_t det_negative = 0;
    // det(I - A) < 0 and coker cyclic, with no connectivity requirement.
    std::uint64_t det_negative_and_cyclic = 0;
    std::uint64_t full_shift = 0;
    std::uint64_t stably_polygon = 0;
    std::uint64_t stably_cuntz = 0;
    std::uint64_t exact_polygon = 0;
    std::uint64_t exact_cuntz = 0;
    std::vector<PrimeTally> per_prime;

    static TallySheet empty(const std::vector<std::uint64_t>& primes, int max_exp);
    void add(const KInvariant& inv, const std::vector<SylowEntry>& sylow);
    void merge(const TallySheet& other);

    // Scalar counts by name, including "p<P>_cyclic", "p<P>_trivial",
    // "p<P>_is_pN<N>" and "p<P>_is_elem<N>".
    std::map<std::string, std::uint64_t> named_counts() const;

    bool operator==(const TallySheet&) const = default;
};

constexpr double kZ99 = 2.576;

struct Interval {
    double estimate = 0;
    double half_width = 0;
    double lo = 0;
    double hi = 0;
};

// Normal approximation to the binomial, clamped to [0, 1].
Interval ci(std::uint64_t count, std::uint64_t m, double z = kZ99);

using CiReport = std::map<std::string, Interval>;
CiReport ci_report(const TallySheet& t);

// Per-sample output row, streamed in index order when emit_raw is set.
struct RawRecord {
    std::uint64_t sample_index = 0;
    KInvariant inv;
    std::vector<SylowEntry> sylow;
    bool stably_polygon = false;
    bool stably_cuntz = false;
    bool exact_polygon = false;
    bool exact_cuntz = false;
    bool full_shift = false;
};

using RawSink = std::function<void(const RawRecord&)>;

struct RunResult {
    TallySheet tallies;
    CiReport cis;
    double wall_seconds = 0;
};

// Thrown when classifying a sample trips an internal check; carries the
// sample's coordinates so it can be regenerated.
class SampleFailure : public std::runtime_error {
public:
    SampleFailure(std::uint64_t seed, std::uint64_t index, const std::string& what);
    std::uint64_t seed;
    std::uint64_t index;
};

RawRecord classify_sample(const RunConfig& config, std::uint64_t index);

RunResult run(const RunConfig& config, const RawSink& raw = {});

struct TheoryTarget {
    std::string statistic; // reported name
    std::string count;     // key into named_counts()
    std::optional<double> value;
    TheoryStatus status = TheoryStatus::open;
};

// Theory targets the paper attaches to this model.
std::vector<TheoryTarget> theory_targets(const ModelSpec& model, const std::vector<std::uint64_t>& primes);

struct Comparison {
    std::string statistic;
    std::string count;
    Interval interval;
    std::optional<double> theory;
    TheoryStatus status = TheoryStatus::open;
    std::optional<double> z_score;
    // Theory value inside the 99% interval; unset without a theory value.
    std::optional<bool> pass;
};

std::vector<Comparison> compare(const TallySheet& t, const std::vector<TheoryTarget>& targets);

// Theory value for a Sylow p-subgroup isomorphic to the given partition
// under this model, if the paper supplies one.
std::optional<std::pair<double, TheoryStatus>> sylow_theory(const ModelSpec& model, std::uint64_t p,
                                                            const Partition& lambda);

} // namespace rgk
