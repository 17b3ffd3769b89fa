#include "rgk/report.hpp"

#include "rgk/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace rgk {

Json model_to_json(const ModelSpec& m) {
    Json j;
    j["kind"] = to_string(m.kind);
    switch (m.kind) {
    case ModelKind::bernoulli:
    case ModelKind::erdos_loops:
    case ModelKind::shifted_bernoulli:
        j["n"] = m.n;
        j["q"] = m.q.to_string();
        break;
    case ModelKind::regular_matchings:
        j["n"] = m.n;
        j["r"] = m.r;
        break;
    case ModelKind::uniform_counts:
        j["n"] = m.n;
        j["m1"] = m.m1;
        j["m2"] = m.m2;
        break;
    case ModelKind::cuntz_polygon:
        j["n"] = m.mbar.size();
        j["mbar"] = m.mbar;
        break;
    }
    return j;
}

ModelSpec model_from_json(const Json& j) {
    ModelSpec m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.n = j.value("n", std::size_t{0});
    if (j.contains("q")) m.q = Rational::parse(j["q"].get<std::string>());
    m.r = j.value("r", std::uint32_t{0});
    m.m1 = j.value("m1", std::uint64_t{0});
    m.m2 = j.value("m2", std::uint64_t{0});
    if (j.contains("mbar")) m.mbar = j["mbar"].get<std::vector<std::uint32_t>>();
    return m;
}

Json config_to_json(const RunConfig& c) {
    Json j;
    j["model"] = model_to_json(c.model);
    j["samples"] = c.samples;
    j["master_seed"] = c.master_seed;
    j["primes"] = c.primes;
    j["max_exp"] = c.max_exp;
    j["workers"] = c.resolved_workers();
    j["emit_raw"] = c.emit_raw;
    return j;
}

RunConfig config_from_json(const Json& j) {
    RunConfig c;
    c.model = model_from_json(j.at("model"));
    c.samples = j.at("samples").get<std::uint64_t>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    c.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    c.max_exp = j.at("max_exp").get<int>();
    c.workers = j.value("workers", 0u);
    c.emit_raw = j.value("emit_raw", false);
    return c;
}

namespace {

std::string join(const std::vector<int>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

std::string join(const std::vector<BigInt>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + v[i].get_str();
    return s;
}

int partition_weight(const Partition& p) {
    int w = 0;
    for (int e : p) w += e;
    return w;
}

} // namespace

Json tallies_to_json(const TallySheet& t) {
    Json j;
    j["m"] = t.m;
    Json counts = Json::object();
    for (const auto& name : {"connected", "sinks_present", "k1_nonzero", "k0_cyclic", "det_negative",
                             "det_negative_and_cyclic", "full_shift", "stably_polygon", "stably_cuntz",
                             "exact_polygon", "exact_cuntz"})
        counts[name] = t.named_counts().at(name);
    j["counts"] = counts;
    Json primes = Json::array();
    for (const auto& pt : t.per_prime) {
        Json jp;
        jp["p"] = pt.p;
        jp["cyclic"] = pt.cyclic;
        jp["trivial"] = pt.trivial;
        jp["is_pN"] = pt.is_pN;
        jp["is_elem_N"] = pt.is_elem_N;
        std::vector<std::pair<Partition, std::uint64_t>> hist(pt.histogram.begin(), pt.histogram.end());
        std::stable_sort(hist.begin(), hist.end(), [](const auto& a, const auto& b) {
            return partition_weight(a.first) < partition_weight(b.first);
        });
        Json jh = Json::array();
        for (const auto& [part, c] : hist)
            jh.push_back(Json{{"partition", part},
                              {"group", partition_group_label(part, BigInt(static_cast<unsigned long>(pt.p)))},
                              {"count", c}});
        jp["histogram"] = jh;
        primes.push_back(jp);
    }
    j["per_prime"] = primes;
    return j;
}

TallySheet tallies_from_json(const Json& j) {
    TallySheet t;
    t.m = j.at("m").get<std::uint64_t>();
    const Json& c = j.at("counts");
    t.connected = c.at("connected");
    t.sinks_present = c.at("sinks_present");
    t.k1_nonzero = c.at("k1_nonzero");
    t.k0_cyclic = c.at("k0_cyclic");
    t.det_negative = c.at("det_negative");
    t.det_negative_and_cyclic = c.at("det_negative_and_cyclic");
    t.full_shift = c.at("full_shift");
    t.stably_polygon = c.at("stably_polygon");
    t.stably_cuntz = c.at("stably_cuntz");
    t.exact_polygon = c.at("exact_polygon");
    t.exact_cuntz = c.at("exact_cuntz");
    for (const auto& jp : j.at("per_prime")) {
        PrimeTally pt;
        pt.p = jp.at("p");
        pt.cyclic = jp.at("cyclic");
        pt.trivial = jp.at("trivial");
        pt.is_pN = jp.at("is_pN").get<std::vector<std::uint64_t>>();
        pt.is_elem_N = jp.at("is_elem_N").get<std::vector<std::uint64_t>>();
        for (const auto& h : jp.at("histogram")) pt.histogram[h.at("partition").get<Partition>()] = h.at("count");
        t.per_prime.push_back(std::move(pt));
    }
    return t;
}

Json cis_to_json(const CiReport& r) {
    Json j = Json::object();
    for (const auto& [name, iv] : r)
        j[name] = Json{{"estimate", iv.estimate}, {"half_width", iv.half_width}, {"lo", iv.lo}, {"hi", iv.hi}};
    return j;
}

Json comparison_to_json(const std::vector<Comparison>& cs) {
    Json arr = Json::array();
    for (const auto& c : cs) {
        Json j;
        j["statistic"] = c.statistic;
        j["count"] = c.count;
        j["estimate"] = c.interval.estimate;
        j["ci"] = Json::array({c.interval.lo, c.interval.hi});
        j["theory"] = c.theory ? Json(*c.theory) : Json(nullptr);
        j["status"] = to_string(c.status);
        j["z_score"] = c.z_score ? Json(*c.z_score) : Json(nullptr);
        j["pass"] = c.pass ? Json(*c.pass) : Json(nullptr);
        arr.push_back(j);
    }
    return arr;
}

std::string git_blob_sha1(const std::string& content) {
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) &&
                    EVP_DigestUpdate(ctx, content.data(), content.size()) && EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    if (!ok) throw InternalError("SHA-1 digest failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

Json make_manifest(const RunConfig& config, double wall_seconds, const Json& output_hashes) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["config"] = config_to_json(config);
    j["wall_time_seconds"] = wall_seconds;
    j["outputs"] = output_hashes;
    return j;
}

Json make_summary(const RunConfig& config, const RunResult& result, const Json& extra_hashes) {
    Json body;
    body["tallies"] = tallies_to_json(result.tallies);
    body["cis"] = cis_to_json(result.cis);
    body["theory_comparison"] = comparison_to_json(compare(result.tallies, theory_targets(config.model, config.primes)));
    Json hashes = extra_hashes;
    hashes["summary_body_sha1"] = git_blob_sha1(body.dump());

    Json j;
    j["schema_version"] = kSummarySchema;
    j["manifest"] = make_manifest(config, result.wall_seconds, hashes);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

void write_raw_header(std::ostream& out, const std::vector<std::uint64_t>& primes) {
    out << "sample_index,connected,sinks,k1_rank,k0_invariant_factors,unit_class,det_sign,permutation,"
           "stably_polygon,stably_cuntz,exact_polygon,exact_cuntz,full_shift,reason";
    for (auto p : primes) out << ",sylow_" << p;
    out << '\n';
}

void write_raw_row(std::ostream& out, const RawRecord& r) {
    const KInvariant& inv = r.inv;
    out << r.sample_index << ',' << inv.strongly_connected << ',' << inv.sinks_present << ',' << inv.k1_rank << ','
        << join(inv.k0.invariant_factors(), ';') << ',' << (inv.unit_class ? join(inv.unit_class->coords, ';') : "")
        << ',' << inv.det_I_minus_A_sign << ',' << inv.is_permutation << ',' << r.stably_polygon << ','
        << r.stably_cuntz << ',' << r.exact_polygon << ',' << r.exact_cuntz << ',' << r.full_shift << ','
        << to_string(classification_reason(inv));
    for (const auto& e : r.sylow) out << ',' << join(e.partition, ';');
    out << '\n';
}

std::vector<PlotRow> sylow_plot_rows(const Json& summary, std::uint64_t p) {
    const RunConfig config = config_from_json(summary.at("manifest").at("config"));
    const TallySheet t = tallies_from_json(summary.at("tallies"));
    auto it = std::find_if(t.per_prime.begin(), t.per_prime.end(), [p](const PrimeTally& pt) { return pt.p == p; });
    if (it == t.per_prime.end()) throw InvalidInput("run has no Sylow data for p = " + std::to_string(p));

    std::vector<std::pair<Partition, std::uint64_t>> hist(it->histogram.begin(), it->histogram.end());
    std::stable_sort(hist.begin(), hist.end(), [](const auto& a, const auto& b) {
        return partition_weight(a.first) < partition_weight(b.first);
    });
    std::vector<PlotRow> rows;
    for (const auto& [part, count] : hist) {
        PlotRow row;
        row.group_label = partition_group_label(part, BigInt(static_cast<unsigned long>(p)));
        const Interval iv = ci(count, t.m);
        row.empirical_freq = iv.estimate;
        row.ci_lo = iv.lo;
        row.ci_hi = iv.hi;
        if (auto th = sylow_theory(config.model, p, part)) {
            row.theory_value = th->first;
            row.theory_status = th->second;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

void write_plot_csv(std::ostream& out, const std::vector<PlotRow>& rows) {
    out << "group_label,empirical_freq,ci_lo,ci_hi,theory_value,theory_status\n";
    for (const auto& r : rows)
        out << csv_field(r.group_label) << ',' << fmt(r.empirical_freq) << ',' << fmt(r.ci_lo) << ',' << fmt(r.ci_hi)
            << ',' << (r.theory_value ? fmt(*r.theory_value) : "") << ',' << to_string(r.theory_status) << '\n';
}

Json invariant_to_json(const KInvariant& inv) {
    Json j;
    j["n"] = inv.n;
    Json d = Json::array();
    for (const auto& x : inv.snf_diagonal) d.push_back(x.get_str());
    j["snf_diagonal"] = d;
    Json f = Json::array();
    for (const auto& x : inv.k0.invariant_factors()) f.push_back(x.get_str());
    j["k0_invariant_factors"] = f;
    j["k0"] = inv.k0.to_string();
    j["k1_rank"] = inv.k1_rank;
    if (inv.unit_class) {
        Json u = Json::array();
        for (const auto& x : inv.unit_class->coords) u.push_back(x.get_str());
        j["unit_class"] = u;
    } else {
        j["unit_class"] = nullptr;
    }
    j["det_I_minus_A"] = inv.det_I_minus_A.get_str();
    j["det_sign"] = inv.det_I_minus_A_sign;
    j["strongly_connected"] = inv.strongly_connected;
    j["has_sink"] = inv.has_sink;
    j["is_permutation"] = inv.is_permutation;
    j["reason"] = to_string(classification_reason(inv));
    j["stably_cuntz_polygon"] = stably_cuntz_polygon(inv);
    j["stably_cuntz_algebra"] = stably_cuntz_algebra(inv);
    j["exactly_cuntz_polygon"] = exactly_cuntz_polygon(inv);
    j["exactly_cuntz_algebra"] = exactly_cuntz_algebra(inv);
    j["flow_equiv_full_shift"] = flow_equiv_full_shift(inv);
    return j;
}

std::string invariant_text(const KInvariant& inv) {
    std::ostringstream os;
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    os << "SNF diagonal: " << join(inv.snf_diagonal, ' ') << '\n';
    os << "K0=" << inv.k0.to_string() << '\n';
    os << "K1 rank " << inv.k1_rank << '\n';
    os << "det(I-A)=" << inv.det_I_minus_A.get_str() << " (sign " << inv.det_I_minus_A_sign << ")\n";
    os << "strongly connected: " << yes(inv.strongly_connected) << ", sink: " << yes(inv.has_sink)
       << ", permutation: " << yes(inv.is_permutation) << '\n';
    const Reason reason = classification_reason(inv);
    if (reason != Reason::ok) {
        if (inv.k1_rank > 0) os << "K1 rank " << inv.k1_rank << ", ";
        os << "no classification";
        if (reason != Reason::infinite_k0) os << " (" << to_string(reason) << ")";
        os << '\n';
        return os.str();
    }
    os << "unit=" << join(inv.unit_class->coords, ';') << '\n';
    os << "stably Cuntz polygon: yes\n";
    os << "stably Cuntz algebra: " << yes(stably_cuntz_algebra(inv)) << '\n';
    os << "exactly Cuntz polygon: " << yes(exactly_cuntz_polygon(inv)) << '\n';
    if (exactly_cuntz_algebra(inv))
        os << "exactly Cuntz: O_" << BigInt(inv.k0.order() + 1).get_str() << '\n';
    else
        os << "exactly Cuntz: no\n";
    os << "full shift: " << yes(flow_equiv_full_shift(inv)) << '\n';
    return os.str();
}

} // namespace rgk
