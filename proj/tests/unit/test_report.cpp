#include "rgk/errors.hpp"
#include "rgk/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace rgk;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.model.kind = ModelKind::erdos_loops;
    c.model.n = 10;
    c.model.q = {1, 3};
    c.samples = 200;
    c.master_seed = 4;
    c.primes = {2, 3};
    c.workers = 2;
    return c;
}

} // namespace

TEST_CASE("git blob hash") {
    CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    CHECK(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("config round trip") {
    auto c = small_config();
    auto back = config_from_json(config_to_json(c));
    CHECK(back.model.kind == c.model.kind);
    CHECK(back.model.q == c.model.q);
    CHECK(back.samples == c.samples);
    CHECK(back.master_seed == c.master_seed);
    CHECK(back.primes == c.primes);
    CHECK(back.max_exp == c.max_exp);

    RunConfig p;
    p.model.kind = ModelKind::cuntz_polygon;
    p.model.mbar = {2, 3};
    CHECK(config_from_json(config_to_json(p)).model.mbar == p.model.mbar);
}

TEST_CASE("summary shape and rerun stability") {
    auto c = small_config();
    auto s1 = make_summary(c, run(c));
    auto s2 = make_summary(c, run(c));
    for (const char* key : {"schema_version", "manifest", "tallies", "cis", "theory_comparison"}) CHECK(s1.contains(key));
    CHECK(s1["schema_version"] == kSummarySchema);
    CHECK(s1["tallies"] == s2["tallies"]);
    CHECK(s1["manifest"]["outputs"]["summary_body_sha1"] == s2["manifest"]["outputs"]["summary_body_sha1"]);
    CHECK(tallies_from_json(s1["tallies"]) == run(c).tallies);
    auto rerun = config_from_json(s1["manifest"]["config"]);
    CHECK(make_summary(rerun, run(rerun))["tallies"] == s1["tallies"]);
}

TEST_CASE("raw csv") {
    auto c = small_config();
    std::ostringstream out;
    write_raw_header(out, c.primes);
    write_raw_row(out, classify_sample(c, 0));
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header.rfind("sample_index,connected,sinks,k1_rank,k0_invariant_factors,unit_class,det_sign", 0) == 0);
    CHECK(header.find("sylow_2") != std::string::npos);
    CHECK(header.find("sylow_3") != std::string::npos);
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
    CHECK(row.rfind("0,", 0) == 0);
}

TEST_CASE("plot rows") {
    auto c = small_config();
    auto s = make_summary(c, run(c));
    auto rows = sylow_plot_rows(s, 2);
    REQUIRE_FALSE(rows.empty());
    CHECK(rows[0].group_label == "0");
    double sum = 0;
    for (const auto& r : rows) {
        sum += r.empirical_freq;
        CHECK(r.ci_lo <= r.empirical_freq);
        CHECK(r.empirical_freq <= r.ci_hi);
        CHECK(r.theory_value.has_value());
    }
    CHECK(sum <= 1 + 1e-12);
    CHECK_THROWS_AS(sylow_plot_rows(s, 5), InvalidInput);

    std::ostringstream out;
    write_plot_csv(out, {});
    CHECK(out.str() == "group_label,empirical_freq,ci_lo,ci_hi,theory_value,theory_status\n");
}

TEST_CASE("inspect text") {
    auto inv = compute_invariant(AdjacencyMatrix::from_rows({{3}}));
    auto text = invariant_text(inv);
    CHECK(text.find("K0=Z/2") != std::string::npos);
    CHECK(text.find("full shift: yes") != std::string::npos);
    auto id = invariant_text(compute_invariant(AdjacencyMatrix::identity(3)));
    CHECK(id.find("K1 rank 3, no classification") != std::string::npos);
    auto j = invariant_to_json(inv);
    CHECK(j["k1_rank"] == 0);
}
