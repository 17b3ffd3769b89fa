// rgk: command-line front end.
//   rgk simulate --model bernoulli --n 50 --q 1/2 --samples 10000 --seed 7 --out run.json
//   rgk theory p_cuntz_iid
//   rgk inspect --matrix graph.txt
//   rgk plotdata --in run.json --stat sylow --p 2

#include "rgk/errors.hpp"
#include "rgk/exactla.hpp"
#include "rgk/invariants.hpp"
#include "rgk/montecarlo.hpp"
#include "rgk/primes.hpp"
#include "rgk/report.hpp"
#include "rgk/theory.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(tok, &used);
            if (used != tok.size() || tok[0] == '-') throw std::invalid_argument(tok);
            out.push_back(static_cast<T>(v));
        } catch (const std::exception&) {
            throw UsageError(std::string("invalid ") + what + " entry '" + tok + "'");
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << content;
}

struct SimulateArgs {
    std::string model;
    std::size_t n = 0;
    std::string q;
    std::uint32_t r = 0;
    std::uint64_t m1 = 0, m2 = 0;
    std::string mbar;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string primes = "2,3,5,7";
    int max_exp = 3;
    std::string out;
    std::string raw;
    std::string workers = "auto";
};

rgk::RunConfig build_config(const SimulateArgs& a, const CLI::App& cmd) {
    using rgk::ModelKind;
    rgk::RunConfig c;
    try {
        c.model.kind = rgk::parse_model_kind(a.model);
    } catch (const rgk::InvalidInput& e) {
        throw UsageError(e.what());
    }
    const bool has_n = cmd.count("--n") > 0, has_q = cmd.count("--q") > 0, has_r = cmd.count("--r") > 0;
    const bool has_m = cmd.count("--m1") > 0 || cmd.count("--m2") > 0, has_mbar = cmd.count("--mbar") > 0;
    auto forbid = [&](bool present, const char* flag) {
        if (present) throw UsageError(std::string(flag) + " does not apply to --model " + a.model);
    };
    auto require = [&](bool present, const char* flag) {
        if (!present) throw UsageError("--model " + a.model + " requires " + flag);
    };
    switch (c.model.kind) {
    case ModelKind::bernoulli:
    case ModelKind::erdos_loops:
    case ModelKind::shifted_bernoulli:
        require(has_n, "--n");
        require(has_q, "--q");
        forbid(has_r, "--r");
        forbid(has_m, "--m1/--m2");
        forbid(has_mbar, "--mbar");
        break;
    case ModelKind::regular_matchings:
        require(has_n, "--n");
        require(has_r, "--r");
        forbid(has_q, "--q");
        forbid(has_m, "--m1/--m2");
        forbid(has_mbar, "--mbar");
        break;
    case ModelKind::uniform_counts:
        require(has_n, "--n");
        require(cmd.count("--m1") > 0 && cmd.count("--m2") > 0, "--m1 and --m2");
        forbid(has_q, "--q");
        forbid(has_r, "--r");
        forbid(has_mbar, "--mbar");
        break;
    case ModelKind::cuntz_polygon:
        require(has_mbar, "--mbar");
        forbid(has_q, "--q");
        forbid(has_r, "--r");
        forbid(has_m, "--m1/--m2");
        break;
    }
    c.model.n = a.n;
    if (has_q) {
        try {
            c.model.q = rgk::Rational::parse(a.q);
        } catch (const rgk::InvalidInput& e) {
            throw UsageError(e.what());
        }
    }
    c.model.r = a.r;
    c.model.m1 = a.m1;
    c.model.m2 = a.m2;
    if (has_mbar) c.model.mbar = parse_list<std::uint32_t>(a.mbar, "--mbar");
    c.samples = a.samples;
    c.master_seed = a.seed;
    c.primes = parse_list<std::uint64_t>(a.primes, "--primes");
    c.max_exp = a.max_exp;
    if (a.workers == "auto") {
        c.workers = 0;
    } else {
        auto w = parse_list<unsigned>(a.workers, "--workers");
        if (w.size() != 1 || w[0] == 0) throw UsageError("--workers must be a positive integer or 'auto'");
        c.workers = w[0];
    }
    c.emit_raw = !a.raw.empty();
    try {
        c.validate();
    } catch (const rgk::InvalidInput& e) {
        throw UsageError(e.what());
    }
    return c;
}

int cmd_simulate(const SimulateArgs& a, const CLI::App& cmd) {
    const rgk::RunConfig config = build_config(a, cmd);
    rgk::RunResult result;
    rgk::Json hashes = rgk::Json::object();
    if (config.emit_raw) {
        std::ofstream raw(a.raw, std::ios::binary);
        if (!raw) throw UsageError("cannot write " + a.raw);
        rgk::write_raw_header(raw, config.primes);
        result = rgk::run(config, [&raw](const rgk::RawRecord& rec) { rgk::write_raw_row(raw, rec); });
        raw.close();
        hashes["raw_csv_sha1"] = rgk::git_blob_sha1(read_file(a.raw));
    } else {
        result = rgk::run(config);
    }
    const rgk::Json summary = rgk::make_summary(config, result, hashes);
    write_file(a.out, summary.dump(2) + "\n");
    write_file(a.out + ".manifest.json", summary["manifest"].dump(2) + "\n");

    const auto& t = result.tallies;
    std::printf("%s: %llu samples in %.2f s\n", config.model.label().c_str(), static_cast<unsigned long long>(t.m),
                result.wall_seconds);
    for (const auto& c : summary["theory_comparison"]) {
        std::printf("  %-24s %.5f [%.5f, %.5f]", c["statistic"].get<std::string>().c_str(), c["estimate"].get<double>(),
                    c["ci"][0].get<double>(), c["ci"][1].get<double>());
        if (!c["theory"].is_null())
            std::printf("  theory %.5f (%s)%s", c["theory"].get<double>(), c["status"].get<std::string>().c_str(),
                        c["pass"].get<bool>() ? "" : "  outside CI");
        else
            std::printf("  (%s)", c["status"].get<std::string>().c_str());
        std::printf("\n");
    }
    return 0;
}

struct TheoryArgs {
    std::vector<std::string> names;
    bool list = false;
    bool json = false;
    std::uint32_t r = 0;
    std::uint64_t p = 0;
};

int cmd_theory(const TheoryArgs& a, const CLI::App& cmd) {
    const auto& table = rgk::theory_constants();
    rgk::Json out = rgk::Json::object();
    auto emit = [&](const std::string& name, double value, rgk::TheoryStatus status) {
        out[name] = rgk::Json{{"value", value}, {"status", rgk::to_string(status)}};
    };
    auto need = [&](const char* flag, const std::string& name) {
        if (cmd.count(flag) == 0) throw UsageError(name + " requires " + flag);
    };
    std::vector<std::string> names = a.names;
    if (a.list || names.empty())
        for (const auto& [k, v] : table) names.push_back(k);
    try {
        for (const auto& name : names) {
            if (auto it = table.find(name); it != table.end()) {
                emit(name, it->second.value, it->second.status);
            } else if (name == "gamma_r") {
                need("--r", name);
                emit(name, rgk::gamma_r(a.r), rgk::TheoryStatus::conjecture);
            } else if (name == "pi_pr") {
                need("--r", name);
                need("--p", name);
                const bool special = a.p == 2 || (a.r > 1 && (a.r - 1) % a.p == 0);
                emit(name, rgk::pi_pr(a.p, a.r), special ? rgk::TheoryStatus::conjecture : rgk::TheoryStatus::theorem);
            } else if (name == "p_cyclic_symmetric") {
                need("--p", name);
                emit(name, rgk::p_cyclic_symmetric(a.p), rgk::TheoryStatus::theorem);
            } else if (name == "p_cyclic_iid") {
                need("--p", name);
                emit(name, rgk::p_cyclic_iid(a.p), rgk::TheoryStatus::theorem);
            } else {
                throw UsageError("unknown constant '" + name + "'");
            }
        }
    } catch (const rgk::InvalidInput& e) {
        throw UsageError(e.what());
    }
    if (a.json) {
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& [name, v] : out.items())
            std::printf("%-24s %.10f  %s\n", name.c_str(), v["value"].get<double>(),
                        v["status"].get<std::string>().c_str());
    }
    return 0;
}

int cmd_inspect(const std::string& path, bool json) {
    rgk::IntMatrix m;
    try {
        m = rgk::read_matrix_file(path);
    } catch (const rgk::MatrixParseError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const rgk::InvalidInput& e) {
        throw UsageError(e.what());
    }
    if (!m.is_square()) throw UsageError(path + ": adjacency matrix must be square");
    rgk::AdjacencyMatrix a(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (rgk::sign(m(i, j)) < 0 || !m(i, j).fits_uint_p())
                throw UsageError(path + ": adjacency entries must be small nonnegative integers");
            a(i, j) = static_cast<std::uint32_t>(m(i, j).get_ui());
        }
    const rgk::KInvariant inv = rgk::compute_invariant(a);
    if (json)
        std::cout << rgk::invariant_to_json(inv).dump(2) << '\n';
    else
        std::cout << rgk::invariant_text(inv);
    return 0;
}

int cmd_plotdata(const std::string& in, const std::string& stat, std::uint64_t p, const std::string& out) {
    if (stat != "sylow") throw UsageError("stat '" + stat + "' is not available (supported: sylow)");
    rgk::Json summary;
    try {
        summary = rgk::Json::parse(read_file(in));
    } catch (const rgk::Json::exception& e) {
        throw UsageError(in + ": " + e.what());
    }
    std::vector<rgk::PlotRow> rows;
    try {
        rows = rgk::sylow_plot_rows(summary, p);
    } catch (const rgk::InvalidInput& e) {
        throw UsageError(e.what());
    } catch (const rgk::Json::exception& e) {
        throw UsageError(in + ": not a summary file: " + e.what());
    }
    if (out.empty() || out == "-") {
        rgk::write_plot_csv(std::cout, rows);
    } else {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write " + out);
        rgk::write_plot_csv(f, rows);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random graph C*-algebra K-theory laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rgk::kToolVersion);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Sample a random graph model and tally invariants");
    simulate->add_option("--model", sim.model, "bernoulli|erdos|regular|shifted|uniform|polygon")->required();
    simulate->add_option("--n", sim.n, "Vertex count");
    simulate->add_option("--q", sim.q, "Edge probability, a/b or decimal");
    simulate->add_option("--r", sim.r, "Number of perfect matchings (regular)");
    simulate->add_option("--m1", sim.m1, "Forward edge count (uniform)");
    simulate->add_option("--m2", sim.m2, "Backward edge count (uniform)");
    simulate->add_option("--mbar", sim.mbar, "Comma-separated edge multiplicities (polygon)");
    simulate->add_option("--samples", sim.samples, "Number of samples")->required();
    simulate->add_option("--seed", sim.seed, "Master seed")->required();
    simulate->add_option("--primes", sim.primes, "Comma-separated primes to profile")->capture_default_str();
    simulate->add_option("--max-exp", sim.max_exp, "Largest N tallied for Z/p^N and (Z/p)^N")->capture_default_str();
    simulate->add_option("--out", sim.out, "Summary JSON path")->required();
    simulate->add_option("--raw", sim.raw, "Per-sample CSV path");
    simulate->add_option("--workers", sim.workers, "Worker threads or 'auto'")->capture_default_str();

    TheoryArgs th;
    auto* theory = app.add_subcommand("theory", "Print limiting probabilities");
    theory->add_option("names", th.names, "Constant names");
    theory->add_flag("--list", th.list, "List every named constant");
    theory->add_flag("--json", th.json, "JSON output");
    theory->add_option("--r", th.r, "r for gamma_r / pi_pr");
    theory->add_option("--p", th.p, "Prime for per-prime quantities");

    std::string matrix_path;
    bool inspect_json = false;
    auto* inspect = app.add_subcommand("inspect", "Classify a single adjacency matrix");
    inspect->add_option("--matrix", matrix_path, "Matrix file ('rows cols' header, one row per line)")->required();
    inspect->add_flag("--json", inspect_json, "JSON output");

    std::string plot_in, plot_stat = "sylow", plot_out;
    std::uint64_t plot_p = 0;
    auto* plotdata = app.add_subcommand("plotdata", "Export plot-ready CSV from a summary");
    plotdata->add_option("--in", plot_in, "Summary JSON")->required();
    plotdata->add_option("--stat", plot_stat, "Statistic (sylow)")->capture_default_str();
    plotdata->add_option("--p", plot_p, "Prime")->required();
    plotdata->add_option("--out", plot_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, *simulate);
        if (*theory) return cmd_theory(th, *theory);
        if (*inspect) return cmd_inspect(matrix_path, inspect_json);
        if (*plotdata) return cmd_plotdata(plot_in, plot_stat, plot_p, plot_out);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        std::fprintf(stderr, "%s", app.help().c_str());
        return kExitUsage;
    } catch (const rgk::SampleFailure& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitUsage;
}
