#pragma once

// Random directed multigraph models and structural predicates.

#include "rgk/exactla.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rgk {

// a(i, j) = number of edges i -> j.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

    static AdjacencyMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows);
    static AdjacencyMatrix identity(std::size_t n);

    std::size_t n() const { return n_; }
    std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    // M = A^t - I, the matrix whose cokernel is K0.
    IntMatrix transpose_minus_identity() const;
    // I - A, for the Bowen-Franks determinant.
    IntMatrix identity_minus() const;

    bool operator==(const AdjacencyMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> a_;
};

// Nonnegative rational a/b kept exact so that q = 1/3 never passes through floating point.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    // "a/b" or a decimal such as "0.25".
    static Rational parse(const std::string& text);
    std::string to_string() const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

enum class ModelKind { bernoulli, erdos_loops, regular_matchings, shifted_bernoulli, uniform_counts, cuntz_polygon };

std::string to_string(ModelKind kind);
// Accepts the CLI names: bernoulli, erdos, regular, shifted, uniform, polygon.
ModelKind parse_model_kind(const std::string& name);

struct ModelSpec {
    ModelKind kind = ModelKind::bernoulli;
    std::size_t n = 0;
    Rational q;
    std::uint32_t r = 0;
    std::uint64_t m1 = 0;
    std::uint64_t m2 = 0;
    std::vector<std::uint32_t> mbar;

    // Throws InvalidInput on out-of-range or missing parameters.
    void validate() const;
    std::string label() const;
};

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;
};

// Per-sample generator: std::mt19937_64 seeded with
// splitmix64(splitmix64(master_seed) ^ sample_index).
class SampleRng {
public:
    explicit SampleRng(SeedSpec seed);
    // Uniform on [0, bound), by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(const Rational& q) { return below(q.den) < q.num; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

AdjacencyMatrix gen_bernoulli(std::size_t n, const Rational& q, SeedSpec seed);
AdjacencyMatrix gen_erdos_loops(std::size_t n, const Rational& q, SeedSpec seed);
AdjacencyMatrix gen_regular_matchings(std::size_t n, std::uint32_t r, SeedSpec seed);
AdjacencyMatrix gen_shifted_bernoulli(std::size_t n, const Rational& q, SeedSpec seed);
AdjacencyMatrix gen_uniform_counts(std::size_t n, std::uint64_t m1, std::uint64_t m2, SeedSpec seed);
AdjacencyMatrix cuntz_polygon_adjacency(const std::vector<std::uint32_t>& mbar);

AdjacencyMatrix generate(const ModelSpec& model, SeedSpec seed);

bool is_strongly_connected(const AdjacencyMatrix& a);
bool is_permutation_matrix(const AdjacencyMatrix& a);
bool has_sink(const AdjacencyMatrix& a);

} // namespace rgk
