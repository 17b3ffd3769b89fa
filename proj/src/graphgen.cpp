#include "rgk/graphgen.hpp"

#include "rgk/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace rgk {

AdjacencyMatrix AdjacencyMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
    AdjacencyMatrix a(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw InvalidInput("adjacency matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) a(i, j) = rows[i][j];
    }
    return a;
}

AdjacencyMatrix AdjacencyMatrix::identity(std::size_t n) {
    AdjacencyMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1;
    return a;
}

IntMatrix AdjacencyMatrix::transpose_minus_identity() const {
    IntMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            long v = static_cast<long>((*this)(j, i)) - (i == j ? 1 : 0);
            if (v != 0) m(i, j) = v;
        }
    return m;
}

IntMatrix AdjacencyMatrix::identity_minus() const {
    IntMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            long v = (i == j ? 1 : 0) - static_cast<long>((*this)(i, j));
            if (v != 0) m(i, j) = v;
        }
    return m;
}

namespace {

std::uint64_t parse_u64(std::string_view s, const std::string& whole) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidInput("not a rational: '" + whole + "'");
    return v;
}

} // namespace

Rational Rational::parse(const std::string& text) {
    Rational q;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        q.num = parse_u64(std::string_view(text).substr(0, slash), text);
        q.den = parse_u64(std::string_view(text).substr(slash + 1), text);
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac = text.size() - dot - 1;
        if (frac > 18 || digits.empty()) throw InvalidInput("not a rational: '" + text + "'");
        q.num = parse_u64(digits, text);
        q.den = 1;
        for (std::size_t i = 0; i < frac; ++i) q.den *= 10;
    } else {
        q.num = parse_u64(text, text);
    }
    if (q.den == 0) throw InvalidInput("rational with zero denominator: '" + text + "'");
    const std::uint64_t g = std::gcd(q.num, q.den);
    if (g > 1) {
        q.num /= g;
        q.den /= g;
    }
    return q;
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::bernoulli: return "bernoulli";
    case ModelKind::erdos_loops: return "erdos";
    case ModelKind::regular_matchings: return "regular";
    case ModelKind::shifted_bernoulli: return "shifted";
    case ModelKind::uniform_counts: return "uniform";
    case ModelKind::cuntz_polygon: return "polygon";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& name) {
    for (auto k : {ModelKind::bernoulli, ModelKind::erdos_loops, ModelKind::regular_matchings,
                   ModelKind::shifted_bernoulli, ModelKind::uniform_counts, ModelKind::cuntz_polygon})
        if (to_string(k) == name) return k;
    throw InvalidInput("unknown model: '" + name + "'");
}

namespace {

void check_q(const Rational& q) {
    if (q.den == 0 || q.num > q.den) throw InvalidInput("probability q must lie in [0, 1], got " + q.to_string());
}

void check_n(std::size_t n) {
    if (n < 1) throw InvalidInput("vertex count n must be positive");
}

} // namespace

void ModelSpec::validate() const {
    switch (kind) {
    case ModelKind::bernoulli:
    case ModelKind::erdos_loops:
    case ModelKind::shifted_bernoulli:
        check_n(n);
        check_q(q);
        break;
    case ModelKind::regular_matchings:
        check_n(n);
        if (n % 2 != 0) throw InvalidInput("regular model needs an even vertex count, got " + std::to_string(n));
        if (r < 1) throw InvalidInput("regular model needs r >= 1");
        break;
    case ModelKind::uniform_counts: {
        check_n(n);
        const std::uint64_t half = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        if (m1 > half || m2 > half)
            throw InvalidInput("uniform model needs 0 <= m1, m2 <= n(n-1)/2 = " + std::to_string(half));
        break;
    }
    case ModelKind::cuntz_polygon:
        if (mbar.empty()) throw InvalidInput("polygon model needs a nonempty mbar");
        for (auto m : mbar)
            if (m < 1) throw InvalidInput("polygon model needs every m_i >= 1");
        if (n != 0 && n != mbar.size()) throw InvalidInput("polygon model: n must equal the length of mbar");
        break;
    }
}

std::string ModelSpec::label() const {
    std::string s = to_string(kind);
    switch (kind) {
    case ModelKind::bernoulli:
    case ModelKind::erdos_loops:
    case ModelKind::shifted_bernoulli: return s + "(n=" + std::to_string(n) + ",q=" + q.to_string() + ")";
    case ModelKind::regular_matchings: return s + "(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
    case ModelKind::uniform_counts:
        return s + "(n=" + std::to_string(n) + ",m1=" + std::to_string(m1) + ",m2=" + std::to_string(m2) + ")";
    case ModelKind::cuntz_polygon: {
        s += "(";
        for (std::size_t i = 0; i < mbar.size(); ++i) s += (i ? "," : "") + std::to_string(mbar[i]);
        return s + ")";
    }
    }
    return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SampleRng::SampleRng(SeedSpec seed) : engine_(splitmix64(splitmix64(seed.master_seed) ^ seed.sample_index)) {}

std::uint64_t SampleRng::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Largest multiple of bound representable; draws at or above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
}

AdjacencyMatrix gen_bernoulli(std::size_t n, const Rational& q, SeedSpec seed) {
    check_n(n);
    check_q(q);
    SampleRng rng(seed);
    AdjacencyMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.bernoulli(q) ? 1 : 0;
    return a;
}

AdjacencyMatrix gen_erdos_loops(std::size_t n, const Rational& q, SeedSpec seed) {
    check_n(n);
    check_q(q);
    SampleRng rng(seed);
    AdjacencyMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.bernoulli(q) ? 1 : 0;
    return a;
}

AdjacencyMatrix gen_regular_matchings(std::size_t n, std::uint32_t r, SeedSpec seed) {
    check_n(n);
    if (n % 2 != 0) throw InvalidInput("regular model needs an even vertex count");
    if (r < 1) throw InvalidInput("regular model needs r >= 1");
    SampleRng rng(seed);
    AdjacencyMatrix a(n);
    std::vector<std::size_t> perm(n);
    for (std::uint32_t k = 0; k < r; ++k) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        for (std::size_t i = 0; i < n; i += 2) {
            ++a(perm[i], perm[i + 1]);
            ++a(perm[i + 1], perm[i]);
        }
    }
    return a;
}

AdjacencyMatrix gen_shifted_bernoulli(std::size_t n, const Rational& q, SeedSpec seed) {
    AdjacencyMatrix a = gen_bernoulli(n, q, seed);
    for (std::size_t i = 0; i < n; ++i) ++a(i, i);
    return a;
}

namespace {

// Uniform k-subset of [0, total) by a partial Fisher-Yates pass.
std::vector<std::uint64_t> sample_subset(SampleRng& rng, std::uint64_t total, std::uint64_t k) {
    std::vector<std::uint64_t> pool(total);
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(total - i)]);
    pool.resize(k);
    return pool;
}

} // namespace

AdjacencyMatrix gen_uniform_counts(std::size_t n, std::uint64_t m1, std::uint64_t m2, SeedSpec seed) {
    check_n(n);
    const std::uint64_t half = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m1 > half || m2 > half) throw InvalidInput("uniform model: edge counts out of range");
    std::vector<std::pair<std::size_t, std::size_t>> upper;
    upper.reserve(half);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) upper.emplace_back(i, j);
    SampleRng rng(seed);
    AdjacencyMatrix a(n);
    for (auto idx : sample_subset(rng, half, m1)) a(upper[idx].first, upper[idx].second) = 1;
    for (auto idx : sample_subset(rng, half, m2)) a(upper[idx].second, upper[idx].first) = 1;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = rng.below(2) ? 1 : 0;
    return a;
}

AdjacencyMatrix cuntz_polygon_adjacency(const std::vector<std::uint32_t>& mbar) {
    if (mbar.empty()) throw InvalidInput("cuntz polygon needs a nonempty mbar");
    const std::size_t n = mbar.size();
    AdjacencyMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (mbar[i] < 1) throw InvalidInput("cuntz polygon needs every m_i >= 1");
        a(i, i) += 1;
        a((i + n - 1) % n, i) += mbar[i];
    }
    return a;
}

AdjacencyMatrix generate(const ModelSpec& model, SeedSpec seed) {
    model.validate();
    switch (model.kind) {
    case ModelKind::bernoulli: return gen_bernoulli(model.n, model.q, seed);
    case ModelKind::erdos_loops: return gen_erdos_loops(model.n, model.q, seed);
    case ModelKind::regular_matchings: return gen_regular_matchings(model.n, model.r, seed);
    case ModelKind::shifted_bernoulli: return gen_shifted_bernoulli(model.n, model.q, seed);
    case ModelKind::uniform_counts: return gen_uniform_counts(model.n, model.m1, model.m2, seed);
    case ModelKind::cuntz_polygon: return cuntz_polygon_adjacency(model.mbar);
    }
    throw InvalidInput("unknown model kind");
}

namespace {

std::size_t reach_count(const AdjacencyMatrix& a, bool reverse) {
    const std::size_t n = a.n();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < n; ++w) {
            if (seen[w] || (reverse ? a(w, v) : a(v, w)) == 0) continue;
            seen[w] = 1;
            ++count;
            stack.push_back(w);
        }
    }
    return count;
}

} // namespace

bool is_strongly_connected(const AdjacencyMatrix& a) {
    if (a.n() == 0) return false;
    return reach_count(a, false) == a.n() && reach_count(a, true) == a.n();
}

bool is_permutation_matrix(const AdjacencyMatrix& a) {
    const std::size_t n = a.n();
    std::vector<int> col_ones(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int row_ones = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) == 0) continue;
            if (a(i, j) != 1) return false;
            ++row_ones;
            ++col_ones[j];
        }
        if (row_ones != 1) return false;
    }
    for (int c : col_ones)
        if (c != 1) return false;
    return n > 0;
}

bool has_sink(const AdjacencyMatrix& a) {
    for (std::size_t i = 0; i < a.n(); ++i) {
        bool empty = true;
        for (std::size_t j = 0; j < a.n() && empty; ++j) empty = a(i, j) == 0;
        if (empty) return true;
    }
    return false;
}

} // namespace rgk
