#include "oracles.hpp"
#include "rgk/exactla.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace rgk;

namespace {

const std::vector<std::vector<long>> kExampleA = {{0, 3, 3, 1, 0, 1}, {3, 0, 0, 2, 3, 0}, {3, 0, 0, 2, 1, 2},
                                                  {1, 2, 2, 0, 1, 2}, {0, 3, 1, 1, 0, 3}, {1, 0, 2, 2, 3, 0}};

IntMatrix diag_matrix(const std::vector<BigInt>& d, std::size_t rows, std::size_t cols) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

std::vector<BigInt> bigs(std::initializer_list<long> v) {
    std::vector<BigInt> out;
    for (long x : v) out.push_back(x);
    return out;
}

} // namespace

TEST_CASE("snf of the 8-regular example") {
    auto m = IntMatrix::from_rows(kExampleA) - IntMatrix::identity(6);
    auto r = snf(m, true);
    CHECK(r.d == bigs({1, 1, 1, 1, 1, 7}));
    CHECK(*r.u * m * *r.v == diag_matrix(r.d, 6, 6));
}

TEST_CASE("snf small cases") {
    auto id = snf(IntMatrix::identity(4), true);
    CHECK(id.d == bigs({1, 1, 1, 1}));
    CHECK(*id.u == IntMatrix::identity(4));
    CHECK(*id.v == IntMatrix::identity(4));

    CHECK(snf(IntMatrix::from_rows({{2, 0}, {0, 3}}), false).d == bigs({1, 6}));
    CHECK(snf(IntMatrix::from_rows({{0, 0}, {0, 0}}), false).d == bigs({0, 0}));
    CHECK(snf(IntMatrix::from_rows({{0, 4}, {6, 0}}), false).d == bigs({2, 12}));
    CHECK(snf(IntMatrix::from_rows({{1, 1}, {1, 1}}), false).d == bigs({1, 0}));
    CHECK(snf(IntMatrix::from_rows({{-5}}), false).d == bigs({5}));
}

TEST_CASE("snf rectangular") {
    auto m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}});
    auto r = snf(m, true);
    CHECK(r.d == bigs({2, 6}));
    CHECK(*r.u * m * *r.v == diag_matrix(r.d, 2, 3));
}

TEST_CASE("diag(2,3) cokernel is cyclic of order 6 by coset enumeration") {
    auto c = oracle::coset_torsion_counts({{2, 0}, {0, 3}}, {1, 2, 3, 6});
    CHECK(c.points == 6);
    CHECK(c.killed_by == std::vector<std::uint64_t>{1, 2, 3, 6});
    CHECK(cokernel(IntMatrix::from_rows({{2, 0}, {0, 3}})) == from_diagonal({6}));
}

TEST_CASE("cokernel examples") {
    CHECK(cokernel(IntMatrix::from_rows({{3}})) == from_diagonal({3}));
    auto z = cokernel(IntMatrix(2, 2));
    CHECK(z.free_rank() == 2);
    CHECK(z.is_trivial_torsion());
    CHECK(cokernel(IntMatrix::from_rows({{1, -2}, {-2, 1}})) == from_diagonal({3}));
    auto c = oracle::coset_torsion_counts({{1, -2}, {-2, 1}}, {1, 3});
    CHECK(c.points == 3);
    CHECK(c.killed_by == std::vector<std::uint64_t>{1, 3});
}

TEST_CASE("kernel rank") {
    CHECK(kernel_rank(IntMatrix::identity(5)) == 0);
    CHECK(kernel_rank(IntMatrix(3, 3)) == 3);
    CHECK(kernel_rank(IntMatrix::from_rows({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("signed determinant") {
    CHECK(det_signed(IntMatrix::from_rows({{-1}})) == -1);
    CHECK(det_signed(IntMatrix::identity(1) - IntMatrix::from_rows({{2}})) == -1);
    CHECK(det_signed(IntMatrix::from_rows({{-2, -1}, {-1, -2}})) == 3);
    CHECK(oracle::cofactor_det({{-2, -1}, {-1, -2}}) == 3);
    CHECK(det_signed(IntMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
    CHECK(det_signed(IntMatrix(3, 3)) == 0);
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 6;
        std::vector<std::vector<long>> rows(n, std::vector<long>(n));
        for (auto& row : rows)
            for (auto& v : row) v = entry(rng);
        CHECK(det_signed(IntMatrix::from_rows(rows)) == oracle::cofactor_det(rows));
    }
}

TEST_CASE("snf sign identity and transforms on random matrices") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + t % 8;
        std::vector<std::vector<long>> rows(n, std::vector<long>(n));
        for (auto& row : rows)
            for (auto& v : row) v = entry(rng);
        auto m = IntMatrix::from_rows(rows);
        auto r = snf(m, true);
        REQUIRE(*r.u * m * *r.v == diag_matrix(r.d, n, n));
        BigInt prod = 1;
        for (const auto& x : r.d) prod *= x;
        CHECK(det_signed(m) == prod * r.u_det_sign * r.v_det_sign);
        CHECK(det_signed(*r.u) == r.u_det_sign);
        CHECK(det_signed(*r.v) == r.v_det_sign);
    }
}

TEST_CASE("tracked vectors match U times the vector") {
    auto m = IntMatrix::from_rows({{4, 6, 2}, {1, -3, 5}, {0, 2, 8}});
    SnfOptions opt;
    opt.keep_u = true;
    opt.track = {{1, 1, 1}, {2, -1, 7}};
    auto r = snf(m, opt);
    for (const auto& vec : opt.track) {
        std::vector<BigInt> expect(3, 0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) expect[i] += (*r.u)(i, j) * vec[j];
        CHECK((r.tracked[&vec - opt.track.data()] == expect));
    }
}

TEST_CASE("large matrix stays exact") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> entry(-1, 1);
    const std::size_t n = 100;
    std::vector<std::vector<long>> rows(n, std::vector<long>(n));
    for (auto& row : rows)
        for (auto& v : row) v = entry(rng);
    auto m = IntMatrix::from_rows(rows);
    auto r = snf(m, false);
    BigInt prod = 1;
    for (const auto& x : r.d) prod *= x;
    CHECK(abs(det_signed(m)) == prod);
}

TEST_CASE("matrix text format") {
    std::istringstream in("2 3\n1 -2 3\n 4 5 -6 \n");
    auto m = read_matrix(in);
    CHECK(m == IntMatrix::from_rows({{1, -2, 3}, {4, 5, -6}}));
    std::ostringstream out;
    write_matrix(out, m);
    std::istringstream back(out.str());
    CHECK(read_matrix(back) == m);

    std::istringstream bad("2 2\n1 2\n3 x\n");
    try {
        read_matrix(bad);
        FAIL("expected a parse error");
    } catch (const MatrixParseError& e) {
        CHECK(e.line == 3);
    }
    std::istringstream short_row("2 2\n1 2\n3\n");
    CHECK_THROWS_AS(read_matrix(short_row), MatrixParseError);
    std::istringstream missing("3 3\n1 2 3\n");
    CHECK_THROWS_AS(read_matrix(missing), MatrixParseError);
}
