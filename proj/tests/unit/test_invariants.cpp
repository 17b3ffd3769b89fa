#include "rgk/errors.hpp"
#include "rgk/invariants.hpp"

#include <doctest.h>

#include <random>

using namespace rgk;

namespace {

const std::vector<std::vector<std::uint32_t>> kExampleA = {{0, 3, 3, 1, 0, 1}, {3, 0, 0, 2, 3, 0},
                                                           {3, 0, 0, 2, 1, 2}, {1, 2, 2, 0, 1, 2},
                                                           {0, 3, 1, 1, 0, 3}, {1, 0, 2, 2, 3, 0}};

GroupElement elem(std::initializer_list<long> c) {
    GroupElement x;
    for (long v : c) x.coords.push_back(v);
    return x;
}

// A synthetic record in the classification regime with the given K0 and unit.
KInvariant record(const FinAbGroup& k0, const GroupElement& unit, int det_sign = -1) {
    KInvariant inv;
    inv.n = 3;
    inv.strongly_connected = true;
    inv.k0 = k0;
    inv.unit_class = unit;
    inv.det_I_minus_A_sign = det_sign;
    return inv;
}

} // namespace

TEST_CASE("the 8-regular example") {
    auto inv = compute_invariant(AdjacencyMatrix::from_rows(kExampleA));
    CHECK(inv.k0 == from_diagonal({7}));
    CHECK(inv.k1_rank == 0);
    REQUIRE(inv.unit_class);
    CHECK(same_orbit(inv.k0, *inv.unit_class, elem({5})));
    CHECK(inv.det_I_minus_A == -7);
    CHECK(inv.det_I_minus_A_sign == -1);
    CHECK(stably_cuntz_polygon(inv));
    CHECK(stably_cuntz_algebra(inv));
    CHECK(exactly_cuntz_polygon(inv));
    CHECK(exactly_cuntz_algebra(inv));
    CHECK(flow_equiv_full_shift(inv));
}

TEST_CASE("one-vertex graphs") {
    for (std::uint32_t m = 1; m <= 6; ++m) {
        auto inv = compute_invariant(cuntz_polygon_adjacency({m}));
        CHECK(inv.k0 == from_diagonal({static_cast<long>(m)}));
        CHECK(inv.k1_rank == 0);
        if (m > 1) CHECK(*inv.unit_class == elem({1}));
        CHECK(exactly_cuntz_algebra(inv));
    }
}

TEST_CASE("identity graph has infinite K0") {
    auto inv = compute_invariant(AdjacencyMatrix::identity(2));
    CHECK(inv.k1_rank == 2);
    CHECK(inv.k0.free_rank() == 2);
    CHECK(inv.det_I_minus_A_sign == 0);
    CHECK_FALSE(inv.unit_class);
    CHECK(classification_reason(inv) == Reason::not_strongly_connected);
    CHECK_FALSE(stably_cuntz_polygon(inv));
    CHECK_FALSE(exactly_cuntz_polygon(inv));
    CHECK_FALSE(exactly_cuntz_algebra(inv));
    CHECK_FALSE(flow_equiv_full_shift(inv));

    auto cycle = compute_invariant(AdjacencyMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(classification_reason(cycle) == Reason::permutation);
    CHECK_FALSE(stably_cuntz_polygon(cycle));
}

TEST_CASE("stable predicates") {
    auto path = compute_invariant(AdjacencyMatrix::from_rows({{0, 1}, {0, 0}}));
    CHECK_FALSE(stably_cuntz_polygon(path));
    CHECK(path.has_sink);

    auto sink = compute_invariant(AdjacencyMatrix::from_rows({{0}}));
    CHECK(sink.has_sink);
    CHECK(classification_reason(sink) == Reason::sink);
    CHECK_FALSE(stably_cuntz_polygon(sink));

    CHECK_FALSE(stably_cuntz_algebra(record(from_diagonal({2, 6}), elem({1, 1}))));
    CHECK(stably_cuntz_algebra(record(from_diagonal({}), GroupElement{})));
}

TEST_CASE("exact predicates on synthetic records") {
    CHECK_FALSE(exactly_cuntz_polygon(record(from_diagonal({4}), elem({2}))));
    CHECK(exactly_cuntz_polygon(record(from_diagonal({4}), elem({3}))));
    CHECK(exactly_cuntz_polygon(record(from_diagonal({}), GroupElement{})));
    CHECK_FALSE(exactly_cuntz_algebra(record(from_diagonal({6}), elem({2}))));
    CHECK(exactly_cuntz_algebra(record(from_diagonal({}), GroupElement{})));
    CHECK_FALSE(exactly_cuntz_algebra(record(from_diagonal({2, 2}), elem({1, 1}))));
    CHECK(exactly_cuntz_polygon(record(from_diagonal({2, 2}), elem({0, 1}))));
    CHECK_FALSE(exactly_cuntz_polygon(record(from_diagonal({2, 2}), elem({0, 0}))));
}

TEST_CASE("full shift examples") {
    auto three = compute_invariant(AdjacencyMatrix::from_rows({{3}}));
    CHECK(three.det_I_minus_A == -2);
    CHECK(flow_equiv_full_shift(three));

    auto two = compute_invariant(AdjacencyMatrix::from_rows({{3, 1}, {1, 3}}));
    CHECK(two.det_I_minus_A == 3);
    CHECK(two.k0 == from_diagonal({3}));
    CHECK_FALSE(flow_equiv_full_shift(two));

    auto shift2 = compute_invariant(AdjacencyMatrix::from_rows({{2}}));
    CHECK(shift2.det_I_minus_A == -1);
    CHECK(shift2.k0.is_trivial_torsion());
    CHECK(flow_equiv_full_shift(shift2));

    for (std::uint32_t k = 2; k <= 12; ++k) CHECK(flow_equiv_full_shift(compute_invariant(AdjacencyMatrix::from_rows({{k}}))));
}

TEST_CASE("sylow profile") {
    KInvariant inv = record(from_diagonal({2, 6}), elem({1, 1}));
    auto prof = sylow_profile(inv, {2, 3, 5}, 3);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].partition == Partition{1, 1});
    CHECK_FALSE(prof[0].cyclic);
    CHECK(prof[0].elementary_rank == 2);
    CHECK(prof[0].cyclic_exponent == 0);
    CHECK(prof[1].partition == Partition{1});
    CHECK(prof[1].cyclic);
    CHECK(prof[1].cyclic_exponent == 1);
    CHECK(prof[1].elementary_rank == 1);
    CHECK(prof[2].trivial);
    CHECK(prof[2].cyclic);
    CHECK_THROWS_AS(sylow_profile(inv, {4}, 3), InvalidInput);
}

TEST_CASE("K0 agrees for A^t - I and I - A on random graphs") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + t % 7;
        AdjacencyMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<std::uint32_t>(rng() % 4);
        CHECK(cokernel(a.transpose_minus_identity()) == cokernel(a.identity_minus()));
    }
}

TEST_CASE("invariant records are consistent on random graphs") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto a = gen_bernoulli(9, {1, 2}, {13, i});
        auto inv = compute_invariant(a);
        CHECK(inv.k1_rank == static_cast<std::size_t>(inv.k0.free_rank()));
        CHECK((inv.det_I_minus_A_sign == 0) == (inv.k1_rank > 0));
        CHECK(inv.unit_class.has_value() == (inv.k1_rank == 0));
        if (inv.k1_rank == 0) CHECK(abs(inv.det_I_minus_A) == inv.k0.order());
    }
}
