#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the BigInt alias.

#include "rgk/bigint.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

// All invariant-factor chains d_1 | ... | d_k (d_i >= 2) with product <= max_order.
std::vector<std::vector<std::uint64_t>> groups_up_to(std::uint64_t max_order);

// Explicit model of Z/d_1 + ... + Z/d_k with elements numbered in mixed radix.
class SmallGroup {
public:
    explicit SmallGroup(std::vector<std::uint64_t> factors);
    std::size_t order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }
    const std::vector<std::uint64_t>& factors() const { return factors_; }
    std::size_t add(std::size_t a, std::size_t b) const { return add_[a * order_ + b]; }
    std::size_t element_order(std::size_t a) const { return elem_order_[a]; }
    std::vector<std::uint64_t> coords(std::size_t a) const;
    std::size_t index(const std::vector<std::uint64_t>& c) const;

private:
    std::vector<std::uint64_t> factors_;
    std::size_t order_ = 1;
    std::vector<std::size_t> add_;
    std::vector<std::size_t> elem_order_;
};

// Number of automorphisms, by enumerating generator images (y_1, ..., y_k)
// with ord(y_j) | d_j that generate G. Requires |G| <= 128.
std::uint64_t aut_count(const SmallGroup& g);

// Orbit id of every element under Aut(G): for each representative x the
// full image set {phi(x)} is enumerated over all automorphisms phi.
std::vector<int> aut_orbits(const SmallGroup& g);

// Symmetric bilinear perfect pairings G x G -> Q/Z, by enumeration of the
// Gram data a_ij in Z/gcd(d_i, d_j). Requires |G| <= 16.
std::uint64_t pairing_count(const SmallGroup& g);

// Laplace expansion.
rgk::BigInt cofactor_det(const std::vector<std::vector<long>>& m);

// For nonsingular integer M (n <= 4): |{x in Z^n / M Z^n : k x = 0}| for
// each k in ks, by enumerating integer points of the fundamental
// parallelepiped of the column lattice. Also returns the number of points found.
struct TorsionCounts {
    std::uint64_t points = 0;
    std::vector<std::uint64_t> killed_by;
};
TorsionCounts coset_torsion_counts(const std::vector<std::vector<long>>& m, const std::vector<std::uint64_t>& ks);

} // namespace oracle
