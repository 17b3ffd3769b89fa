#pragma once

// Finite abelian groups in invariant-factor form, plus the automorphism-orbit
// machinery needed to compare unit classes.

#include "rgk/bigint.hpp"

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rgk {

// Exponents lambda_1 >= lambda_2 >= ... >= 1 of a p-group sum Z/p^{lambda_i}.
using Partition = std::vector<int>;

// Z/d_1 + ... + Z/d_k + Z^free_rank with 2 <= d_1 | d_2 | ... | d_k.
class FinAbGroup {
public:
    FinAbGroup() = default;

    // Throws InvalidInput unless the factors already form a valid chain.
    explicit FinAbGroup(std::vector<BigInt> invariant_factors, int free_rank = 0);

    const std::vector<BigInt>& invariant_factors() const { return factors_; }
    int free_rank() const { return free_rank_; }
    std::size_t num_factors() const { return factors_.size(); }
    bool is_trivial_torsion() const { return factors_.empty(); }

    // Order of the torsion part.
    BigInt order() const;
    // Largest invariant factor (1 for the trivial group).
    BigInt exponent() const;

    // "Z/2 + Z/6 + Z^1"; "0" for the trivial group.
    std::string to_string() const;

    bool operator==(const FinAbGroup&) const = default;

private:
    std::vector<BigInt> factors_;
    int free_rank_ = 0;
};

using PrimaryDecomposition = std::map<BigInt, Partition>;

// Element of the torsion part, in invariant-factor coordinates.
struct GroupElement {
    std::vector<BigInt> coords;
    bool operator==(const GroupElement&) const = default;
};

// Height of an element of a p-group; the zero element has infinite height.
class Height {
public:
    static Height infinite() { return Height(true, 0); }
    static Height finite(int h) { return Height(false, h); }
    bool is_infinite() const { return infinite_; }
    int value() const { return value_; }
    bool operator==(const Height&) const = default;
    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    Height(bool inf, int v) : infinite_(inf), value_(v) {}
    bool infinite_;
    int value_;
};

// Per prime dividing |G|: heights of x_p, p x_p, p^2 x_p, ... up to and
// including the first infinite entry.
struct OrbitLabel {
    std::vector<std::pair<BigInt, std::vector<Height>>> per_prime;
    bool operator==(const OrbitLabel&) const = default;
    std::string to_string() const;
};

// Drops 1s, counts 0s into free_rank, normalises the rest into a
// divisibility chain. Negative entries are rejected.
FinAbGroup from_diagonal(std::span<const BigInt> diag);
FinAbGroup from_diagonal(std::initializer_list<long> diag);

// Partition of p-exponents of the Sylow p-subgroup (empty when trivial).
Partition sylow(const FinAbGroup& g, const BigInt& p);

// Requires factoring the group order.
PrimaryDecomposition primary_decomposition(const FinAbGroup& g);

// CRT merge back into invariant factors.
FinAbGroup from_primary(const PrimaryDecomposition& parts, int free_rank = 0);

// Torsion part has at most one invariant factor.
bool is_cyclic(const FinAbGroup& g);
bool is_p_cyclic(const FinAbGroup& g, const BigInt& p);

// |Aut(G)| via the Hillar-Rhea product over primary parts. Torsion only.
BigInt aut_order(const FinAbGroup& g);
BigInt aut_order_p_group(const Partition& lambda, const BigInt& p);

// N(G): symmetric perfect pairings divided by |G| |Aut(G)|, exactly.
BigRational pairing_count_normalized(const FinAbGroup& g);
BigRational pairing_count_normalized_p_group(const Partition& lambda, const BigInt& p);

// Conjugate partition (column lengths of the Young diagram).
Partition conjugate(const Partition& lambda);

void validate_element(const FinAbGroup& g, const GroupElement& x);
BigInt element_order(const FinAbGroup& g, const GroupElement& x);

// The element (1, ..., 1) in invariant-factor coordinates.
GroupElement all_ones(const FinAbGroup& g);

OrbitLabel orbit_invariant(const FinAbGroup& g, const GroupElement& x);

// Same Aut(G)-orbit. Elements of maximal order form a single orbit and in a
// cyclic group orbits are order classes; those cases avoid factoring |G|.
bool same_orbit(const FinAbGroup& g, const GroupElement& x, const GroupElement& y);

// x generates the cyclic group g. Throws Unsupported for non-cyclic g.
bool is_full_order_generator(const FinAbGroup& g, const GroupElement& x);

// Label such as "Z/2^2 + (Z/2)^2" for a p-group partition; "0" when empty.
std::string partition_group_label(const Partition& lambda, const BigInt& p);

} // namespace rgk
