#pragma once

// Per-graph classification records: K-theory, unit class, Bowen-Franks sign
// and the Cuntz / full-shift predicates.

#include "rgk/abelian.hpp"
#include "rgk/graphgen.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rgk {

struct KInvariant {
    std::size_t n = 0;
    bool strongly_connected = false;
    bool has_sink = false;
    bool is_permutation = false;
    FinAbGroup k0; // coker(A^t - I)
    std::size_t k1_rank = 0;
    // Class of (1,...,1) in k0's invariant-factor coordinates; set when k1_rank == 0.
    std::optional<GroupElement> unit_class;
    int det_I_minus_A_sign = 0;
    BigInt det_I_minus_A;
    // Diagonal of the Smith form of A^t - I.
    std::vector<BigInt> snf_diagonal;
    // True when the sample has sinks, where coker(A^t - I) need not be K0.
    bool sinks_present = false;
};

KInvariant compute_invariant(const AdjacencyMatrix& a);

// Why a graph falls outside the Cuntz-Krieger classification regime.
enum class Reason { ok, sink, not_strongly_connected, permutation, infinite_k0 };
std::string to_string(Reason r);
Reason classification_reason(const KInvariant& inv);

// Strongly connected, not a permutation, no sinks, K1 = 0.
bool stably_cuntz_polygon(const KInvariant& inv);
bool stably_cuntz_algebra(const KInvariant& inv);
bool exactly_cuntz_polygon(const KInvariant& inv);
bool exactly_cuntz_algebra(const KInvariant& inv);
// sgn det(I - A) < 0 with cyclic K0 and K1 = 0 in the classification regime.
bool flow_equiv_full_shift(const KInvariant& inv);

struct SylowEntry {
    std::uint64_t p = 0;
    Partition partition;
    bool trivial = false;
    bool cyclic = false;
    // N when the Sylow subgroup is Z/p^N with 1 <= N <= max_exp, else 0.
    int cyclic_exponent = 0;
    // N when it is (Z/p)^N with 1 <= N <= max_exp, else 0.
    int elementary_rank = 0;
};

std::vector<SylowEntry> sylow_profile(const KInvariant& inv, const std::vector<std::uint64_t>& primes, int max_exp);

} // namespace rgk
