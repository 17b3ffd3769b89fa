#include "rgk/invariants.hpp"

#include "rgk/errors.hpp"
#include "rgk/exactla.hpp"
#include "rgk/primes.hpp"

namespace rgk {

KInvariant compute_invariant(const AdjacencyMatrix& a) {
    KInvariant inv;
    inv.n = a.n();
    inv.strongly_connected = is_strongly_connected(a);
    inv.has_sink = has_sink(a);
    inv.sinks_present = inv.has_sink;
    inv.is_permutation = is_permutation_matrix(a);

    SnfOptions opt;
    opt.track.push_back(std::vector<BigInt>(a.n(), BigInt(1)));
    SnfResult s = snf(a.transpose_minus_identity(), opt);
    const std::vector<BigInt>& ones_image = s.tracked[0];

    std::vector<BigInt> factors;
    std::vector<BigInt> unit;
    BigInt product = 1;
    for (std::size_t i = 0; i < s.d.size(); ++i) {
        const BigInt& d = s.d[i];
        if (sign(d) == 0) {
            ++inv.k1_rank;
            continue;
        }
        product *= d;
        if (d == 1) continue;
        factors.push_back(d);
        unit.push_back(mod_nonneg(ones_image[i], d));
    }
    inv.snf_diagonal = s.d;
    inv.k0 = FinAbGroup(std::move(factors), static_cast<int>(inv.k1_rank));
    if (inv.k1_rank == 0) inv.unit_class = GroupElement{std::move(unit)};

    inv.det_I_minus_A = det_signed(a.identity_minus());
    inv.det_I_minus_A_sign = sign(inv.det_I_minus_A);

    if ((inv.det_I_minus_A_sign == 0) != (inv.k1_rank > 0))
        throw InternalError("det(I - A) and SNF disagree on singularity");
    if (inv.k1_rank == 0 && abs(inv.det_I_minus_A) != product)
        throw InternalError("|det(I - A)| differs from the product of invariant factors");
    return inv;
}

std::string to_string(Reason r) {
    switch (r) {
    case Reason::ok: return "ok";
    case Reason::sink: return "sink";
    case Reason::not_strongly_connected: return "not_strongly_connected";
    case Reason::permutation: return "permutation";
    case Reason::infinite_k0: return "infinite_k0";
    }
    return "?";
}

Reason classification_reason(const KInvariant& inv) {
    if (inv.has_sink) return Reason::sink;
    if (!inv.strongly_connected) return Reason::not_strongly_connected;
    if (inv.is_permutation) return Reason::permutation;
    if (inv.k1_rank > 0) return Reason::infinite_k0;
    return Reason::ok;
}

bool stably_cuntz_polygon(const KInvariant& inv) { return classification_reason(inv) == Reason::ok; }

bool stably_cuntz_algebra(const KInvariant& inv) { return stably_cuntz_polygon(inv) && is_cyclic(inv.k0); }

bool exactly_cuntz_polygon(const KInvariant& inv) {
    if (!stably_cuntz_polygon(inv)) return false;
    return same_orbit(inv.k0, *inv.unit_class, all_ones(inv.k0));
}

bool exactly_cuntz_algebra(const KInvariant& inv) {
    if (!stably_cuntz_algebra(inv)) return false;
    return is_full_order_generator(inv.k0, *inv.unit_class);
}

bool flow_equiv_full_shift(const KInvariant& inv) {
    return stably_cuntz_algebra(inv) && inv.det_I_minus_A_sign < 0;
}

std::vector<SylowEntry> sylow_profile(const KInvariant& inv, const std::vector<std::uint64_t>& primes, int max_exp) {
    std::vector<SylowEntry> out;
    out.reserve(primes.size());
    for (auto p : primes) {
        if (!is_prime(p)) throw InvalidInput("sylow_profile: not a prime: " + std::to_string(p));
        SylowEntry e;
        e.p = p;
        e.partition = sylow(inv.k0, BigInt(static_cast<unsigned long>(p)));
        e.trivial = e.partition.empty();
        e.cyclic = e.partition.size() <= 1;
        if (e.partition.size() == 1 && e.partition[0] <= max_exp) e.cyclic_exponent = e.partition[0];
        if (!e.trivial && e.partition.front() == 1 && static_cast<int>(e.partition.size()) <= max_exp)
            e.elementary_rank = static_cast<int>(e.partition.size());
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace rgk
