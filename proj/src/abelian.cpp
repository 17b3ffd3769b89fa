#include "rgk/abelian.hpp"

#include "rgk/errors.hpp"
#include "rgk/primes.hpp"

#include <algorithm>
#include <sstream>

namespace rgk {

FinAbGroup::FinAbGroup(std::vector<BigInt> invariant_factors, int free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
    if (free_rank_ < 0) throw InvalidInput("FinAbGroup: negative free rank");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw InvalidInput("FinAbGroup: invariant factor below 2");
        if (i + 1 < factors_.size() &&
            !mpz_divisible_p(factors_[i + 1].get_mpz_t(), factors_[i].get_mpz_t()))
            throw InvalidInput("FinAbGroup: invariant factors do not form a divisibility chain");
    }
}

BigInt FinAbGroup::order() const {
    BigInt r = 1;
    for (const auto& d : factors_) r *= d;
    return r;
}

BigInt FinAbGroup::exponent() const { return factors_.empty() ? BigInt(1) : factors_.back(); }

std::string FinAbGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : factors_) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank_ > 0) {
        if (!first) os << " + ";
        os << "Z^" << free_rank_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string OrbitLabel::to_string() const {
    std::ostringstream os;
    for (const auto& [p, hs] : per_prime) {
        os << p.get_str() << ":[";
        for (std::size_t i = 0; i < hs.size(); ++i) os << (i ? "," : "") << hs[i].to_string();
        os << "]";
    }
    return os.str();
}

FinAbGroup from_diagonal(std::span<const BigInt> diag) {
    std::vector<BigInt> torsion;
    int free_rank = 0;
    for (const auto& d : diag) {
        if (sign(d) < 0) throw InvalidInput("from_diagonal: negative entry " + d.get_str());
        if (sign(d) == 0)
            ++free_rank;
        else if (d != 1)
            torsion.push_back(d);
    }
    std::sort(torsion.begin(), torsion.end());
    // gcd/lcm exchange: after pass i, torsion[i] divides every later entry.
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        for (std::size_t j = i + 1; j < torsion.size(); ++j) {
            if (mpz_divisible_p(torsion[j].get_mpz_t(), torsion[i].get_mpz_t())) continue;
            BigInt g = gcd(torsion[i], torsion[j]);
            BigInt l = lcm(torsion[i], torsion[j]);
            torsion[i] = g;
            torsion[j] = l;
        }
    }
    std::erase_if(torsion, [](const BigInt& d) { return d == 1; });
    return FinAbGroup(std::move(torsion), free_rank);
}

FinAbGroup from_diagonal(std::initializer_list<long> diag) {
    std::vector<BigInt> v;
    for (long d : diag) v.push_back(big(d));
    return from_diagonal(std::span<const BigInt>(v));
}

namespace {

void require_prime(const BigInt& p) {
    if (!is_prime(p)) throw InvalidInput("not a prime: " + p.get_str());
}

void require_torsion(const FinAbGroup& g, const char* what) {
    if (g.free_rank() > 0) throw Unsupported(std::string(what) + ": group has a free part");
}

} // namespace

Partition sylow(const FinAbGroup& g, const BigInt& p) {
    require_prime(p);
    Partition lambda;
    for (const auto& d : g.invariant_factors()) {
        int e = valuation(d, p);
        if (e > 0) lambda.push_back(e);
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return lambda;
}

PrimaryDecomposition primary_decomposition(const FinAbGroup& g) {
    PrimaryDecomposition out;
    if (g.is_trivial_torsion()) return out;
    for (const auto& [p, e] : factorize(g.exponent())) out[p] = sylow(g, p);
    return out;
}

FinAbGroup from_primary(const PrimaryDecomposition& parts, int free_rank) {
    std::size_t k = 0;
    for (const auto& [p, lambda] : parts) k = std::max(k, lambda.size());
    std::vector<BigInt> factors(k, BigInt(1));
    for (const auto& [p, lambda] : parts) {
        require_prime(p);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            if (lambda[i] < 1 || (i > 0 && lambda[i] > lambda[i - 1]))
                throw InvalidInput("from_primary: partition must be nonincreasing and positive");
            factors[k - 1 - i] *= pow(p, static_cast<unsigned long>(lambda[i]));
        }
    }
    return FinAbGroup(std::move(factors), free_rank);
}

bool is_cyclic(const FinAbGroup& g) { return g.num_factors() <= 1; }

bool is_p_cyclic(const FinAbGroup& g, const BigInt& p) { return sylow(g, p).size() <= 1; }

BigInt aut_order_p_group(const Partition& lambda, const BigInt& p) {
    // Hillar & Rhea, "Automorphisms of finite abelian groups": with exponents
    // sorted ascending e_1 <= ... <= e_k, d_j = max{l : e_l = e_j} and
    // c_j = min{l : e_l = e_j},
    // |Aut| = prod (p^{d_j} - p^{j-1}) * prod p^{e_j (k - d_j)} * prod p^{(e_j - 1)(k - c_j + 1)}.
    Partition e(lambda.rbegin(), lambda.rend());
    const long k = static_cast<long>(e.size());
    BigInt result = 1;
    for (long j = 1; j <= k; ++j) {
        long d = j, c = j;
        while (d < k && e[d] == e[j - 1]) ++d;
        while (c > 1 && e[c - 2] == e[j - 1]) --c;
        result *= pow(p, d) - pow(p, j - 1);
        result *= pow(p, static_cast<unsigned long>(e[j - 1] * (k - d)));
        result *= pow(p, static_cast<unsigned long>((e[j - 1] - 1) * (k - c + 1)));
    }
    return result;
}

BigInt aut_order(const FinAbGroup& g) {
    require_torsion(g, "aut_order");
    BigInt result = 1;
    for (const auto& [p, lambda] : primary_decomposition(g)) result *= aut_order_p_group(lambda, p);
    return result;
}

Partition conjugate(const Partition& lambda) {
    Partition mu;
    if (lambda.empty()) return mu;
    for (int i = 1; i <= lambda.front(); ++i) {
        int count = 0;
        for (int l : lambda)
            if (l >= i) ++count;
        mu.push_back(count);
    }
    return mu;
}

BigRational pairing_count_normalized_p_group(const Partition& lambda, const BigInt& p) {
    // N(G) = p^{-sum mu_i(mu_i+1)/2} prod_{i=1}^{lambda_1} prod_{j=1}^{floor((mu_i-mu_{i+1})/2)} (1-p^{-2j})^{-1}
    const Partition mu = conjugate(lambda);
    unsigned long exp_sum = 0;
    for (int m : mu) exp_sum += static_cast<unsigned long>(m) * (m + 1) / 2;
    BigRational result(BigInt(1), pow(p, exp_sum));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const int next = i + 1 < mu.size() ? mu[i + 1] : 0;
        for (int j = 1; j <= (mu[i] - next) / 2; ++j) {
            BigInt q = pow(p, 2 * j);
            // (1 - q^{-1})^{-1} = q / (q - 1)
            result *= BigRational(q, q - 1);
        }
    }
    result.canonicalize();
    return result;
}

BigRational pairing_count_normalized(const FinAbGroup& g) {
    require_torsion(g, "pairing_count_normalized");
    BigRational result = 1;
    for (const auto& [p, lambda] : primary_decomposition(g))
        result *= pairing_count_normalized_p_group(lambda, p);
    result.canonicalize();
    return result;
}

void validate_element(const FinAbGroup& g, const GroupElement& x) {
    if (x.coords.size() != g.num_factors())
        throw InvalidInput("group element has " + std::to_string(x.coords.size()) +
                           " coordinates, group has " + std::to_string(g.num_factors()) + " factors");
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        if (sign(x.coords[i]) < 0 || x.coords[i] >= g.invariant_factors()[i])
            throw InvalidInput("group element coordinate " + std::to_string(i) + " out of range");
}

BigInt element_order(const FinAbGroup& g, const GroupElement& x) {
    validate_element(g, x);
    BigInt ord = 1;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        const BigInt& d = g.invariant_factors()[i];
        ord = lcm(ord, BigInt(d / gcd(x.coords[i], d)));
    }
    return ord;
}

GroupElement all_ones(const FinAbGroup& g) {
    return GroupElement{std::vector<BigInt>(g.num_factors(), BigInt(1))};
}

OrbitLabel orbit_invariant(const FinAbGroup& g, const GroupElement& x) {
    require_torsion(g, "orbit_invariant");
    validate_element(g, x);
    OrbitLabel label;
    for (const auto& [p, lambda] : primary_decomposition(g)) {
        // p-primary component of x: x_i mod p^{e_i}; only its valuation matters.
        std::vector<std::pair<int, int>> comps; // (valuation of component or -1 if zero, e_i)
        for (std::size_t i = 0; i < x.coords.size(); ++i) {
            int e = valuation(g.invariant_factors()[i], p);
            if (e <= 0) continue;
            BigInt c = mod_nonneg(x.coords[i], pow(p, static_cast<unsigned long>(e)));
            comps.emplace_back(sign(c) == 0 ? -1 : valuation(c, p), e);
        }
        std::vector<Height> heights;
        for (int k = 0;; ++k) {
            int h = -1;
            for (auto [v, e] : comps) {
                if (v < 0 || v + k >= e) continue;
                if (h < 0 || v + k < h) h = v + k;
            }
            if (h < 0) {
                heights.push_back(Height::infinite());
                break;
            }
            heights.push_back(Height::finite(h));
        }
        label.per_prime.emplace_back(p, std::move(heights));
    }
    return label;
}

bool same_orbit(const FinAbGroup& g, const GroupElement& x, const GroupElement& y) {
    require_torsion(g, "same_orbit");
    const BigInt ox = element_order(g, x);
    const BigInt oy = element_order(g, y);
    if (ox != oy) return false;
    if (ox == g.exponent() || is_cyclic(g)) return true;
    return orbit_invariant(g, x) == orbit_invariant(g, y);
}

bool is_full_order_generator(const FinAbGroup& g, const GroupElement& x) {
    if (!is_cyclic(g)) throw Unsupported("is_full_order_generator: group is not cyclic");
    validate_element(g, x);
    if (g.is_trivial_torsion()) return true;
    return gcd(x.coords[0], g.invariant_factors()[0]) == 1;
}

std::string partition_group_label(const Partition& lambda, const BigInt& p) {
    if (lambda.empty()) return "0";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < lambda.size()) {
        std::size_t j = i;
        while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
        if (!first) os << " + ";
        std::string cyc = "Z/" + p.get_str();
        if (lambda[i] > 1) cyc += "^" + std::to_string(lambda[i]);
        if (j - i > 1)
            os << "(" << cyc << ")^" << (j - i);
        else
            os << cyc;
        first = false;
        i = j;
    }
    return os.str();
}

} // namespace rgk
