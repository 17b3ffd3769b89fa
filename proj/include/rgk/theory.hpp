#pragma once

// Limiting probabilities as Euler products, evaluated in log space with a
// rigorous bound on everything that is dropped.

#include "rgk/abelian.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rgk {

struct TruncationPolicy {
    double abs_tol = 1e-12;
    std::uint64_t prime_bound = 10000;
    // Maximum number of terms taken from any infinite product over k.
    int factor_bound = 200;

    void validate() const;
};

enum class TheoryStatus { theorem, conjecture, open };
std::string to_string(TheoryStatus s);

struct TheoryValue {
    double value = 0;
    TheoryStatus status = TheoryStatus::theorem;
    // Rigorous bound on |value - exact| from truncation (rounding excluded).
    double error_bound = 0;
};

// One family of factors prod_k (1 - sign * x^{first + k*step})^power with
// x = 1/p; step == 0 means the single factor k = 0.
struct FactorFamily {
    int sign = 1;
    int first = 1;
    int step = 0;
    int power = 1;
};

using LocalFactor = std::vector<FactorFamily>;

// prod over primes p of the local factor at x = 1/p. The generic factor is
// used for every prime without an override; overrides must sit below the
// prime bound. The generic factor must have no x^1 term, otherwise the
// product diverges. Throws InternalError if the certified bound misses abs_tol.
TheoryValue euler_product(const LocalFactor& generic, const std::map<std::uint64_t, LocalFactor>& overrides = {},
                          const TruncationPolicy& policy = {});

// Local factor at a single prime, with its truncation bound.
TheoryValue local_factor(const LocalFactor& factor, std::uint64_t p, const TruncationPolicy& policy = {});

// Bernoulli-type (iid entries): 1/|Aut G| prod_{p in P} prod_{k>=1} (1 - p^{-k}).
double p_sylow_iid(const FinAbGroup& g, const std::vector<std::uint64_t>& primes, const TruncationPolicy& policy = {});
// Symmetric models: prod_{p in P} N(G_p) prod_{k>=1} (1 - p^{-2k+1}).
double p_sylow_symmetric(const FinAbGroup& g, const std::vector<std::uint64_t>& primes,
                         const TruncationPolicy& policy = {});

// Sylow p-subgroup cyclic, iid model: (1 + 1/(p^2 - p)) prod_{k>=2} (1 - p^{-k}).
double p_cyclic_iid(std::uint64_t p, const TruncationPolicy& policy = {});
// Sylow p-subgroup cyclic, symmetric model: prod_{k>=2} (1 - p^{-2k+1}).
double p_cyclic_symmetric(std::uint64_t p, const TruncationPolicy& policy = {});
double p_cyclic_symmetric_all(const TruncationPolicy& policy = {});

// prod_p (1 + 1/(p^2 - p)) prod_{k>=2} zeta(k)^{-1}.
double p_cuntz_iid(const TruncationPolicy& policy = {});
// prod_{k>=2} zeta(k)^{-1}.
double zeta_product_inverse(const TruncationPolicy& policy = {});

double pi_pr(std::uint64_t p, std::uint32_t r, const TruncationPolicy& policy = {});
double gamma_r(std::uint32_t r, const TruncationPolicy& policy = {});

// Named constants (default policy), computed once.
const std::map<std::string, TheoryValue>& conjecture_constants();
const std::map<std::string, TheoryValue>& theory_constants();

} // namespace rgk
