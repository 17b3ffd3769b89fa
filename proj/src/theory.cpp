#include "rgk/theory.hpp"

#include "rgk/errors.hpp"
#include "rgk/primes.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>

namespace rgk {

void TruncationPolicy::validate() const {
    if (!(abs_tol > 0)) throw InvalidInput("abs_tol must be positive");
    if (prime_bound < 2) throw InvalidInput("prime_bound must be at least 2");
    if (factor_bound < 1) throw InvalidInput("factor_bound must be positive");
}

std::string to_string(TheoryStatus s) {
    switch (s) {
    case TheoryStatus::theorem: return "theorem";
    case TheoryStatus::conjecture: return "conjecture";
    case TheoryStatus::open: return "open";
    }
    return "?";
}

namespace {

// Terms below this are dropped and charged to the bound.
constexpr double kTermCutoff = 1e-18;

struct LogSum {
    double log = 0;
    double bound = 0; // bound on |dropped part of the log|
};

// log of one family at x <= 1/2. Uses |log(1 - s y)| <= 2y for 0 <= y <= 1/2.
void add_family(LogSum& acc, const FactorFamily& f, double x, int factor_bound) {
    double term = std::pow(x, f.first);
    const double ratio = f.step > 0 ? std::pow(x, f.step) : 0.0;
    for (int k = 0;; ++k) {
        acc.log += f.power * std::log1p(-f.sign * term);
        if (f.step == 0) return;
        term *= ratio;
        if (term < kTermCutoff || k + 1 >= factor_bound) break;
    }
    acc.bound += std::abs(f.power) * 2.0 * term / (1.0 - ratio);
}

LogSum local_log(const LocalFactor& factor, double x, int factor_bound) {
    LogSum acc;
    for (const auto& f : factor) add_family(acc, f, x, factor_bound);
    return acc;
}

int mobius(int k) {
    int result = 1;
    for (int d = 2; d * d <= k; ++d) {
        if (k % d) continue;
        k /= d;
        if (k % d == 0) return 0;
        result = -result;
    }
    return k > 1 ? -result : result;
}

// log zeta(s) for s >= 2, avoiding cancellation in zeta(s) - 1 for large s.
double log_zeta(double s) {
    if (s < 20) return std::log(boost::math::zeta(s));
    double tail = 0;
    for (int j = 2;; ++j) {
        double t = std::pow(static_cast<double>(j), -s);
        tail += t;
        if (t < 1e-30) break;
    }
    return std::log1p(tail);
}

// Prime zeta P(m) = sum_p p^{-m} = sum_k mu(k)/k log zeta(km), m >= 2.
double prime_zeta(int m) {
    double sum = 0;
    for (int k = 1;; ++k) {
        const double s = static_cast<double>(k) * m;
        if (s > 80) break; // log zeta(s) < 2^{1-s}, negligible
        const int mu = mobius(k);
        if (mu != 0) sum += mu * log_zeta(s) / k;
    }
    return sum;
}

// Coefficient c_m of x^m in the power series of log(local factor).
double series_coefficient(const LocalFactor& factor, int m) {
    double c = 0;
    for (const auto& f : factor) {
        for (int k = 0;; ++k) {
            const int a = f.first + k * f.step;
            if (a > m) break;
            if (m % a == 0) {
                const int j = m / a;
                const double sj = (f.sign < 0 && j % 2 == 1) ? -1.0 : 1.0;
                c += -f.power * sj / j;
            }
            if (f.step == 0) break;
        }
    }
    return c;
}

TheoryValue finish(const LogSum& acc, const TruncationPolicy& policy) {
    TheoryValue v;
    v.value = std::exp(acc.log);
    v.error_bound = v.value * std::expm1(acc.bound);
    if (v.error_bound > policy.abs_tol)
        throw InternalError("Euler product truncation bound " + std::to_string(v.error_bound) + " exceeds abs_tol");
    return v;
}

} // namespace

TheoryValue local_factor(const LocalFactor& factor, std::uint64_t p, const TruncationPolicy& policy) {
    policy.validate();
    if (!is_prime(p)) throw InvalidInput("not a prime: " + std::to_string(p));
    return finish(local_log(factor, 1.0 / static_cast<double>(p), policy.factor_bound), policy);
}

TheoryValue euler_product(const LocalFactor& generic, const std::map<std::uint64_t, LocalFactor>& overrides,
                          const TruncationPolicy& policy) {
    policy.validate();
    if (series_coefficient(generic, 1) != 0) throw InvalidInput("euler_product: generic factor has an x^1 term");
    const auto primes = primes_up_to(policy.prime_bound);
    for (const auto& [p, f] : overrides)
        if (p > policy.prime_bound || !is_prime(p))
            throw InvalidInput("euler_product: override prime must be prime and below the prime bound");

    LogSum acc;
    for (auto p : primes) {
        auto it = overrides.find(p);
        LogSum local = local_log(it == overrides.end() ? generic : it->second, 1.0 / static_cast<double>(p),
                                 policy.factor_bound);
        acc.log += local.log;
        acc.bound += local.bound;
    }

    // Primes above the bound: sum_{p > B} log f(p) = sum_m c_m P_B(m) with
    // P_B(m) = P(m) - sum_{p <= B} p^{-m}. Orders above kMaxOrder are bounded
    // by |c_m| <= F m and P_B(m) <= B^{1-m}/(m-1).
    constexpr int kMaxOrder = 8;
    const double b = static_cast<double>(policy.prime_bound);
    for (int m = 2; m <= kMaxOrder; ++m) {
        const double c = series_coefficient(generic, m);
        if (c == 0) continue;
        double partial = 0;
        for (auto it = primes.rbegin(); it != primes.rend(); ++it) partial += std::pow(static_cast<double>(*it), -m);
        acc.log += c * (prime_zeta(m) - partial);
    }
    double families = 0;
    for (const auto& f : generic) families += std::abs(f.power);
    acc.bound += 2.0 * families * std::pow(b, -kMaxOrder) / (1.0 - 1.0 / b);
    return finish(acc, policy);
}

namespace {

const LocalFactor kAllK1 = {{1, 1, 1, 1}};       // prod_{k>=1} (1 - x^k)
const LocalFactor kAllK2 = {{1, 2, 1, 1}};       // prod_{k>=2} (1 - x^k)
const LocalFactor kOddK1 = {{1, 1, 2, 1}};       // prod_{k>=1} (1 - x^{2k-1})
const LocalFactor kOddK2 = {{1, 3, 2, 1}};       // prod_{k>=2} (1 - x^{2k-1})
// 1 + 1/(p^2 - p) = (1 + x^3) / (1 - x^2)
const LocalFactor kCyclicBoost = {{-1, 3, 0, 1}, {1, 2, 0, -1}};

LocalFactor concat(LocalFactor a, const LocalFactor& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

LocalFactor inverse(LocalFactor a) {
    for (auto& f : a) f.power = -f.power;
    return a;
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidInput("not a prime: " + std::to_string(p));
}

// prod_{p in P} p^{|Sylow_p|} must equal |G|.
void require_supported(const FinAbGroup& g, const std::vector<std::uint64_t>& primes) {
    if (g.free_rank() > 0) throw Unsupported("Sylow probabilities need a finite group");
    BigInt covered = 1;
    for (auto p : primes) {
        require_prime(p);
        const BigInt bp(static_cast<unsigned long>(p));
        for (int e : sylow(g, bp)) covered *= pow(bp, static_cast<unsigned long>(e));
    }
    if (covered != g.order()) throw InvalidInput("group is not supported on the given primes");
}

} // namespace

double p_sylow_iid(const FinAbGroup& g, const std::vector<std::uint64_t>& primes, const TruncationPolicy& policy) {
    require_supported(g, primes);
    double result = 1.0 / aut_order(g).get_d();
    for (auto p : primes) result *= local_factor(kAllK1, p, policy).value;
    return result;
}

double p_sylow_symmetric(const FinAbGroup& g, const std::vector<std::uint64_t>& primes,
                         const TruncationPolicy& policy) {
    require_supported(g, primes);
    double result = 1.0;
    for (auto p : primes) {
        const BigInt bp(static_cast<unsigned long>(p));
        result *= pairing_count_normalized_p_group(sylow(g, bp), bp).get_d();
        result *= local_factor(kOddK1, p, policy).value;
    }
    return result;
}

double p_cyclic_iid(std::uint64_t p, const TruncationPolicy& policy) {
    return local_factor(concat(kCyclicBoost, kAllK2), p, policy).value;
}

double p_cyclic_symmetric(std::uint64_t p, const TruncationPolicy& policy) {
    return local_factor(kOddK2, p, policy).value;
}

double p_cyclic_symmetric_all(const TruncationPolicy& policy) { return euler_product(kOddK2, {}, policy).value; }

double p_cuntz_iid(const TruncationPolicy& policy) {
    return euler_product(concat(kCyclicBoost, kAllK2), {}, policy).value;
}

double zeta_product_inverse(const TruncationPolicy& policy) { return euler_product(kAllK2, {}, policy).value; }

double pi_pr(std::uint64_t p, std::uint32_t r, const TruncationPolicy& policy) {
    require_prime(p);
    if (r < 3) throw InvalidInput("pi_pr needs r >= 3");
    const bool full = p == 2 || (r - 1) % p == 0;
    return local_factor(full ? kOddK1 : kOddK2, p, policy).value;
}

double gamma_r(std::uint32_t r, const TruncationPolicy& policy) {
    if (r < 3) throw InvalidInput("gamma_r needs r >= 3");
    std::map<std::uint64_t, LocalFactor> overrides;
    for (auto p : prime_divisors(2ULL * (r - 1))) overrides[p] = kOddK1;
    return euler_product(kOddK2, overrides, policy).value;
}

namespace {

TheoryValue tagged(TheoryValue v, TheoryStatus s) {
    v.status = s;
    return v;
}

std::map<std::string, TheoryValue> build_conjectures() {
    std::map<std::string, TheoryValue> out;
    const TruncationPolicy pol;
    out["dcuntz"] = tagged(euler_product(kAllK2, {}, pol), TheoryStatus::conjecture);
    out["dexact"] = tagged(euler_product(inverse(kCyclicBoost), {}, pol), TheoryStatus::conjecture);
    out["ecuntz"] = tagged(euler_product(concat({{1, 2, 0, 1}}, kOddK2), {}, pol), TheoryStatus::conjecture);
    out["eexact"] = tagged(euler_product({{1, 2, 0, 1}}, {}, pol), TheoryStatus::conjecture);
    out["pi_2"] = tagged(local_factor(kOddK1, 2, pol), TheoryStatus::conjecture);
    out["gamma_2j_plus_1"] = tagged(euler_product(kOddK2, {{2, kOddK1}}, pol), TheoryStatus::conjecture);
    return out;
}

std::map<std::string, TheoryValue> build_all() {
    std::map<std::string, TheoryValue> out = conjecture_constants();
    const TruncationPolicy pol;
    TheoryValue cuntz = euler_product(concat(kCyclicBoost, kAllK2), {}, pol);
    out["p_cuntz_iid"] = tagged(cuntz, TheoryStatus::theorem);
    TheoryValue half = cuntz;
    half.value /= 2;
    half.error_bound /= 2;
    out["full_shift_shifted"] = tagged(half, TheoryStatus::theorem);
    out["full_shift_bernoulli"] = tagged(half, TheoryStatus::conjecture);
    out["zeta_product_inverse"] = tagged(euler_product(kAllK2, {}, pol), TheoryStatus::theorem);
    out["p_cyclic_symmetric_all"] = tagged(euler_product(kOddK2, {}, pol), TheoryStatus::conjecture);
    out["six_over_pi_squared"] = tagged(TheoryValue{6.0 / (std::numbers::pi * std::numbers::pi)}, TheoryStatus::theorem);
    return out;
}

} // namespace

const std::map<std::string, TheoryValue>& conjecture_constants() {
    static const std::map<std::string, TheoryValue> table = build_conjectures();
    return table;
}

const std::map<std::string, TheoryValue>& theory_constants() {
    static const std::map<std::string, TheoryValue> table = build_all();
    return table;
}

} // namespace rgk
