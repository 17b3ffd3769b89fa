#include "rgk/primes.hpp"

#include "rgk/errors.hpp"

#include <algorithm>

namespace rgk {

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_prime(const BigInt& n) {
    if (sign(n) <= 0) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long c_seed) {
    if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
    BigInt y = 2 + c_seed, c = 1 + c_seed, g = 1, r = 1, q = 1, x, ys;
    const unsigned long m = 128;
    auto step = [&](BigInt& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (BigInt i = 0; i < r; ++i) step(y);
        BigInt k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < m && k + i < r; ++i) {
                step(y);
                BigInt diff = x - y;
                q = q * abs(diff);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            step(ys);
            g = gcd(abs(BigInt(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

void factor_into(const BigInt& n, std::map<BigInt, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        BigInt d = pollard_brent(n, c);
        if (d != n && d != 1) {
            factor_into(d, out);
            BigInt rest = n / d;
            factor_into(rest, out);
            return;
        }
    }
}

} // namespace

std::map<BigInt, int> factorize(const BigInt& n) {
    if (sign(n) <= 0) throw InvalidInput("factorize: argument must be positive");
    std::map<BigInt, int> out;
    BigInt rest = n;
    for (unsigned long p = 2; p < 10000 && rest > 1; ++p) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            out[BigInt(p)] = e;
        }
    }
    factor_into(rest, out);
    return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace rgk
