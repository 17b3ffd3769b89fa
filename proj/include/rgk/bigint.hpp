#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rgk {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big(std::int64_t v) {
    BigInt r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

inline int sign(const BigInt& v) { return mpz_sgn(v.get_mpz_t()); }

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const BigRational& v) { return v.get_str(); }

// Nonnegative residue of a modulo m (m > 0).
inline BigInt mod_nonneg(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// p-adic valuation of a nonzero integer.
inline int valuation(const BigInt& a, const BigInt& p) {
    if (sign(a) == 0) return -1;
    BigInt rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

inline BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

} // namespace rgk
