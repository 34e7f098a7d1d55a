#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mislab/errors.hpp"

namespace mislab {

using Nat = mpz_class; // exact, arbitrary size; nonnegative by convention
using Int = mpz_class;
using Rat = mpq_class;

inline Nat pow_nat(const Nat& base, unsigned long e) {
    Nat out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Nat pow_nat(long base, unsigned long e) { return pow_nat(Nat(base), e); }

// floor(a / b), b > 0
inline Nat floor_div(const Nat& a, const Nat& b) {
    Nat out;
    mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

// floor of a rational
inline Int floor_rat(const Rat& q) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline std::size_t bit_length(const Nat& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline Nat parse_nat(const std::string& s) {
    Nat out;
    if (s.empty() || mpz_set_str(out.get_mpz_t(), s.c_str(), 10) != 0)
        fail(errc::parse_error, "not a decimal integer: '" + s + "'");
    return out;
}

inline Rat parse_rat(const std::string& s) {
    // accepts "a/b" or a decimal integer
    Rat out;
    if (s.empty() || mpq_set_str(out.get_mpq_t(), s.c_str(), 10) != 0)
        fail(errc::parse_error, "not a rational: '" + s + "'");
    out.canonicalize();
    return out;
}

// largest e >= 0 with p^e <= n (n >= 1, p >= 2); integer arithmetic only
inline long ilog_floor(const Nat& n, long p) {
    if (n < 1) fail(errc::invalid_spec, "ilog_floor needs n >= 1");
    long e = 0;
    Nat pw = p;
    while (pw <= n) {
        ++e;
        pw *= p;
    }
    return e;
}

using IMatrix = std::vector<std::vector<Nat>>;

inline IMatrix imat_identity(std::size_t n) {
    IMatrix m(n, std::vector<Nat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IMatrix imat_mul(const IMatrix& a, const IMatrix& b) {
    std::size_t n = a.size();
    IMatrix c(n, std::vector<Nat>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline IMatrix imat_pow(IMatrix base, unsigned long e) {
    IMatrix out = imat_identity(base.size());
    while (e) {
        if (e & 1) out = imat_mul(out, base);
        e >>= 1;
        if (e) base = imat_mul(base, base);
    }
    return out;
}

inline Nat imat_entry_sum(const IMatrix& m) {
    Nat s = 0;
    for (const auto& row : m)
        for (const auto& v : row) s += v;
    return s;
}

} // namespace mislab
