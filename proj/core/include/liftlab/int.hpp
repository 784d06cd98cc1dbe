#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace liftlab {

// Arbitrary precision everywhere. The moduli tower reaches p^3*q^3, which
// overflows 128-bit words already for moderate q, so there is no fixed-width
// fast path.
using Int = mpz_class;

inline std::string dec(const Int& x) { return x.get_str(10); }

inline Int int_from_dec(const std::string& s) { return Int(s, 10); }

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int m;
    mpz_lcm(m.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return m;
}

// Floor-mod canonical representative in [0, m).
inline Int mod_reduce(const Int& x, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::uint64_t low_u64(const Int& x)
{
    Int r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), 64);
    std::uint64_t lo = mpz_get_ui(r.get_mpz_t());
#if GMP_NUMB_BITS < 64
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), 32);
    lo |= static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t())) << 32;
#endif
    return lo;
}

} // namespace liftlab
