#pragma once

#include "liftlab/errors.hpp"
#include "liftlab/int.hpp"

#include <iosfwd>
#include <vector>

namespace liftlab::arith {

/// A canonical residue: value always reduced into [0, modulus), modulus >= 2.
/// Negative inputs are reduced immediately so equality tests stay bit-exact.
class Residue {
public:
    Residue(Int value, Int modulus);

    const Int& value() const { return value_; }
    const Int& modulus() const { return modulus_; }

    bool operator==(const Residue& rhs) const = default;

    Residue operator+(const Residue& rhs) const;
    Residue operator-(const Residue& rhs) const;
    Residue operator*(const Residue& rhs) const;
    Residue operator-() const;

    /// Multiplicative inverse; throws NotInvertible with the offending gcd.
    Residue inverse() const;

private:
    void require_same_modulus(const Residue& rhs) const;

    Int value_;
    Int modulus_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

struct PrimePower {
    Int prime;
    unsigned exponent;

    bool operator==(const PrimePower&) const = default;
};

/// Complete prime factorization, primes strictly increasing. A default
/// constructed value is the empty factorization of 1.
class Factorization {
public:
    Factorization() = default;

    static Factorization of(const Int& n);
    static Factorization of(const Int& n, const Int& trial_division_bound);

    /// Assembles a factorization from known prime powers (primes must be
    /// distinct; they get sorted). Used where the factors are known by
    /// construction, e.g. p - 1 = 2q for a safe prime.
    static Factorization from_known(std::vector<PrimePower> factors);

    const std::vector<PrimePower>& prime_powers() const { return factors_; }

    /// Product of prime^exponent; the factored integer.
    Int value() const;

private:
    std::vector<PrimePower> factors_;
};

/// x^e mod m by square-and-multiply, e >= 0, m >= 2.
Residue powmod(const Int& x, const Int& e, const Int& m);

/// Inverse of x mod m; throws NotInvertible carrying gcd(x, m) when shared
/// factors block the division.
Residue invmod(const Int& x, const Int& m);

/// The unique n mod lcm(m1, m2) matching both congruences; throws
/// IncompatibleCongruence when gcd(m1, m2) does not divide r1 - r2.
Residue crt_pair(const Residue& r1, const Residue& r2);

/// Euler-criterion value x^((p-1)/2) mod p mapped to {-1, 0, +1}; 0 iff p | x.
/// Throws InvalidModulus unless p is an odd (probable) prime.
int legendre_symbol(const Int& x, const Int& p);

/// Carmichael's lambda: phi(p^r) on odd prime powers, 2^(r-2) for 2^r with
/// r >= 3 (lambda(2) = 1, lambda(4) = 2), lcm across prime-power parts.
Int carmichael_lambda(const Int& n, const Factorization& f);
Int carmichael_lambda(const Int& n);

Int euler_phi(const Int& n, const Factorization& f);
Int euler_phi(const Int& n);

/// Least d > 0 with x^d = 1 mod m, found by stripping primes from a known
/// multiple of the order. Throws NotInvertible or, when x^group_exponent is
/// not 1, ExponentInvalid.
Int multiplicative_order(const Int& x, const Int& m, const Int& group_exponent,
                         const Factorization& exponent_factors);

/// Miller-Rabin. Deterministic below 3.3e24 via the fixed 13-prime base set;
/// 64 seeded pseudo-random rounds beyond that bound.
bool is_probable_prime(const Int& n);

} // namespace liftlab::arith
