#pragma once

#include "liftlab/instance.hpp"

namespace liftlab::lifts {

using arith::Residue;
using instance::SafePrimePair;

/// The first-order deviation w in x^(pq*phi(q)) = 1 + w*p^2q^2 mod p^3q^3.
/// Well-defined on residues mod p^2q^2; behaves like a logarithm:
/// value(x*y) = value(x) + value(y) mod pq.
struct FermatQuotient {
    Residue base;   // mod p^2 q^2
    Residue value;  // mod pq
};

/// The order-preserving lift x0 + digit*pq mod p^2q^2.
struct CanonicalLift {
    Residue x0;      // mod pq
    Residue digit;   // mod pq
    Residue lifted;  // mod p^2 q^2, = x0 + digit*pq
};

/// beta in a0^n = b0 + beta*pq mod p^2q^2.
struct Carry {
    Int n;
    Residue beta;  // mod pq
};

/// Classic Fermat quotient for a composite modulus: the w in
/// x^phi(n) = 1 + w*n mod n^2.
Residue fermat_quotient_lerch(const Int& x, const Int& n, const arith::Factorization& f);

/// Safe-prime variant with exponent pq*phi(q) (the unit-group exponent mod
/// p^2q^2, not Euler's phi).
FermatQuotient fermat_quotient_pq(const SafePrimePair& pair, const Int& x);

/// digit = -value(x0) * x0 / phi(q) mod pq; lifted = x0 + digit*pq. The
/// division is always legal: gcd(q - 1, pq) = 1 since q - 1 < p.
CanonicalLift canonical_lift(const SafePrimePair& pair, const Int& x0);

/// Extracts beta from a0^n recomputed at the doubled modulus. Throws
/// NotCongruent when a0^n != b0 mod pq.
Carry carry(const SafePrimePair& pair, const Int& a0, const Int& n, const Int& b0);

/// The linear relation beta + n*(b0/a0)*a1 = b1 mod pq tying the carry to the
/// two lift digits. Holds on every valid instance; false signals a bug.
bool verify_carry_relation(const SafePrimePair& pair, const Int& a0, const Int& b0,
                           const Int& n, const CanonicalLift& lift_a,
                           const CanonicalLift& lift_b, const Carry& beta);

/// The quotient-side equivalent: n*value(a0) = value(b0) + (beta/b0)*phi(q)
/// mod pq.
bool verify_fermat_carry_relation(const SafePrimePair& pair, const Int& a0, const Int& b0,
                                  const Int& n, const Carry& beta);

struct OrderReport {
    Int order_mod_p2q2;           // must equal q*phi(q)
    bool unit_power_mod_p2q3;     // lifted^(q*phi(q)) = 1 mod p^2q^3
};

/// Asserts the two order claims for the canonical lift of a dual primitive
/// root; throws OrderMismatch when either fails.
OrderReport check_canonical_orders(const SafePrimePair& pair, const CanonicalLift& lift);

/// The prior construction one prime level down: lifted = x0^p mod p^2,
/// digit = (lifted - x0)/p.
struct TeichmullerLift {
    Residue digit;   // mod p
    Residue lifted;  // mod p^2
};

TeichmullerLift teichmuller_p2(const Int& p, const Int& x0);

/// Recovers n_p mod p from the mod-p^2 machinery alone:
/// ((b1 - beta)/b0) / (a1/a0) mod p. Throws NotInvertible when the digit a1
/// vanishes mod p (a0 is its own order-preserving lift; the formula's
/// denominator dies).
Residue formula4_check(const Int& p, const Int& a0, const Int& b0, const Int& n_p);

} // namespace liftlab::lifts
