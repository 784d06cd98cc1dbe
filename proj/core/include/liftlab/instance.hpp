#pragma once

#include "liftlab/arith.hpp"

#include <cstdint>
#include <optional>

namespace liftlab::instance {

using arith::Factorization;
using arith::Residue;

/// A safe prime p = 2q + 1 with q prime, plus the derived moduli tower and
/// group orders every lift computation needs.
struct SafePrimePair {
    Int q;
    Int p;

    Int pq;
    Int p2q2;
    Int p2q3;
    Int p3q3;

    Int phi_q;            // q - 1
    Int subgroup_order;   // q * phi(q) = lcm(p - 1, q - 1)
    Int full_lift_order;  // p * q * phi(q), the unit-group exponent mod p^2 q^2

    Factorization subgroup_order_factors;
    Factorization full_lift_order_factors;
};

/// Checks primality of both members and the p = 2q + 1 shape, then fills in
/// the tower. q = 2 is rejected: quadratic-character tests mod 2 degenerate
/// and phi(q) = 1 collapses the lift digit formulas.
SafePrimePair validate_safe_prime(const Int& p, const Int& q);

/// Deterministically samples odd q of the requested bit size until both q and
/// 2q + 1 are prime. Same seed, same pair.
SafePrimePair find_safe_prime(unsigned bit_length, std::uint64_t seed,
                              unsigned max_attempts = 1u << 20);

/// Smallest a0 >= 2 generating the full unit group of both p and q; its order
/// mod pq is then q*phi(q).
Residue find_dual_primitive_root(const SafePrimePair& pair);

/// True iff the quadratic characters of b0 agree mod p and mod q, i.e. iff
/// b0 lies in the index-2 subgroup generated by a dual primitive root.
bool is_extendable(const SafePrimePair& pair, const Int& b0);

/// Combines component indices n_p mod p-1 and n_q mod q-1 into the unique
/// n mod q*phi(q). Throws ParityMismatch when n_p and n_q disagree mod 2
/// (gcd(p-1, q-1) = 2 is the only obstruction).
Residue extend_dlog(const SafePrimePair& pair, const Int& n_p, const Int& n_q);

struct ShiftNormalization {
    Residue b0;  // mod pq, extendable, same value mod p as the input
    Int shifts;  // the k in b0 + k*p
};

/// Walks b0, b0+p, b0+2p, ... to the first candidate coprime to q whose
/// quadratic characters agree. The mod-p index of the instance is unchanged.
ShiftNormalization normalize_shift(const SafePrimePair& pair, const Int& b0_mod_p);

struct MultiplyNormalization {
    Residue b0;  // mod pq, extendable
    Int k;       // the mod-p index shifts by +k
};

/// Multiplies the mod-p target by a0 until the canonical representative of
/// b0*a0^k mod p (taken in [0, p) as a residue mod pq) becomes extendable.
/// The recovered index must be shifted back by k mod p-1 afterwards.
MultiplyNormalization normalize_multiply(const SafePrimePair& pair, const Residue& a0,
                                         const Residue& b0);

/// b0^2 mod pq. Both quadratic characters become +1, so the squared instance
/// is always extendable; recovery then yields 2n, see resolve_halving.
Residue normalize_square(const SafePrimePair& pair, const Int& b0);

/// Undoes the squaring trick: from 2n (recovered for the b0^2 instance, mod q
/// or mod q*phi(q)) finds the n mod p-1 whose power matches b0 mod p. The two
/// halving candidates differ by a factor a0^q = -1 mod p, so exactly one
/// survives.
Residue resolve_halving(const SafePrimePair& pair, const Residue& a0, const Int& b0_mod_p,
                        const Int& two_n);

/// A discrete-log instance a0^n = b0 mod pq. `relaxed` marks instances where
/// a0 is only required to generate mod p (and be coprime to q), not mod q.
struct DlogInstance {
    SafePrimePair pair;
    Residue a0;
    Residue b0;
    std::optional<Int> known_n;  // < q*phi(q) when present
    std::optional<Int> n_p;      // mod p-1
    std::optional<Int> n_q;      // mod q-1
    bool relaxed = false;

    /// Validates coprimality, the (dual) primitive-root hypothesis and, when
    /// known_n is given, the congruence a0^known_n = b0 mod pq.
    static DlogInstance make(const SafePrimePair& pair, const Int& a0, const Int& b0,
                             std::optional<Int> known_n = std::nullopt, bool relaxed = false);

    /// Convenience: b0 = a0^n mod pq with known_n = n.
    static DlogInstance from_exponent(const SafePrimePair& pair, const Int& a0, const Int& n);
};

/// True iff a generates the full unit group mod the prime m.
bool is_primitive_root(const Int& a, const Int& m, const Factorization& m_minus_1_factors);

} // namespace liftlab::instance
