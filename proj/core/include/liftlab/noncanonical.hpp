#pragma once

#include "liftlab/lifts.hpp"

namespace liftlab::noncanonical {

using arith::Residue;
using instance::DlogInstance;
using instance::SafePrimePair;
using lifts::CanonicalLift;

enum class LiftCase {
    Canonical,           // k = 0
    SubgroupPreserving,  // k = k1*p, k1 != 0 mod q; order stays q*phi(q)
    FullOrder,           // anything else; order grows to pq*phi(q)
};

const char* to_string(LiftCase c);

/// Offsets (k, l) mod pq labeling the lift a0 + (a1+k)pq, b0 + (b1+l)pq of a
/// dlog instance. k1 = k/p and l1 = l/p are derived on demand, never stored.
struct NonCanonicalLift {
    SafePrimePair pair;
    Residue k;  // mod pq
    Residue l;  // mod pq
    LiftCase tag;

    /// k/p mod q; only meaningful for SubgroupPreserving lifts.
    Residue k1() const;
    Residue l1() const;
};

/// Builds the matching l for a chosen k: l = n*(b0/a0)*k mod pq. Demands
/// known_n: producing a valid (k, l) without n is exactly the discrete-log
/// problem, which is the equivalence this operation documents rather than
/// breaks. The lifted congruence is re-verified by direct exponentiation
/// before returning.
NonCanonicalLift construct_noncanonical(const DlogInstance& inst, const CanonicalLift& lift_a,
                                        const CanonicalLift& lift_b, const Int& k);

/// Case tag from the divisibility pattern of (k, l). Throws InconsistentPair
/// when p | k but p does not divide l, which no valid lift produces.
LiftCase classify_offset(const SafePrimePair& pair, const Int& k, const Int& l);

/// Multiplicative order of a0 + (a1+k)pq mod p^2q^2. Subgroup-preserving and
/// canonical offsets keep q*phi(q); unit offsets and multiples of q grow to
/// pq*phi(q).
Int check_noncanonical_order(const SafePrimePair& pair, const CanonicalLift& lift_a,
                             const Int& k);

/// n = (l1/b0) / (k1/a0) mod q, the logarithmic-derivative quotient at the
/// subgroup level. Throws NotInvertible when k1 = 0 mod q.
Residue recover_mod_q(const SafePrimePair& pair, const Int& a0, const Int& b0,
                      const Int& k1, const Int& l1);

/// n = (l/b0) / (k/a0) mod pq when gcd(k, pq) = 1; for k sharing a factor
/// g in {p, q} with pq, solves the linear congruence and returns the unique
/// solution mod pq/g (the shared factor's worth of information is lost).
Residue recover_mod_pq(const SafePrimePair& pair, const Int& a0, const Int& b0,
                       const Int& k, const Int& l);

/// Independent recovery route: raises both lifted sides to the unit-group
/// exponent pq*phi(q) mod p^3q^3, reads n off the resulting linear relation
/// between quotient values. Must agree with recover_mod_pq everywhere.
Residue smart_recover(const SafePrimePair& pair, const CanonicalLift& lift_a,
                      const CanonicalLift& lift_b, const Int& k, const Int& l);

/// From n mod q to n mod p-1 = 2q: tests the two candidates n and n + q
/// against b0 mod p. Exactly one matches for a primitive root a0.
Residue lift_to_p_minus_1(const SafePrimePair& pair, const Int& a0_mod_p,
                          const Int& b0_mod_p, const Int& n_mod_q);

enum class RelaxedMode {
    ModQ,
    ModPq,
};

/// Recovery under the relaxed hypothesis (a0 generates mod p only, both bases
/// merely coprime to q): offsets are taken against the powered instance
/// A0 = a0^phi(q), B0 = b0^phi(q) mod pq, where A0 = B0 = 1 mod q makes the
/// mod-q quotient collapse to db0/da0.
Residue relaxed_recover(const SafePrimePair& pair, const Int& a0, const Int& b0,
                        const Int& da0, const Int& db0, RelaxedMode mode);

} // namespace liftlab::noncanonical
