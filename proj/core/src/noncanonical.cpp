#include "liftlab/noncanonical.hpp"

namespace liftlab::noncanonical {

const char* to_string(LiftCase c)
{
    switch (c) {
    case LiftCase::Canonical: return "canonical";
    case LiftCase::SubgroupPreserving: return "subgroup-preserving";
    case LiftCase::FullOrder: return "full-order";
    }
    return "?";
}

Residue NonCanonicalLift::k1() const
{
    if (!mpz_divisible_p(k.value().get_mpz_t(), pair.p.get_mpz_t()))
        throw Error("k1: offset k = " + dec(k.value()) + " is not a multiple of p");
    return {k.value() / pair.p, pair.q};
}

Residue NonCanonicalLift::l1() const
{
    if (!mpz_divisible_p(l.value().get_mpz_t(), pair.p.get_mpz_t()))
        throw Error("l1: offset l = " + dec(l.value()) + " is not a multiple of p");
    return {l.value() / pair.p, pair.q};
}

NonCanonicalLift construct_noncanonical(const DlogInstance& inst, const CanonicalLift& lift_a,
                                        const CanonicalLift& lift_b, const Int& k)
{
    if (!inst.known_n)
        throw MissingKnownN(
            "construct_noncanonical: known_n required; producing a matching offset pair "
            "without the index is equivalent to solving the discrete log");

    const SafePrimePair& pair = inst.pair;
    const Int& n = *inst.known_n;
    const Residue k_res(k, pair.pq);
    const Residue ratio = inst.b0 * arith::invmod(inst.a0.value(), pair.pq);
    const Residue l = Residue(n, pair.pq) * ratio * k_res;

    // The defining congruence must hold exactly; anything else is a bug.
    const Int lifted_base =
        mod_reduce(inst.a0.value() + (lift_a.digit.value() + k_res.value()) * pair.pq,
                   pair.p2q2);
    const Int lhs = arith::powmod(lifted_base, n, pair.p2q2).value();
    const Int rhs =
        mod_reduce(inst.b0.value() + (lift_b.digit.value() + l.value()) * pair.pq, pair.p2q2);
    if (lhs != rhs)
        throw Error("construct_noncanonical: lifted congruence failed: " + dec(lhs) +
                    " != " + dec(rhs) + " mod p^2q^2");

    return {pair, k_res, l, classify_offset(pair, k_res.value(), l.value())};
}

LiftCase classify_offset(const SafePrimePair& pair, const Int& k, const Int& l)
{
    const Int k_red = mod_reduce(k, pair.pq);
    const Int l_red = mod_reduce(l, pair.pq);

    if (mpz_divisible_p(k_red.get_mpz_t(), pair.p.get_mpz_t())) {
        if (!mpz_divisible_p(l_red.get_mpz_t(), pair.p.get_mpz_t()))
            throw InconsistentPair("classify_offset: p | k = " + dec(k_red) + " but p does not "
                                   "divide l = " + dec(l_red));
        if (k_red == 0)
            return LiftCase::Canonical;
        return LiftCase::SubgroupPreserving;  // k1 = k/p in (0, q)
    }
    return LiftCase::FullOrder;
}

Int check_noncanonical_order(const SafePrimePair& pair, const CanonicalLift& lift_a,
                             const Int& k)
{
    const Int element = mod_reduce(lift_a.lifted.value() + mod_reduce(k, pair.pq) * pair.pq,
                                   pair.p2q2);
    return arith::multiplicative_order(element, pair.p2q2, pair.full_lift_order,
                                       pair.full_lift_order_factors);
}

Residue recover_mod_q(const SafePrimePair& pair, const Int& a0, const Int& b0, const Int& k1,
                      const Int& l1)
{
    const Int k1_red = mod_reduce(k1, pair.q);
    if (k1_red == 0)
        throw NotInvertible(pair.q, "recover_mod_q: k1 = 0 mod q");
    const Residue numerator = Residue(l1, pair.q) * arith::invmod(b0, pair.q);
    const Residue denominator = Residue(k1_red, pair.q) * arith::invmod(a0, pair.q);
    return numerator * denominator.inverse();
}

Residue recover_mod_pq(const SafePrimePair& pair, const Int& a0, const Int& b0, const Int& k,
                       const Int& l)
{
    const Int k_red = mod_reduce(k, pair.pq);
    if (k_red == 0)
        throw ZeroOffset("recover_mod_pq: k = 0 mod pq labels the canonical lift");

    // l/b0 = n * k/a0 mod pq, i.e. n*k = l*a0/b0 mod pq.
    const Int rhs =
        mod_reduce(mod_reduce(l, pair.pq) * a0 * arith::invmod(b0, pair.pq).value(), pair.pq);
    const Int g = gcd(k_red, pair.pq);
    if (g == 1)
        return Residue(rhs, pair.pq) * arith::invmod(k_red, pair.pq);

    if (!mpz_divisible_p(rhs.get_mpz_t(), g.get_mpz_t()))
        throw Unsolvable("recover_mod_pq: gcd(k, pq) = " + dec(g) +
                         " does not divide l*a0/b0 = " + dec(rhs));
    const Int reduced_modulus = pair.pq / g;
    return Residue(rhs / g, reduced_modulus) * arith::invmod(k_red / g, reduced_modulus);
}

Residue smart_recover(const SafePrimePair& pair, const CanonicalLift& lift_a,
                      const CanonicalLift& lift_b, const Int& k, const Int& l)
{
    const Int k_red = mod_reduce(k, pair.pq);
    if (k_red == 0)
        throw ZeroOffset("smart_recover: k = 0 mod pq labels the canonical lift");

    // Raising the lifted congruence to the unit-group exponent pq*phi(q)
    // turns both sides into 1 + c*p^2q^2 mod p^3q^3; the digits c are the
    // composite Fermat quotients of the lifted elements and n shows up
    // linearly between them.
    const Int lifted_a = mod_reduce(lift_a.lifted.value() + k_red * pair.pq, pair.p2q2);
    const Int lifted_b =
        mod_reduce(lift_b.lifted.value() + mod_reduce(l, pair.pq) * pair.pq, pair.p2q2);
    const Int ca = lifts::fermat_quotient_pq(pair, lifted_a).value.value();
    const Int cb = lifts::fermat_quotient_pq(pair, lifted_b).value.value();

    const Int g = gcd(k_red, pair.pq);
    if (gcd(ca, pair.pq) != g)
        throw DegenerateCoefficient("smart_recover: coefficient " + dec(ca) +
                                    " is not invertible at modulus pq/" + dec(g));
    if (!mpz_divisible_p(cb.get_mpz_t(), g.get_mpz_t()))
        throw Unsolvable("smart_recover: gcd " + dec(g) + " does not divide " + dec(cb));

    const Int reduced_modulus = pair.pq / g;
    return Residue(cb / g, reduced_modulus) * arith::invmod(ca / g, reduced_modulus);
}

Residue lift_to_p_minus_1(const SafePrimePair& pair, const Int& a0_mod_p, const Int& b0_mod_p,
                          const Int& n_mod_q)
{
    const Int b0 = mod_reduce(b0_mod_p, pair.p);
    const Int n_red = mod_reduce(n_mod_q, pair.q);
    const Int n_alt = n_red + pair.q;

    std::optional<Int> survivor;
    for (const Int& candidate : {n_red, n_alt}) {
        if (arith::powmod(a0_mod_p, candidate, pair.p).value() == b0) {
            if (survivor)
                throw BothCandidates("lift_to_p_minus_1: both candidates verify; a0 is not a "
                                     "primitive root of p");
            survivor = candidate;
        }
    }
    if (!survivor)
        throw NoCandidate("lift_to_p_minus_1: neither " + dec(n_red) + " nor " +
                          dec(n_red + pair.q) + " reproduces b0 mod p");
    return {*survivor, pair.p - 1};
}

Residue relaxed_recover(const SafePrimePair& pair, const Int& a0, const Int& b0, const Int& da0,
                        const Int& db0, RelaxedMode mode)
{
    // The powered instance A0 = a0^phi(q), B0 = b0^phi(q) satisfies
    // A0^n = B0 mod pq whenever a0^n = b0 mod p, and A0 = B0 = 1 mod q.
    const Int powered_a = arith::powmod(a0, pair.phi_q, pair.pq).value();
    const Int powered_b = arith::powmod(b0, pair.phi_q, pair.pq).value();
    if (mode == RelaxedMode::ModQ)
        return recover_mod_q(pair, powered_a, powered_b, da0, db0);
    return recover_mod_pq(pair, powered_a, powered_b, da0, db0);
}

} // namespace liftlab::noncanonical
