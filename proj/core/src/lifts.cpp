#include "liftlab/lifts.hpp"

namespace liftlab::lifts {

using arith::Factorization;

namespace {

Int require_unit(const Int& x, const Int& m, const char* who)
{
    const Int x_red = mod_reduce(x, m);
    const Int g = gcd(x_red, m);
    if (g != 1)
        throw NotCoprime(g, std::string(who) + ": " + dec(x) + " shares factor " + dec(g) +
                                " with " + dec(m));
    return x_red;
}

} // namespace

Residue fermat_quotient_lerch(const Int& x, const Int& n, const Factorization& f)
{
    const Int x_red = require_unit(x, n, "fermat_quotient_lerch");
    const Int phi = arith::euler_phi(n, f);
    const Int power = arith::powmod(x_red, phi, n * n).value();
    // x^phi(n) = 1 mod n, so the difference is an exact multiple of n.
    return {(power - 1) / n, n};
}

FermatQuotient fermat_quotient_pq(const SafePrimePair& pair, const Int& x)
{
    const Int x_red = require_unit(x, pair.pq, "fermat_quotient_pq");
    const Int power = arith::powmod(x, pair.full_lift_order, pair.p3q3).value();
    // The exponent is the unit-group exponent mod p^2q^2, so power = 1 there
    // and the quotient digit is exact.
    return {Residue(x, pair.p2q2), Residue((power - 1) / pair.p2q2, pair.pq)};
}

CanonicalLift canonical_lift(const SafePrimePair& pair, const Int& x0)
{
    const Int x0_red = require_unit(x0, pair.pq, "canonical_lift");
    const Residue quotient = fermat_quotient_pq(pair, x0_red).value;
    const Residue digit = Residue(-quotient.value() * x0_red, pair.pq) *
                          arith::invmod(pair.phi_q, pair.pq);
    return {Residue(x0_red, pair.pq), digit, Residue(x0_red + digit.value() * pair.pq, pair.p2q2)};
}

Carry carry(const SafePrimePair& pair, const Int& a0, const Int& n, const Int& b0)
{
    const Int power = arith::powmod(a0, n, pair.p2q2).value();
    const Int b0_red = mod_reduce(b0, pair.pq);
    if (mod_reduce(power, pair.pq) != b0_red)
        throw NotCongruent("carry: a0^n = " + dec(power) + " != b0 = " + dec(b0_red) +
                           " mod pq");
    return {n, Residue((power - b0_red) / pair.pq, pair.pq)};
}

bool verify_carry_relation(const SafePrimePair& pair, const Int& a0, const Int& b0, const Int& n,
                           const CanonicalLift& lift_a, const CanonicalLift& lift_b,
                           const Carry& beta)
{
    const Residue ratio = Residue(b0, pair.pq) * arith::invmod(a0, pair.pq);
    const Residue lhs = beta.beta + Residue(n, pair.pq) * ratio * lift_a.digit;
    return lhs == lift_b.digit;
}

bool verify_fermat_carry_relation(const SafePrimePair& pair, const Int& a0, const Int& b0,
                                  const Int& n, const Carry& beta)
{
    const Residue qa = fermat_quotient_pq(pair, a0).value;
    const Residue qb = fermat_quotient_pq(pair, b0).value;
    const Residue lhs = Residue(n, pair.pq) * qa;
    const Residue rhs =
        qb + beta.beta * arith::invmod(b0, pair.pq) * Residue(pair.phi_q, pair.pq);
    return lhs == rhs;
}

OrderReport check_canonical_orders(const SafePrimePair& pair, const CanonicalLift& lift)
{
    const Int order = arith::multiplicative_order(lift.lifted.value(), pair.p2q2,
                                                  pair.full_lift_order,
                                                  pair.full_lift_order_factors);
    if (order != pair.subgroup_order)
        throw OrderMismatch("canonical lift order " + dec(order) + " != q*phi(q) = " +
                            dec(pair.subgroup_order));
    const bool unit = arith::powmod(lift.lifted.value(), pair.subgroup_order, pair.p2q3)
                          .value() == 1;
    if (!unit)
        throw OrderMismatch("canonical lift^(q*phi(q)) != 1 mod p^2q^3");
    return {order, unit};
}

TeichmullerLift teichmuller_p2(const Int& p, const Int& x0)
{
    const Int x0_red = require_unit(x0, p, "teichmuller_p2");
    const Int lifted = arith::powmod(x0_red, p, p * p).value();
    return {Residue((lifted - x0_red) / p, p), Residue(lifted, p * p)};
}

Residue formula4_check(const Int& p, const Int& a0, const Int& b0, const Int& n_p)
{
    const Int a0_red = require_unit(a0, p, "formula4_check");
    const Int b0_red = mod_reduce(b0, p);

    const Int power = arith::powmod(a0_red, n_p, p * p).value();
    if (mod_reduce(power, p) != b0_red)
        throw NotCongruent("formula4_check: a0^n_p != b0 mod p");
    const Int beta = (power - b0_red) / p;

    const Residue a1 = teichmuller_p2(p, a0_red).digit;
    const Residue b1 = teichmuller_p2(p, b0_red).digit;
    if (a1.value() == 0)
        throw NotInvertible(p, "formula4_check: lift digit of a0 vanishes mod p; the "
                               "denominator a1/a0 is zero");

    const Residue numerator = (b1 - Residue(beta, p)) * arith::invmod(b0_red, p);
    const Residue denominator = a1 * arith::invmod(a0_red, p);
    return numerator * denominator.inverse();
}

} // namespace liftlab::lifts
