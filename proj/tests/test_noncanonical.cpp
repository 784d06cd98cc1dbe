#include "liftlab/noncanonical.hpp"

#include "liftlab/oracle.hpp"
#include "liftlab/rng.hpp"

#include <doctest.h>

using namespace liftlab;
using arith::Residue;
using instance::DlogInstance;
using instance::SafePrimePair;
using lifts::CanonicalLift;
using noncanonical::LiftCase;

namespace {

SafePrimePair pair73() { return instance::validate_safe_prime(7, 3); }
SafePrimePair pair115() { return instance::validate_safe_prime(11, 5); }
SafePrimePair pair2311() { return instance::validate_safe_prime(23, 11); }

struct Fixture {
    SafePrimePair pair;
    Residue a0;
    CanonicalLift lift_a;

    explicit Fixture(const SafePrimePair& pr)
        : pair(pr),
          a0(instance::find_dual_primitive_root(pr)),
          lift_a(lifts::canonical_lift(pr, a0.value()))
    {
    }

    DlogInstance inst(const Int& n) const
    {
        return DlogInstance::from_exponent(pair, a0.value(), n);
    }

    CanonicalLift lift_b(const DlogInstance& inst) const
    {
        return lifts::canonical_lift(pair, inst.b0.value());
    }
};

} // namespace

TEST_CASE("construct_noncanonical produces the matching offset")
{
    const Fixture fx(pair73());
    const auto inst = fx.inst(2);  // a0 = 5, b0 = 4
    const auto lift_b = fx.lift_b(inst);

    const auto unit = noncanonical::construct_noncanonical(inst, fx.lift_a, lift_b, 1);
    CHECK(unit.l.value() == 10);  // 2*(4/5)*1 = 10 mod 21
    CHECK(unit.tag == LiftCase::FullOrder);
    // direct check: (5 + 11*21)^2 = 4 + 27*21 mod 441
    CHECK(arith::powmod(236, 2, 441).value() == mod_reduce(Int(4 + 27 * 21), Int(441)));

    const auto subgroup = noncanonical::construct_noncanonical(inst, fx.lift_a, lift_b, 7);
    CHECK(subgroup.l.value() == 7);  // 2*5*7 = 70 = 7 mod 21
    CHECK(subgroup.tag == LiftCase::SubgroupPreserving);
    CHECK(subgroup.k1().value() == 1);
    CHECK(subgroup.l1().value() == 1);

    const auto canonical = noncanonical::construct_noncanonical(inst, fx.lift_a, lift_b, 0);
    CHECK(canonical.l.value() == 0);
    CHECK(canonical.tag == LiftCase::Canonical);

    const auto no_n = DlogInstance::make(fx.pair, 5, 4);
    CHECK_THROWS_AS(noncanonical::construct_noncanonical(no_n, fx.lift_a, lift_b, 1),
                    MissingKnownN);
}

TEST_CASE("classify_offset")
{
    const auto pair = pair73();
    CHECK(noncanonical::classify_offset(pair, 7, 7) == LiftCase::SubgroupPreserving);
    CHECK(noncanonical::classify_offset(pair, 14, 7) == LiftCase::SubgroupPreserving);
    CHECK(noncanonical::classify_offset(pair, 1, 10) == LiftCase::FullOrder);
    CHECK(noncanonical::classify_offset(pair, 3, 9) == LiftCase::FullOrder);  // gcd = q
    CHECK(noncanonical::classify_offset(pair, 0, 0) == LiftCase::Canonical);
    CHECK_THROWS_AS(noncanonical::classify_offset(pair, 7, 1), InconsistentPair);

    // constructed lifts never trip the consistency guard
    const Fixture fx(pair115());
    for (Int n = 0; n < fx.pair.subgroup_order; ++n) {
        const auto inst = fx.inst(n);
        const auto lift_b = fx.lift_b(inst);
        for (Int k = 0; k < fx.pair.pq; ++k) {
            const auto lift = noncanonical::construct_noncanonical(inst, fx.lift_a, lift_b, k);
            const auto expected =
                k == 0 ? LiftCase::Canonical
                       : (mod_reduce(k, fx.pair.p) == 0 ? LiftCase::SubgroupPreserving
                                                        : LiftCase::FullOrder);
            CHECK(lift.tag == expected);
        }
    }
}

TEST_CASE("check_noncanonical_order matches the case tag")
{
    const Fixture fx(pair73());
    CHECK(fx.lift_a.lifted.value() == 215);
    CHECK(noncanonical::check_noncanonical_order(fx.pair, fx.lift_a, 7) == 6);   // 362
    CHECK(noncanonical::check_noncanonical_order(fx.pair, fx.lift_a, 1) == 42);  // 236
    CHECK(noncanonical::check_noncanonical_order(fx.pair, fx.lift_a, 0) == 6);

    // exhaustive over k: subgroup-preserving offsets keep q*phi(q), the rest
    // (units and multiples of q) grow to pq*phi(q)
    for (const auto& pair : {pair73(), pair115()}) {
        const Fixture f(pair);
        for (Int k = 0; k < pair.pq; ++k) {
            const Int order = noncanonical::check_noncanonical_order(pair, f.lift_a, k);
            const bool preserving = mod_reduce(k, pair.p) == 0;
            CHECK(order == (preserving ? pair.subgroup_order : pair.full_lift_order));
        }
    }
}

TEST_CASE("recover_mod_q")
{
    const auto pair = pair73();
    // (1/4)/(1/5) mod 3 = 1/2 = 2, matching n = 2
    CHECK(noncanonical::recover_mod_q(pair, 5, 4, 1, 1).value() == 2);
    CHECK(noncanonical::recover_mod_q(pair, 5, 4, 1, 0).value() == 0);
    CHECK_THROWS_AS(noncanonical::recover_mod_q(pair, 5, 4, 0, 1), NotInvertible);

    // round trip through construct/classify for every subgroup offset
    for (const auto& pr : {pair73(), pair115()}) {
        const Fixture fx(pr);
        for (Int n = 0; n < pr.subgroup_order; ++n) {
            const auto inst = fx.inst(n);
            const auto lift_b = fx.lift_b(inst);
            for (Int k1 = 1; k1 < pr.q; ++k1) {
                const auto lift = noncanonical::construct_noncanonical(inst, fx.lift_a, lift_b,
                                                                       k1 * pr.p);
                REQUIRE(lift.tag == LiftCase::SubgroupPreserving);
                const auto recovered = noncanonical::recover_mod_q(
                    pr, fx.a0.value(), inst.b0.value(), lift.k1().value(), lift.l1().value());
                CHECK(recovered.value() == mod_reduce(n, pr.q));
            }
        }
    }
}

TEST_CASE("recover_mod_pq")
{
    const auto pair = pair73();
    const auto unit = noncanonical::recover_mod_pq(pair, 5, 4, 1, 10);
    CHECK(unit.value() == 2);
    CHECK(unit.modulus() == 21);

    // gcd = p: information drops to mod q
    const auto shared_p = noncanonical::recover_mod_pq(pair, 5, 4, 7, 7);
    CHECK(shared_p.value() == 2);
    CHECK(shared_p.modulus() == 3);

    // gcd = q: solution lives mod p; l for n=2, k=3 is 2*(4/5)*3 = 9
    const auto shared_q = noncanonical::recover_mod_pq(pair, 5, 4, 3, 9);
    CHECK(shared_q.modulus() == 7);
    CHECK(shared_q.value() == 2);

    // l = k*b0/a0 means n = 1
    const Int l_for_one = mod_reduce(Int(4) * arith::invmod(5, 21).value(), Int(21));
    CHECK(noncanonical::recover_mod_pq(pair, 5, 4, 1, l_for_one).value() == 1);

    CHECK_THROWS_AS(noncanonical::recover_mod_pq(pair, 5, 4, 0, 1), ZeroOffset);
    CHECK_THROWS_AS(noncanonical::recover_mod_pq(pair, 5, 4, 21, 1), ZeroOffset);
    // 7 does not divide 5*5/4 mod 21
    CHECK_THROWS_AS(noncanonical::recover_mod_pq(pair, 5, 4, 7, 5), Unsolvable);
}

TEST_CASE("recovery round-trips across every offset class")
{
    for (const auto& pr : {pair73(), pair115()}) {
        const Fixture fx(pr);
        for (Int n = 0; n < pr.subgroup_order; ++n) {
            const auto inst = fx.inst(n);
            const auto lift_b = fx.lift_b(inst);
            for (Int k = 1; k < pr.pq; ++k) {
                const auto lift =
                    noncanonical::construct_noncanonical(inst, fx.lift_a, lift_b, k);
                const Int g = gcd(k, pr.pq);
                const auto recovered = noncanonical::recover_mod_pq(
                    pr, fx.a0.value(), inst.b0.value(), k, lift.l.value());
                CHECK(recovered.modulus() == pr.pq / g);
                CHECK(recovered.value() == mod_reduce(n, pr.pq / g));
            }
        }
    }
}

TEST_CASE("smart_recover agrees with the direct quotient")
{
    const Fixture fx(pair73());
    const auto inst = fx.inst(2);
    const auto lift_b = fx.lift_b(inst);

    const auto smart = noncanonical::smart_recover(fx.pair, fx.lift_a, lift_b, 1, 10);
    CHECK(smart.value() == 2);
    CHECK(smart.modulus() == 21);

    const auto subgroup = noncanonical::smart_recover(fx.pair, fx.lift_a, lift_b, 7, 7);
    CHECK(subgroup.value() == 2);
    CHECK(subgroup.modulus() == 3);

    CHECK_THROWS_AS(noncanonical::smart_recover(fx.pair, fx.lift_a, lift_b, 0, 0), ZeroOffset);

    // seeded agreement sweep across pairs and offset classes
    for (const auto& pr : {pair73(), pair115(), pair2311()}) {
        const Fixture f(pr);
        Rng rng(derive_seed(99, {low_u64(pr.q)}));
        for (int i = 0; i < 100; ++i) {
            const Int n = rng.below_int(pr.subgroup_order);
            Int k;
            if (i % 3 == 1) {
                k = (1 + rng.below_int(pr.q - 1)) * pr.p;  // gcd = p
            } else if (i % 3 == 2) {
                do {
                    k = (1 + rng.below_int(pr.p - 1)) * pr.q;  // gcd = q
                } while (mod_reduce(k, pr.p) == 0);
            } else {
                do {
                    k = 1 + rng.below_int(pr.pq - 1);
                } while (gcd(k, pr.pq) != 1);
            }
            const auto inst_i = f.inst(n);
            const auto lift_b_i = f.lift_b(inst_i);
            const auto lift =
                noncanonical::construct_noncanonical(inst_i, f.lift_a, lift_b_i, k);
            const auto direct = noncanonical::recover_mod_pq(pr, f.a0.value(),
                                                             inst_i.b0.value(), k,
                                                             lift.l.value());
            const auto smart_i =
                noncanonical::smart_recover(pr, f.lift_a, lift_b_i, k, lift.l.value());
            CHECK(smart_i == direct);
            CHECK(direct.value() == mod_reduce(n, direct.modulus()));
        }
    }
}

TEST_CASE("lift_to_p_minus_1")
{
    const auto pair = pair73();
    const auto lifted = noncanonical::lift_to_p_minus_1(pair, 5, 4, 2);
    CHECK(lifted.value() == 2);  // 5^2 = 4; the rival 5^5 = 3 fails
    CHECK(lifted.modulus() == 6);
    CHECK(noncanonical::lift_to_p_minus_1(pair, 5, 1, 0).value() == 0);

    // exhaustive (11,5), a0 = 2: exactly one candidate survives for every b0
    const auto pr = pair115();
    for (Int b0 = 1; b0 < pr.p; ++b0) {
        const auto answer = oracle::dlog_bruteforce(2, b0, pr.p, pr.p - 1);
        REQUIRE(answer.found);
        const auto n_p =
            noncanonical::lift_to_p_minus_1(pr, 2, b0, mod_reduce(answer.n, pr.q));
        CHECK(n_p.value() == answer.n);
    }

    CHECK_THROWS_AS(noncanonical::lift_to_p_minus_1(pair, 5, 4, 0), NoCandidate);
    // a perfect square in place of a primitive root sees both candidates
    CHECK_THROWS_AS(noncanonical::lift_to_p_minus_1(pair, 4, 4, 1), BothCandidates);
}

TEST_CASE("relaxed_recover on the powered instance")
{
    // a0 = 6 generates mod 11 but collapses to 1 mod 5; b0 = 36 = 6^2.
    const auto pr = pair115();
    const Int a0 = 6, n = 2, b0 = 36;
    const Int powered_a = arith::powmod(a0, pr.phi_q, pr.pq).value();
    const Int powered_b = arith::powmod(b0, pr.phi_q, pr.pq).value();
    CHECK(powered_a == 31);
    CHECK(powered_b == 26);
    CHECK(arith::powmod(powered_a, n, pr.pq).value() == powered_b);

    const auto inst = DlogInstance::make(pr, powered_a, powered_b, n, /*relaxed=*/true);
    const auto lift_a = lifts::canonical_lift(pr, powered_a);
    const auto lift_b = lifts::canonical_lift(pr, powered_b);

    // subgroup-preserving offset: recover n mod q via the collapsed quotient
    const auto sub = noncanonical::construct_noncanonical(inst, lift_a, lift_b, pr.p);
    REQUIRE(sub.tag == LiftCase::SubgroupPreserving);
    const auto mod_q = noncanonical::relaxed_recover(pr, a0, b0, sub.k1().value(),
                                                     sub.l1().value(),
                                                     noncanonical::RelaxedMode::ModQ);
    CHECK(mod_q.value() == 2);
    CHECK(mod_q.modulus() == 5);

    // unit offset: full recovery mod pq
    const auto unit = noncanonical::construct_noncanonical(inst, lift_a, lift_b, 3);
    const auto mod_pq = noncanonical::relaxed_recover(pr, a0, b0, unit.k.value(),
                                                      unit.l.value(),
                                                      noncanonical::RelaxedMode::ModPq);
    CHECK(mod_pq.value() == 2);
    CHECK(mod_pq.modulus() == 55);

    // equal offsets mean n = 1 mod q; db0 = 0 means n = 0 mod q
    CHECK(noncanonical::relaxed_recover(pr, a0, b0, 3, 3, noncanonical::RelaxedMode::ModQ)
              .value() == 1);
    CHECK(noncanonical::relaxed_recover(pr, a0, b0, 3, 0, noncanonical::RelaxedMode::ModQ)
              .value() == 0);
}

TEST_CASE("relaxed round trip over random mod-p lifts")
{
    for (const auto& pr : {pair73(), pair115(), pair2311()}) {
        Rng rng(derive_seed(7, {low_u64(pr.q)}));
        const auto p_minus_1_factors =
            arith::Factorization::from_known({{Int(2), 1}, {pr.q, 1}});
        for (int i = 0; i < 60; ++i) {
            Int a0;
            do {
                a0 = 2 + rng.below_int(pr.pq - 2);
            } while (gcd(a0, pr.pq) != 1 ||
                     !instance::is_primitive_root(a0, pr.p, p_minus_1_factors));
            const Int n = rng.below_int(pr.subgroup_order);
            const Int b0_mod_p = arith::powmod(a0, n, pr.p).value();
            Int b0;
            do {
                b0 = b0_mod_p + rng.below_int(pr.q) * pr.p;
            } while (gcd(b0, pr.q) != 1);

            const Int powered_a = arith::powmod(a0, pr.phi_q, pr.pq).value();
            const Int powered_b = arith::powmod(b0, pr.phi_q, pr.pq).value();
            const auto inst = DlogInstance::make(pr, powered_a, powered_b, n, true);
            const auto lift_a = lifts::canonical_lift(pr, powered_a);
            const auto lift_b = lifts::canonical_lift(pr, powered_b);

            const Int k = i % 2 == 0 ? 1 + rng.below_int(pr.pq - 1)
                                     : (1 + rng.below_int(pr.q - 1)) * pr.p;
            if (mod_reduce(k, pr.pq) == 0)
                continue;
            const auto lift = noncanonical::construct_noncanonical(inst, lift_a, lift_b, k);
            const Int g = gcd(lift.k.value(), pr.pq);

            const auto recovered = noncanonical::relaxed_recover(
                pr, a0, b0, lift.k.value(), lift.l.value(), noncanonical::RelaxedMode::ModPq);
            CHECK(recovered.modulus() == pr.pq / g);
            CHECK(recovered.value() == mod_reduce(n, pr.pq / g));

            if (lift.tag == LiftCase::SubgroupPreserving) {
                const auto mod_q = noncanonical::relaxed_recover(
                    pr, a0, b0, lift.k1().value(), lift.l1().value(),
                    noncanonical::RelaxedMode::ModQ);
                CHECK(mod_q.value() == mod_reduce(n, pr.q));
            }
        }
    }
}
