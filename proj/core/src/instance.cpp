#include "liftlab/instance.hpp"

#include "liftlab/rng.hpp"

namespace liftlab::instance {

using arith::Factorization;
using arith::PrimePower;

namespace {

Factorization merged_with(const Factorization& base, std::vector<PrimePower> extra)
{
    for (const auto& pp : base.prime_powers())
        extra.push_back(pp);
    return Factorization::from_known(std::move(extra));
}

} // namespace

SafePrimePair validate_safe_prime(const Int& p, const Int& q)
{
    if (!arith::is_probable_prime(q))
        throw NotPrime(q, "validate_safe_prime: q = " + dec(q) + " is not prime");
    if (q == 2)
        throw QTooSmall("validate_safe_prime: q = 2 is rejected (quadratic characters mod 2 "
                        "degenerate)");
    if (p != 2 * q + 1)
        throw NotSafePrime("validate_safe_prime: p = " + dec(p) + " != 2q + 1 for q = " + dec(q));
    if (!arith::is_probable_prime(p))
        throw NotPrime(p, "validate_safe_prime: p = " + dec(p) + " is not prime");

    SafePrimePair pair;
    pair.q = q;
    pair.p = p;
    pair.pq = p * q;
    pair.p2q2 = pair.pq * pair.pq;
    pair.p2q3 = pair.p2q2 * q;
    pair.p3q3 = pair.p2q3 * p;
    pair.phi_q = q - 1;
    pair.subgroup_order = q * pair.phi_q;
    pair.full_lift_order = p * pair.subgroup_order;

    const Factorization phi_q_factors = Factorization::of(pair.phi_q);
    pair.subgroup_order_factors = merged_with(phi_q_factors, {{q, 1}});
    pair.full_lift_order_factors = merged_with(phi_q_factors, {{q, 1}, {p, 1}});
    return pair;
}

SafePrimePair find_safe_prime(unsigned bit_length, std::uint64_t seed, unsigned max_attempts)
{
    if (bit_length < 2)
        throw Error("find_safe_prime: bit_length must be >= 2");

    Rng rng(derive_seed(seed, {bit_length}));
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        // Odd candidate with the top bit set: exactly bit_length bits, >= 3.
        Int q = Int(1) << (bit_length - 1) | 1;
        if (bit_length > 2)
            q |= rng.bits(bit_length - 2) << 1;
        if (!arith::is_probable_prime(q))
            continue;
        const Int p = 2 * q + 1;
        if (!arith::is_probable_prime(p))
            continue;
        return validate_safe_prime(p, q);
    }
    throw ExhaustedAttempts("find_safe_prime: no safe prime of " + std::to_string(bit_length) +
                            " bits after " + std::to_string(max_attempts) + " attempts");
}

bool is_primitive_root(const Int& a, const Int& m, const Factorization& m_minus_1_factors)
{
    const Int a_red = mod_reduce(a, m);
    if (gcd(a_red, m) != 1)
        return false;
    const Int order = m - 1;
    for (const auto& pp : m_minus_1_factors.prime_powers()) {
        if (arith::powmod(a_red, order / pp.prime, m).value() == 1)
            return false;
    }
    return true;
}

Residue find_dual_primitive_root(const SafePrimePair& pair)
{
    const Factorization p_minus_1_factors =
        Factorization::from_known({{Int(2), 1}, {pair.q, 1}});
    const Factorization q_minus_1_factors = Factorization::of(pair.phi_q);
    for (Int a0 = 2;; ++a0) {
        if (gcd(a0, pair.pq) != 1)
            continue;
        if (is_primitive_root(a0, pair.p, p_minus_1_factors) &&
            is_primitive_root(a0, pair.q, q_minus_1_factors))
            return {a0, pair.pq};
    }
}

bool is_extendable(const SafePrimePair& pair, const Int& b0)
{
    const Int g = gcd(mod_reduce(b0, pair.pq), pair.pq);
    if (g != 1)
        throw NotCoprime(g, "is_extendable: b0 = " + dec(b0) + " shares factor " + dec(g) +
                                " with pq");
    return arith::legendre_symbol(b0, pair.p) == arith::legendre_symbol(b0, pair.q);
}

Residue extend_dlog(const SafePrimePair& pair, const Int& n_p, const Int& n_q)
{
    if (mod_reduce(n_p, 2) != mod_reduce(n_q, 2))
        throw ParityMismatch("extend_dlog: n_p = " + dec(n_p) + " and n_q = " + dec(n_q) +
                             " disagree mod 2");
    return arith::crt_pair({n_p, pair.p - 1}, {n_q, pair.q - 1});
}

ShiftNormalization normalize_shift(const SafePrimePair& pair, const Int& b0_mod_p)
{
    const Int b0 = mod_reduce(b0_mod_p, pair.p);
    if (gcd(b0, pair.p) != 1)
        throw NotCoprime(gcd(b0, pair.p),
                         "normalize_shift: b0 = " + dec(b0_mod_p) + " not coprime to p");

    const Int cap = 4 * pair.q;
    for (Int k = 0; k < cap; ++k) {
        const Int candidate = mod_reduce(b0 + k * pair.p, pair.pq);
        if (gcd(candidate, pair.q) != 1)
            continue;
        if (is_extendable(pair, candidate))
            return {Residue(candidate, pair.pq), k};
    }
    throw SearchCapExceeded("normalize_shift: no extendable shift of " + dec(b0) + " within " +
                            dec(cap) + " candidates");
}

MultiplyNormalization normalize_multiply(const SafePrimePair& pair, const Residue& a0,
                                         const Residue& b0)
{
    const Int a0_mod_p = mod_reduce(a0.value(), pair.p);
    const Int cap = 2 * pair.q;
    Int target = mod_reduce(b0.value(), pair.p);
    for (Int k = 0; k < cap; ++k) {
        // k = 0 tests b0 as given mod pq; afterwards the instance lives mod p
        // and each candidate is its canonical representative in [0, p).
        const Int candidate = k == 0 ? b0.value() : target;
        if (candidate != 0 && gcd(candidate, pair.pq) == 1 && is_extendable(pair, candidate))
            return {Residue(candidate, pair.pq), k};
        target = target * a0_mod_p % pair.p;
    }
    throw SearchCapExceeded("normalize_multiply: no extendable multiple of " + dec(b0.value()) +
                            " within " + dec(cap) + " steps");
}

Residue normalize_square(const SafePrimePair& pair, const Int& b0)
{
    const Int b0_red = mod_reduce(b0, pair.pq);
    const Int g = gcd(b0_red, pair.pq);
    if (g != 1)
        throw NotCoprime(g, "normalize_square: b0 = " + dec(b0) + " shares factor " + dec(g) +
                                " with pq");
    return {b0_red * b0_red, pair.pq};
}

Residue resolve_halving(const SafePrimePair& pair, const Residue& a0, const Int& b0_mod_p,
                        const Int& two_n)
{
    // 2n = two_n determines n mod q; the ambiguity mod p-1 = 2q is the pair
    // {n0, n0 + q}, whose powers differ by a0^q = -1 mod p.
    const Int n0 =
        mod_reduce(mod_reduce(two_n, pair.q) * arith::invmod(2, pair.q).value(), pair.q);
    const Int b0 = mod_reduce(b0_mod_p, pair.p);

    const Int n1 = n0 + pair.q;
    std::optional<Int> survivor;
    for (const Int& candidate : {n0, n1}) {
        if (arith::powmod(a0.value(), candidate, pair.p).value() == b0) {
            if (survivor)
                throw BothCandidates("resolve_halving: both candidates verify (a0 is not a "
                                     "primitive root of p)");
            survivor = candidate;
        }
    }
    if (!survivor)
        throw NoCandidate("resolve_halving: neither " + dec(n0) + " nor " + dec(n0 + pair.q) +
                          " reproduces b0 = " + dec(b0) + " mod p");
    return {*survivor, pair.p - 1};
}

DlogInstance DlogInstance::make(const SafePrimePair& pair, const Int& a0, const Int& b0,
                                std::optional<Int> known_n, bool relaxed)
{
    Residue a0_res(a0, pair.pq);
    Residue b0_res(b0, pair.pq);
    if (gcd(a0_res.value(), pair.pq) != 1)
        throw NotCoprime(gcd(a0_res.value(), pair.pq), "instance: a0 not coprime to pq");
    if (gcd(b0_res.value(), pair.pq) != 1)
        throw NotCoprime(gcd(b0_res.value(), pair.pq), "instance: b0 not coprime to pq");

    if (!relaxed) {
        const Factorization p_minus_1_factors =
            Factorization::from_known({{Int(2), 1}, {pair.q, 1}});
        const Factorization q_minus_1_factors = Factorization::of(pair.phi_q);
        if (!is_primitive_root(a0_res.value(), pair.p, p_minus_1_factors) ||
            !is_primitive_root(a0_res.value(), pair.q, q_minus_1_factors))
            throw Error("instance: a0 = " + dec(a0) +
                        " is not a primitive root of both p and q");
    }
    if (known_n) {
        if (*known_n < 0 || *known_n >= pair.subgroup_order)
            throw Error("instance: known_n = " + dec(*known_n) + " out of [0, q*phi(q))");
        if (arith::powmod(a0_res.value(), *known_n, pair.pq) != b0_res)
            throw NotCongruent("instance: a0^known_n != b0 mod pq");
    }

    DlogInstance inst{pair, std::move(a0_res), std::move(b0_res), std::move(known_n),
                      std::nullopt, std::nullopt, relaxed};
    if (inst.known_n) {
        inst.n_p = mod_reduce(*inst.known_n, pair.p - 1);
        inst.n_q = mod_reduce(*inst.known_n, pair.q - 1);
    }
    return inst;
}

DlogInstance DlogInstance::from_exponent(const SafePrimePair& pair, const Int& a0, const Int& n)
{
    const Int n_red = mod_reduce(n, pair.subgroup_order);
    const Int b0 = arith::powmod(a0, n_red, pair.pq).value();
    return make(pair, mod_reduce(a0, pair.pq), b0, n_red);
}

} // namespace liftlab::instance
