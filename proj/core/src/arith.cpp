#include "liftlab/arith.hpp"

#include "liftlab/rng.hpp"

#include <algorithm>
#include <array>
#include <ostream>

namespace liftlab::arith {

namespace {

void require_modulus(const Int& m)
{
    if (m < 2)
        throw InvalidModulus("modulus must be >= 2, got " + dec(m));
}

// Largest n for which the 13-prime base set is a deterministic primality
// test: 3,317,044,064,679,887,385,961,981.
const Int kDeterministicMillerRabinBound("3317044064679887385961981");

constexpr std::array<unsigned long, 13> kMillerRabinBases = {2,  3,  5,  7,  11, 13, 17,
                                                             19, 23, 29, 31, 37, 41};

// One Miller-Rabin round; n odd, n > 3, n - 1 = d * 2^s.
bool miller_rabin_round(const Int& n, const Int& base, const Int& d, unsigned long s)
{
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

} // namespace

Residue::Residue(Int value, Int modulus) : value_(std::move(value)), modulus_(std::move(modulus))
{
    require_modulus(modulus_);
    value_ = mod_reduce(value_, modulus_);
}

void Residue::require_same_modulus(const Residue& rhs) const
{
    if (modulus_ != rhs.modulus_)
        throw ModulusMismatch("residue moduli differ: " + dec(modulus_) + " vs " +
                              dec(rhs.modulus_));
}

Residue Residue::operator+(const Residue& rhs) const
{
    require_same_modulus(rhs);
    return {value_ + rhs.value_, modulus_};
}

Residue Residue::operator-(const Residue& rhs) const
{
    require_same_modulus(rhs);
    return {value_ - rhs.value_, modulus_};
}

Residue Residue::operator*(const Residue& rhs) const
{
    require_same_modulus(rhs);
    return {value_ * rhs.value_, modulus_};
}

Residue Residue::operator-() const { return {-value_, modulus_}; }

Residue Residue::inverse() const { return invmod(value_, modulus_); }

std::ostream& operator<<(std::ostream& os, const Residue& r)
{
    return os << r.value() << " mod " << r.modulus();
}

Factorization Factorization::of(const Int& n) { return of(n, Int(1) << 64); }

Factorization Factorization::of(const Int& n, const Int& trial_division_bound)
{
    if (n < 1)
        throw Error("factorize: n must be positive, got " + dec(n));
    if (n >= trial_division_bound)
        throw TooLarge("factorize: " + dec(n) + " exceeds the trial-division bound " +
                       dec(trial_division_bound));

    Factorization out;
    Int rest = n;
    auto strip = [&](const Int& d) {
        unsigned e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
            rest /= d;
            ++e;
        }
        if (e > 0)
            out.factors_.push_back({d, e});
    };

    strip(2);
    Int d = 3;
    while (rest > 1 && d * d <= rest) {
        strip(d);
        if (rest > 1 && is_probable_prime(rest))
            break;
        d += 2;
    }
    if (rest > 1)
        out.factors_.push_back({rest, 1});
    return out;
}

Factorization Factorization::from_known(std::vector<PrimePower> factors)
{
    std::sort(factors.begin(), factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    Factorization out;
    out.factors_ = std::move(factors);
    return out;
}

Int Factorization::value() const
{
    Int n = 1;
    for (const auto& pp : factors_) {
        Int power;
        mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        n *= power;
    }
    return n;
}

Residue powmod(const Int& x, const Int& e, const Int& m)
{
    require_modulus(m);
    if (e < 0)
        throw Error("powmod: exponent must be nonnegative, got " + dec(e));
    Int r;
    mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return {r, m};
}

Residue invmod(const Int& x, const Int& m)
{
    require_modulus(m);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
        Int g = liftlab::gcd(mod_reduce(x, m), m);
        throw NotInvertible(g, "invmod: gcd(" + dec(x) + ", " + dec(m) + ") = " + dec(g));
    }
    return {inv, m};
}

Residue crt_pair(const Residue& r1, const Residue& r2)
{
    const Int& m1 = r1.modulus();
    const Int& m2 = r2.modulus();
    const Int g = liftlab::gcd(m1, m2);
    Int diff = r2.value() - r1.value();
    if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t()))
        throw IncompatibleCongruence("crt_pair: gcd " + dec(g) + " does not divide " +
                                     dec(r1.value()) + " - " + dec(r2.value()));

    // n = r1 + m1 * t with t = (r2 - r1)/g * inv(m1/g) mod m2/g.
    const Int m2g = m2 / g;
    const Int l = m1 / g * m2;
    if (m2g == 1)
        return {r1.value(), l};
    const Int t = mod_reduce(diff / g * invmod(m1 / g, m2g).value(), m2g);
    return {r1.value() + m1 * t, l};
}

int legendre_symbol(const Int& x, const Int& p)
{
    if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
        throw InvalidModulus("legendre_symbol: " + dec(p) + " is not an odd prime");
    const Int e = powmod(x, (p - 1) / 2, p).value();
    if (e == p - 1)
        return -1;
    if (e == 0)
        return 0;
    if (e == 1)
        return 1;
    throw Error("legendre_symbol: euler criterion returned " + dec(e) + " mod " + dec(p));
}

Int carmichael_lambda(const Int& n, const Factorization& f)
{
    if (n < 1)
        throw Error("carmichael_lambda: n must be positive");
    Int lam = 1;
    for (const auto& pp : f.prime_powers()) {
        Int part;
        Int power;
        mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        if (pp.prime == 2) {
            if (pp.exponent == 1)
                part = 1;
            else if (pp.exponent == 2)
                part = 2;
            else
                part = power / 4;  // 2^(r-2)
        } else {
            part = power - power / pp.prime;  // phi(p^r)
        }
        lam = liftlab::lcm(lam, part);
    }
    return lam;
}

Int carmichael_lambda(const Int& n) { return carmichael_lambda(n, Factorization::of(n)); }

Int euler_phi(const Int& n, const Factorization& f)
{
    if (n < 1)
        throw Error("euler_phi: n must be positive");
    Int phi = 1;
    for (const auto& pp : f.prime_powers()) {
        Int power;
        mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        phi *= power - power / pp.prime;
    }
    return phi;
}

Int euler_phi(const Int& n) { return euler_phi(n, Factorization::of(n)); }

Int multiplicative_order(const Int& x, const Int& m, const Int& group_exponent,
                         const Factorization& exponent_factors)
{
    require_modulus(m);
    const Int g = liftlab::gcd(mod_reduce(x, m), m);
    if (g != 1)
        throw NotInvertible(g, "multiplicative_order: base shares factor " + dec(g) +
                                   " with the modulus");
    if (powmod(x, group_exponent, m).value() != 1)
        throw ExponentInvalid("multiplicative_order: x^" + dec(group_exponent) +
                              " != 1 mod " + dec(m));

    Int order = group_exponent;
    for (const auto& pp : exponent_factors.prime_powers()) {
        for (unsigned i = 0; i < pp.exponent; ++i) {
            if (!mpz_divisible_p(order.get_mpz_t(), pp.prime.get_mpz_t()))
                break;
            Int candidate = order / pp.prime;
            if (powmod(x, candidate, m).value() == 1)
                order = candidate;
            else
                break;
        }
    }
    return order;
}

bool is_probable_prime(const Int& n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (mpz_even_p(n.get_mpz_t()))
        return false;

    unsigned long s = mpz_scan1(Int(n - 1).get_mpz_t(), 0);
    Int d = (n - 1) >> s;

    if (n < kDeterministicMillerRabinBound) {
        for (unsigned long b : kMillerRabinBases) {
            if (n == b)
                return true;
            if (!miller_rabin_round(n, b, d, s))
                return false;
        }
        return true;
    }

    // Reproducible above the deterministic range: bases drawn from a
    // generator keyed by n itself.
    Rng rng(0x6c6966746c6162ULL ^ low_u64(n));
    for (int round = 0; round < 64; ++round) {
        Int base = 2 + rng.below_int(n - 3);
        if (!miller_rabin_round(n, base, d, s))
            return false;
    }
    return true;
}

} // namespace liftlab::arith
