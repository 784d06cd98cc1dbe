#include "liftlab/arith.hpp"

#include "liftlab/rng.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace liftlab;
using arith::Factorization;
using arith::Residue;

namespace {

// Independent oracle: plain repeated multiplication.
Int naive_powmod(const Int& x, unsigned long e, const Int& m)
{
    Int r = mod_reduce(1, m);
    for (unsigned long i = 0; i < e; ++i)
        r = r * mod_reduce(x, m) % m;
    return r;
}

// Independent oracle: quadratic residues by squaring every residue.
std::set<Int> squares_mod(const Int& p)
{
    std::set<Int> s;
    for (Int x = 1; x < p; ++x)
        s.insert(x * x % p);
    return s;
}

// Independent oracle: group exponent as the lcm of all element orders.
Int naive_group_exponent(const Int& m)
{
    Int exponent = 1;
    for (Int x = 1; x < m; ++x) {
        if (gcd(x, m) != 1)
            continue;
        Int acc = x % m;
        Int order = 1;
        while (acc != 1) {
            acc = acc * x % m;
            ++order;
        }
        exponent = lcm(exponent, order);
    }
    return exponent;
}

} // namespace

TEST_CASE("Residue canonicalizes and guards its modulus")
{
    CHECK(Residue(25, 21).value() == 4);
    CHECK(Residue(-11, 21).value() == 10);
    CHECK(Residue(0, 2).value() == 0);
    CHECK_THROWS_AS(Residue(1, 1), InvalidModulus);
    CHECK_THROWS_AS(Residue(1, 0), InvalidModulus);

    const Residue a(5, 21), b(17, 21);
    CHECK((a * b).value() == 1);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 9);
    CHECK((-a).value() == 16);
    CHECK(a.inverse() == b);
    CHECK_THROWS_AS(a + Residue(1, 22), ModulusMismatch);
}

TEST_CASE("powmod matches the naive multiplication chain")
{
    CHECK(arith::powmod(5, 6, 21).value() == 1);     // chain 5,4,20,16,17,1
    CHECK(arith::powmod(7, 0, 13).value() == 1);     // empty product
    CHECK(arith::powmod(5, 42, 9261).value() == 7498);
    CHECK(naive_powmod(5, 42, 9261) == 7498);

    for (const Int m : {Int(21), Int(441), Int(9261)})
        for (const Int x : {Int(2), Int(5), Int(11), Int(-4)})
            for (unsigned long e = 0; e <= 40; ++e)
                CHECK(arith::powmod(x, e, m).value() == naive_powmod(x, e, m));

    CHECK_THROWS_AS(arith::powmod(5, -1, 21), Error);
    CHECK_THROWS_AS(arith::powmod(5, 6, 1), InvalidModulus);
}

TEST_CASE("invmod")
{
    CHECK(arith::invmod(5, 21).value() == 17);  // 5*17 = 85 = 4*21 + 1
    CHECK((Int(5) * 17) % 21 == 1);
    CHECK(arith::invmod(1, 97).value() == 1);

    try {
        arith::invmod(6, 21);
        FAIL("expected NotInvertible");
    } catch (const NotInvertible& e) {
        CHECK(e.gcd == 3);
    }

    // inverse really inverts, whenever it exists
    for (Int x = 1; x < 100; ++x) {
        if (gcd(x, 100) != 1)
            continue;
        CHECK(arith::invmod(x, 100).value() * x % 100 == 1);
    }
}

TEST_CASE("crt_pair")
{
    const Residue r = arith::crt_pair(Residue(2, 6), Residue(0, 2));
    CHECK(r.value() == 2);
    CHECK(r.modulus() == 6);

    CHECK(arith::crt_pair(Residue(4, 9), Residue(4, 9)) == Residue(4, 9));
    CHECK_THROWS_AS(arith::crt_pair(Residue(1, 6), Residue(0, 2)), IncompatibleCongruence);

    // output reduces correctly mod both inputs
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Int m1 = 2 + rng.below(60);
        const Int m2 = 2 + rng.below(60);
        const Int r1 = rng.below_int(m1);
        const Int r2 = rng.below_int(m2);
        if (mod_reduce(r1 - r2, gcd(m1, m2)) != 0) {
            CHECK_THROWS_AS(arith::crt_pair(Residue(r1, m1), Residue(r2, m2)),
                            IncompatibleCongruence);
            continue;
        }
        const Residue n = arith::crt_pair(Residue(r1, m1), Residue(r2, m2));
        CHECK(n.modulus() == lcm(m1, m2));
        CHECK(mod_reduce(n.value(), m1) == r1);
        CHECK(mod_reduce(n.value(), m2) == r2);
    }
}

TEST_CASE("legendre_symbol agrees with square tables")
{
    CHECK(arith::legendre_symbol(2, 7) == 1);   // squares mod 7: {1,2,4}
    CHECK(arith::legendre_symbol(2, 3) == -1);  // squares mod 3: {1}
    CHECK(arith::legendre_symbol(1, 101) == 1);
    CHECK(arith::legendre_symbol(14, 7) == 0);

    for (const Int p : {Int(3), Int(5), Int(7), Int(11), Int(13), Int(23)}) {
        const auto squares = squares_mod(p);
        for (Int x = 0; x < p; ++x) {
            const int expected = x == 0 ? 0 : (squares.count(x) ? 1 : -1);
            CHECK(arith::legendre_symbol(x, p) == expected);
        }
    }

    // multiplicativity
    const Int p = 23;
    for (Int x = 1; x < p; ++x)
        for (Int y = 1; y < p; ++y)
            CHECK(arith::legendre_symbol(x * y, p) ==
                  arith::legendre_symbol(x, p) * arith::legendre_symbol(y, p));

    CHECK_THROWS_AS(arith::legendre_symbol(2, 9), InvalidModulus);
    CHECK_THROWS_AS(arith::legendre_symbol(2, 2), InvalidModulus);
}

TEST_CASE("carmichael_lambda follows the three-case definition")
{
    CHECK(arith::carmichael_lambda(8) == 2);  // 2^(r-2) branch
    CHECK(arith::carmichael_lambda(2) == 1);
    CHECK(arith::carmichael_lambda(4) == 2);
    CHECK(arith::carmichael_lambda(441) == 42);  // lcm(lambda(9)=6, lambda(49)=42)
    CHECK(arith::carmichael_lambda(23) == 22);
    CHECK(arith::carmichael_lambda(1) == 1);

    // lambda(n) is the exponent of the unit group: brute-force lcm of orders
    for (Int n = 2; n <= 128; ++n)
        CHECK(arith::carmichael_lambda(n) == naive_group_exponent(n));

    // Carmichael's theorem across the (7,3) moduli tower, exhaustively
    for (const Int m : {Int(21), Int(441), Int(9261)}) {
        const Int lam = arith::carmichael_lambda(m);
        for (Int x = 1; x < m; ++x) {
            if (gcd(x, m) != 1)
                continue;
            CHECK(arith::powmod(x, lam, m).value() == 1);
        }
    }
}

TEST_CASE("euler_phi")
{
    CHECK(arith::euler_phi(441) == 252);  // 2pq^2*phi(q) for p=7, q=3
    CHECK(arith::euler_phi(1) == 1);
    CHECK(arith::euler_phi(23) == 22);

    // brute-force coprime count
    for (Int n = 1; n <= 200; ++n) {
        Int count = 0;
        for (Int x = 1; x <= n; ++x)
            if (gcd(x, n) == 1)
                ++count;
        CHECK(arith::euler_phi(n) == count);
    }
}

TEST_CASE("safe-prime lambda and phi identities")
{
    // lambda(p^2q^2) = pq*phi(q), phi(p^2q^2) = 2pq^2*phi(q), lambda | phi
    const std::pair<int, int> pairs[] = {{7, 3}, {11, 5}, {23, 11}, {47, 23}};
    for (const auto& [p, q] : pairs) {
        const Int p2q2 = Int(p) * p * q * q;
        const Int lam = arith::carmichael_lambda(p2q2);
        const Int phi = arith::euler_phi(p2q2);
        CHECK(lam == Int(p) * q * (q - 1));
        CHECK(phi == 2 * Int(p) * q * q * (q - 1));
        CHECK(phi % lam == 0);
    }
}

TEST_CASE("multiplicative_order")
{
    const auto f6 = Factorization::of(6);
    CHECK(arith::multiplicative_order(5, 21, 6, f6) == 6);  // power table of 5 mod 21
    CHECK(arith::multiplicative_order(1, 21, 6, f6) == 1);
    CHECK(arith::multiplicative_order(2, 55, 20, Factorization::of(20)) == 20);

    CHECK_THROWS_AS(arith::multiplicative_order(6, 21, 6, f6), NotInvertible);
    CHECK_THROWS_AS(arith::multiplicative_order(5, 21, 4, Factorization::of(4)),
                    ExponentInvalid);

    // order divides the group exponent; result is genuinely the least
    for (const Int m : {Int(21), Int(55)}) {
        const Int lam = arith::carmichael_lambda(m);
        const auto f = Factorization::of(lam);
        for (Int x = 2; x < m; ++x) {
            if (gcd(x, m) != 1)
                continue;
            const Int d = arith::multiplicative_order(x, m, lam, f);
            CHECK(lam % d == 0);
            CHECK(arith::powmod(x, d, m).value() == 1);
            Int acc = x % m;
            Int naive = 1;
            while (acc != 1) {
                acc = acc * x % m;
                ++naive;
            }
            CHECK(d == naive);
        }
    }
}

TEST_CASE("factorize")
{
    const auto f42 = Factorization::of(42);
    REQUIRE(f42.prime_powers().size() == 3);
    CHECK(f42.prime_powers()[0] == arith::PrimePower{2, 1});
    CHECK(f42.prime_powers()[1] == arith::PrimePower{3, 1});
    CHECK(f42.prime_powers()[2] == arith::PrimePower{7, 1});

    CHECK(Factorization::of(1).prime_powers().empty());

    const auto f441 = Factorization::of(441);
    REQUIRE(f441.prime_powers().size() == 2);
    CHECK(f441.prime_powers()[0] == arith::PrimePower{3, 2});
    CHECK(f441.prime_powers()[1] == arith::PrimePower{7, 2});

    for (Int n = 1; n <= 2000; ++n) {
        const auto f = Factorization::of(n);
        CHECK(f.value() == n);
        for (const auto& pp : f.prime_powers())
            CHECK(arith::is_probable_prime(pp.prime));
        for (std::size_t i = 1; i < f.prime_powers().size(); ++i)
            CHECK(f.prime_powers()[i - 1].prime < f.prime_powers()[i].prime);
    }

    CHECK_THROWS_AS(Factorization::of(Int(1) << 64), TooLarge);
    CHECK_NOTHROW(Factorization::of((Int(1) << 64) + 1, (Int(1) << 64) + 2));
}

TEST_CASE("is_probable_prime")
{
    CHECK(arith::is_probable_prime(23));
    CHECK_FALSE(arith::is_probable_prime(1));
    CHECK_FALSE(arith::is_probable_prime(0));
    CHECK_FALSE(arith::is_probable_prime(341));  // 11 * 31, base-2 pseudoprime
    CHECK(arith::is_probable_prime(2));

    // cross-check against trial division
    for (Int n = 0; n <= 5000; ++n) {
        bool prime = n >= 2;
        for (Int d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                prime = false;
                break;
            }
        CHECK(arith::is_probable_prime(n) == prime);
    }

    // above the deterministic bound: the seeded path
    const Int mersenne89 = (Int(1) << 89) - 1;  // prime
    CHECK(arith::is_probable_prime(mersenne89));
    Int composite;
    mpz_ui_pow_ui(composite.get_mpz_t(), 3, 60);  // 3^60, odd composite > 3.3e24
    CHECK_FALSE(arith::is_probable_prime(composite));
}
