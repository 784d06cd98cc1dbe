#include "liftlab/oracle.hpp"

#include <map>

namespace liftlab::oracle {

namespace {

// Baby table wider than this refuses to run rather than thrash.
const Int kBsgsTableCap = Int(1) << 24;

void require_unit(const Int& g, const Int& m, const char* who)
{
    Int d;
    mpz_gcd(d.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    if (d != 1)
        throw Error(std::string(who) + ": base " + dec(g) + " is not a unit mod " + dec(m));
}

} // namespace

DlogAnswer dlog_bruteforce(const Int& g, const Int& h, const Int& m, const Int& order_bound,
                           const Int& scan_cap)
{
    require_unit(g, m, "dlog_bruteforce");
    if (order_bound > scan_cap)
        throw BoundExceeded("dlog_bruteforce: order bound " + dec(order_bound) +
                            " exceeds scan cap " + dec(scan_cap));

    const Int g_red = mod_reduce(g, m);
    const Int h_red = mod_reduce(h, m);
    Int acc = mod_reduce(1, m);
    for (Int n = 0; n < order_bound; ++n) {
        if (acc == h_red)
            return {true, n};
        acc = acc * g_red % m;
    }
    return {false, 0};
}

DlogAnswer dlog_bsgs(const Int& g, const Int& h, const Int& m, const Int& order)
{
    require_unit(g, m, "dlog_bsgs");

    // ceil(sqrt(order))
    Int steps;
    mpz_sqrt(steps.get_mpz_t(), order.get_mpz_t());
    if (steps * steps < order)
        ++steps;
    if (steps < 1)
        steps = 1;
    if (steps > kBsgsTableCap)
        throw BoundExceeded("dlog_bsgs: baby table of " + dec(steps) + " entries exceeds cap");

    const Int g_red = mod_reduce(g, m);
    const Int h_red = mod_reduce(h, m);

    std::map<Int, Int> baby;  // g^j -> smallest j
    Int acc = mod_reduce(1, m);
    for (Int j = 0; j < steps; ++j) {
        baby.emplace(acc, j);
        acc = acc * g_red % m;
    }

    // giant stride g^(-steps)
    Int inv_g;
    mpz_invert(inv_g.get_mpz_t(), g_red.get_mpz_t(), m.get_mpz_t());
    Int stride;
    mpz_powm(stride.get_mpz_t(), inv_g.get_mpz_t(), steps.get_mpz_t(), m.get_mpz_t());

    Int gamma = h_red;
    for (Int i = 0; i * steps <= order; ++i) {
        auto hit = baby.find(gamma);
        if (hit != baby.end()) {
            Int n = i * steps + hit->second;
            if (n < order)
                return {true, n};
        }
        gamma = gamma * stride % m;
    }
    return {false, 0};
}

std::vector<Int> subgroup_elements(const Int& g, const Int& m, const Int& order)
{
    require_unit(g, m, "subgroup_elements");
    if (order > 1000000)
        throw BoundExceeded("subgroup_elements: order " + dec(order) + " exceeds cap 10^6");

    const Int g_red = mod_reduce(g, m);
    std::vector<Int> elements;
    elements.reserve(static_cast<std::size_t>(order.get_ui()));
    Int acc = mod_reduce(1, m);
    for (Int i = 0; i < order; ++i) {
        elements.push_back(acc);
        acc = acc * g_red % m;
    }
    if (acc != mod_reduce(1, m))
        throw NotClosed("subgroup_elements: g^order != 1 mod m");
    return elements;
}

} // namespace liftlab::oracle
