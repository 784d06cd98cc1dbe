#include "liftlab/checks.hpp"

#include "liftlab/lifts.hpp"
#include "liftlab/noncanonical.hpp"
#include "liftlab/oracle.hpp"
#include "liftlab/rng.hpp"
#include "liftlab/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace liftlab::checks {

using arith::Factorization;
using instance::DlogInstance;
using lifts::CanonicalLift;
using noncanonical::LiftCase;

namespace {

// Distinct per-suite salts so suites never share sample streams.
constexpr std::uint64_t kSaltRecovery = 1;
constexpr std::uint64_t kSaltSmart = 2;
constexpr std::uint64_t kSaltRelaxed = 3;
constexpr std::uint64_t kSaltOrders = 4;

std::size_t default_samples(const SafePrimePair& pair, const Options& opts)
{
    if (opts.samples > 0)
        return opts.samples;
    if (pair.subgroup_order < 200)
        return static_cast<std::size_t>(pair.subgroup_order.get_ui());
    return 200;
}

void add(VerificationReport& out, const std::string& name, std::string instance, bool pass,
         std::string details)
{
    out.checks.push_back({name, std::move(instance), pass, std::move(details)});
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Draws an offset k in [1, pq): even slots are units mod pq, odd slots are
// k1*p with k1 in [1, q), so both gcd classes appear.
Int draw_offset(Rng& rng, const SafePrimePair& pair, std::size_t slot)
{
    if (slot % 2 == 1)
        return (1 + rng.below_int(pair.q - 1)) * pair.p;
    Int k;
    do {
        k = 1 + rng.below_int(pair.pq - 1);
    } while (gcd(k, pair.pq) != 1);
    return k;
}

void check_lemma1(const SafePrimePair& pair, const Residue& a0, VerificationReport& out)
{
    const auto elements =
        oracle::subgroup_elements(a0.value(), pair.pq, pair.subgroup_order);
    const std::set<Int> members(elements.begin(), elements.end());

    for (Int b0 = 1; b0 < pair.pq; ++b0) {
        if (gcd(b0, pair.pq) != 1)
            continue;
        const bool extendable = instance::is_extendable(pair, b0);
        const bool member = members.count(b0) > 0;
        add(out, "lemma1", "b0=" + dec(b0), extendable == member,
            "extendable=" + bool_str(extendable) + " subgroup_member=" + bool_str(member));
    }
}

void check_lemma2(const SafePrimePair& pair, const Residue& a0, VerificationReport& out)
{
    const CanonicalLift lift_a = lifts::canonical_lift(pair, a0.value());
    for (Int n = 0; n < pair.subgroup_order; ++n) {
        const Int b0 = arith::powmod(a0.value(), n, pair.pq).value();
        const CanonicalLift lift_b = lifts::canonical_lift(pair, b0);
        const Residue powered = arith::powmod(lift_a.lifted.value(), n, pair.p2q2);
        add(out, "lemma2", "n=" + dec(n), powered == lift_b.lifted,
            "b0=" + dec(b0) + " lift_a^n=" + dec(powered.value()) +
                " lift_b=" + dec(lift_b.lifted.value()));
    }
}

void check_carry(const SafePrimePair& pair, const Residue& a0, VerificationReport& out)
{
    const CanonicalLift lift_a = lifts::canonical_lift(pair, a0.value());
    for (Int n = 0; n < pair.subgroup_order; ++n) {
        const Int b0 = arith::powmod(a0.value(), n, pair.pq).value();
        const CanonicalLift lift_b = lifts::canonical_lift(pair, b0);
        const lifts::Carry beta = lifts::carry(pair, a0.value(), n, b0);
        const bool pass =
            lifts::verify_carry_relation(pair, a0.value(), b0, n, lift_a, lift_b, beta);
        add(out, "carry", "n=" + dec(n), pass,
            "b0=" + dec(b0) + " beta=" + dec(beta.beta.value()));
    }
}

void check_fermat_carry(const SafePrimePair& pair, const Residue& a0, VerificationReport& out)
{
    for (Int n = 0; n < pair.subgroup_order; ++n) {
        const Int b0 = arith::powmod(a0.value(), n, pair.pq).value();
        const lifts::Carry beta = lifts::carry(pair, a0.value(), n, b0);
        const bool pass =
            lifts::verify_fermat_carry_relation(pair, a0.value(), b0, n, beta);
        add(out, "fermat-carry", "n=" + dec(n), pass,
            "b0=" + dec(b0) + " beta=" + dec(beta.beta.value()));
    }
}

void check_orders(const SafePrimePair& pair, const Residue& a0, const Options& opts,
                  VerificationReport& out)
{
    const CanonicalLift lift_a = lifts::canonical_lift(pair, a0.value());
    try {
        const auto report = lifts::check_canonical_orders(pair, lift_a);
        add(out, "orders", "lift_order", true,
            "ord(lift(a0)) mod p^2q^2 = " + dec(report.order_mod_p2q2) +
                " = q*phi(q) = " + dec(pair.subgroup_order));
        add(out, "orders", "lift_power_p2q3", report.unit_power_mod_p2q3,
            "lift(a0)^(q*phi(q)) = 1 mod p^2q^3");
    } catch (const Error& e) {
        add(out, "orders", "lift_order", false, e.what());
        add(out, "orders", "lift_power_p2q3", false, e.what());
    }

    const Factorization f_p2q2 = Factorization::from_known({{pair.p, 2}, {pair.q, 2}});
    const Int lambda = arith::carmichael_lambda(pair.p2q2, f_p2q2);
    const Int phi = arith::euler_phi(pair.p2q2, f_p2q2);
    add(out, "orders", "lambda_p2q2", lambda == pair.full_lift_order,
        "lambda(p^2q^2) = " + dec(lambda) + ", pq*phi(q) = " + dec(pair.full_lift_order));
    add(out, "orders", "phi_p2q2", phi == 2 * pair.p * pair.q * pair.q * pair.phi_q,
        "phi(p^2q^2) = " + dec(phi) + ", 2pq^2*phi(q) = " +
            dec(2 * pair.p * pair.q * pair.q * pair.phi_q));
    add(out, "orders", "lambda_divides_phi",
        mpz_divisible_p(phi.get_mpz_t(), lambda.get_mpz_t()) != 0,
        "phi/lambda = " + dec(phi / lambda));

    const Int a0_order = arith::multiplicative_order(a0.value(), pair.pq, pair.subgroup_order,
                                                     pair.subgroup_order_factors);
    add(out, "orders", "a0_order_mod_pq", a0_order == pair.subgroup_order,
        "ord(a0 mod pq) = " + dec(a0_order));

    // Carmichael's theorem, sampled across the moduli tower.
    Rng rng(derive_seed(opts.seed, {low_u64(pair.q), kSaltOrders}));
    const std::vector<std::tuple<const char*, Int, unsigned>> tower = {
        {"pq", pair.pq, 1}, {"p2q2", pair.p2q2, 2}, {"p3q3", pair.p3q3, 3}};
    for (const auto& [label, m, exponent] : tower) {
        const Int lam = arith::carmichael_lambda(
            m, Factorization::from_known({{pair.p, exponent}, {pair.q, exponent}}));
        for (int i = 0; i < 5; ++i) {
            Int x;
            do {
                x = 1 + rng.below_int(m - 1);
            } while (gcd(x, m) != 1);
            const bool pass = arith::powmod(x, lam, m).value() == 1;
            const std::string where(label);
            add(out, "orders", "carmichael_" + where + "_x" + dec(x), pass,
                "x^lambda(" + where + ") mod " + where + (pass ? " = 1" : " != 1"));
        }
    }
}

void check_formula4(const SafePrimePair& pair, VerificationReport& out)
{
    const Int& p = pair.p;
    const Factorization p_minus_1_factors =
        Factorization::from_known({{Int(2), 1}, {pair.q, 1}});

    for (Int a0 = 2; a0 < p; ++a0) {
        if (!instance::is_primitive_root(a0, p, p_minus_1_factors))
            continue;
        if (lifts::teichmuller_p2(p, a0).digit.value() == 0) {
            // The recovery denominator a1/a0 dies; recorded, not counted as
            // a failure.
            add(out, "formula4", "a0=" + dec(a0), true,
                "skipped: lift digit of a0 vanishes mod p");
            continue;
        }
        for (Int n_p = 0; n_p < p - 1; ++n_p) {
            const Int b0 = arith::powmod(a0, n_p, p).value();
            const Residue recovered = lifts::formula4_check(p, a0, b0, n_p);
            add(out, "formula4", "a0=" + dec(a0) + " n_p=" + dec(n_p),
                recovered.value() == mod_reduce(n_p, p),
                "recovered=" + dec(recovered.value()));
        }
    }
}

void check_recovery(const SafePrimePair& pair, const Residue& a0, const Options& opts,
                    VerificationReport& out)
{
    const CanonicalLift lift_a = lifts::canonical_lift(pair, a0.value());
    const std::size_t samples = default_samples(pair, opts);
    const bool exhaustive = opts.exhaustive && pair.q <= 50;
    const Int a0_mod_p = mod_reduce(a0.value(), pair.p);

    for (Int n = 0; n < pair.subgroup_order; ++n) {
        const DlogInstance inst = DlogInstance::from_exponent(pair, a0.value(), n);
        const Int& b0 = inst.b0.value();
        const CanonicalLift lift_b = lifts::canonical_lift(pair, b0);
        const Int b0_mod_p = mod_reduce(b0, pair.p);
        const Int oracle_n_p =
            oracle::dlog_bruteforce(a0_mod_p, b0_mod_p, pair.p, pair.p - 1).n;

        std::vector<Int> offsets;
        if (exhaustive) {
            for (Int k = 1; k < pair.pq; ++k)
                offsets.push_back(k);
        } else {
            Rng rng(derive_seed(opts.seed, {low_u64(pair.q), low_u64(n), kSaltRecovery}));
            for (std::size_t i = 0; i < samples; ++i)
                offsets.push_back(draw_offset(rng, pair, i));
        }

        std::size_t failures = 0;
        std::string first_failure;
        for (const Int& k : offsets) {
            bool ok = true;
            std::string why;
            try {
                const auto nc = noncanonical::construct_noncanonical(inst, lift_a, lift_b, k);
                const Int g = gcd(nc.k.value(), pair.pq);
                const Int reduced = pair.pq / g;

                const Residue rec =
                    noncanonical::recover_mod_pq(pair, a0.value(), b0, k, nc.l.value());
                ok = rec.modulus() == reduced && rec.value() == mod_reduce(n, reduced);
                if (!ok)
                    why = "recover_mod_pq=" + dec(rec.value()) + " mod " + dec(rec.modulus());

                if (ok && nc.tag == LiftCase::SubgroupPreserving) {
                    const Residue rec_q = noncanonical::recover_mod_q(
                        pair, a0.value(), b0, nc.k1().value(), nc.l1().value());
                    ok = rec_q.value() == mod_reduce(n, pair.q);
                    if (!ok)
                        why = "recover_mod_q=" + dec(rec_q.value());
                    if (ok) {
                        const Residue n_p = noncanonical::lift_to_p_minus_1(
                            pair, a0_mod_p, b0_mod_p, rec_q.value());
                        ok = n_p.value() == oracle_n_p;
                        if (!ok)
                            why = "lift_to_p_minus_1=" + dec(n_p.value()) +
                                  " oracle=" + dec(oracle_n_p);
                    }
                }
            } catch (const Error& e) {
                ok = false;
                why = e.what();
            }
            if (!ok) {
                ++failures;
                if (first_failure.empty())
                    first_failure = "k=" + dec(k) + ": " + why;
            }
        }
        add(out, "recovery", "n=" + dec(n), failures == 0,
            "offsets=" + std::to_string(offsets.size()) +
                " failures=" + std::to_string(failures) +
                (first_failure.empty() ? "" : " first: " + first_failure));
    }
}

void check_smart(const SafePrimePair& pair, const Residue& a0, const Options& opts,
                 VerificationReport& out)
{
    const CanonicalLift lift_a = lifts::canonical_lift(pair, a0.value());
    const std::size_t samples = default_samples(pair, opts);
    Rng rng(derive_seed(opts.seed, {low_u64(pair.q), kSaltSmart}));

    for (std::size_t i = 0; i < samples; ++i) {
        const Int n = rng.below_int(pair.subgroup_order);
        const Int k = draw_offset(rng, pair, i);
        const DlogInstance inst = DlogInstance::from_exponent(pair, a0.value(), n);
        const CanonicalLift lift_b = lifts::canonical_lift(pair, inst.b0.value());

        bool pass = false;
        std::string details;
        try {
            const auto nc = noncanonical::construct_noncanonical(inst, lift_a, lift_b, k);
            const Residue direct = noncanonical::recover_mod_pq(pair, a0.value(),
                                                                inst.b0.value(), k,
                                                                nc.l.value());
            const Residue smart =
                noncanonical::smart_recover(pair, lift_a, lift_b, k, nc.l.value());
            pass = smart == direct &&
                   direct.value() == mod_reduce(n, direct.modulus());
            details = "direct=" + dec(direct.value()) + " smart=" + dec(smart.value()) +
                      " mod " + dec(direct.modulus());
        } catch (const Error& e) {
            details = e.what();
        }
        add(out, "smart", "i=" + std::to_string(i) + " n=" + dec(n) + " k=" + dec(k), pass,
            details);
    }
}

void check_relaxed(const SafePrimePair& pair, const Options& opts, VerificationReport& out)
{
    const std::size_t samples = default_samples(pair, opts);
    Rng rng(derive_seed(opts.seed, {low_u64(pair.q), kSaltRelaxed}));
    const Factorization p_minus_1_factors =
        Factorization::from_known({{Int(2), 1}, {pair.q, 1}});

    for (std::size_t i = 0; i < samples; ++i) {
        // a0 need only generate mod p and be a unit mod q.
        Int a0;
        do {
            a0 = 2 + rng.below_int(pair.pq - 2);
        } while (gcd(a0, pair.pq) != 1 ||
                 !instance::is_primitive_root(a0, pair.p, p_minus_1_factors));
        const Int n = rng.below_int(pair.subgroup_order);
        // b0 is any mod-pq lift of a0^n mod p that stays a unit mod q.
        const Int b0_mod_p = arith::powmod(a0, n, pair.p).value();
        Int b0;
        do {
            b0 = b0_mod_p + rng.below_int(pair.q) * pair.p;
        } while (gcd(b0, pair.q) != 1);

        bool pass = false;
        std::string details;
        try {
            const Int powered_a = arith::powmod(a0, pair.phi_q, pair.pq).value();
            const Int powered_b = arith::powmod(b0, pair.phi_q, pair.pq).value();
            const DlogInstance inst =
                DlogInstance::make(pair, powered_a, powered_b, n, /*relaxed=*/true);
            const CanonicalLift lift_a = lifts::canonical_lift(pair, powered_a);
            const CanonicalLift lift_b = lifts::canonical_lift(pair, powered_b);
            const Int k = draw_offset(rng, pair, i);
            const auto nc = noncanonical::construct_noncanonical(inst, lift_a, lift_b, k);

            const Int g = gcd(nc.k.value(), pair.pq);
            const Residue rec = noncanonical::relaxed_recover(
                pair, a0, b0, k, nc.l.value(), noncanonical::RelaxedMode::ModPq);
            pass = rec.modulus() == pair.pq / g &&
                   rec.value() == mod_reduce(n, pair.pq / g);
            details = "mod_pq=" + dec(rec.value()) + " mod " + dec(rec.modulus());

            if (pass && nc.tag == LiftCase::SubgroupPreserving) {
                const Residue rec_q = noncanonical::relaxed_recover(
                    pair, a0, b0, nc.k1().value(), nc.l1().value(),
                    noncanonical::RelaxedMode::ModQ);
                pass = rec_q.value() == mod_reduce(n, pair.q);
                details += " mod_q=" + dec(rec_q.value());
            }
        } catch (const Error& e) {
            details = e.what();
        }
        add(out, "relaxed", "i=" + std::to_string(i) + " a0=" + dec(a0) + " n=" + dec(n),
            pass, details);
    }
}

} // namespace

std::size_t VerificationReport::failed() const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return !c.pass; }));
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"lemma1",   "lemma2", "carry",
                                                   "fermat-carry", "orders", "formula4",
                                                   "recovery", "smart",  "relaxed"};
    return names;
}

bool is_suite_name(const std::string& name)
{
    const auto& names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

void run_suite(const std::string& name, const SafePrimePair& pair, const Residue& a0,
               const Options& opts, VerificationReport& out)
{
    if (name == "lemma1")
        check_lemma1(pair, a0, out);
    else if (name == "lemma2")
        check_lemma2(pair, a0, out);
    else if (name == "carry")
        check_carry(pair, a0, out);
    else if (name == "fermat-carry")
        check_fermat_carry(pair, a0, out);
    else if (name == "orders")
        check_orders(pair, a0, opts, out);
    else if (name == "formula4")
        check_formula4(pair, out);
    else if (name == "recovery")
        check_recovery(pair, a0, opts, out);
    else if (name == "smart")
        check_smart(pair, a0, opts, out);
    else if (name == "relaxed")
        check_relaxed(pair, opts, out);
    else
        throw Error("unknown check suite: " + name);
}

VerificationReport run_suites(const SafePrimePair& pair, const std::optional<Int>& a0,
                              const std::vector<std::string>& names, const Options& opts)
{
    Residue base = a0 ? Residue(*a0, pair.pq) : instance::find_dual_primitive_root(pair);
    if (a0) {
        // A caller-supplied base must satisfy the dual primitive-root
        // hypothesis; DlogInstance::make performs exactly that validation.
        instance::DlogInstance::make(pair, base.value(), base.value());
    }

    bool all = names.empty();
    for (const auto& name : names)
        if (name == "all")
            all = true;

    VerificationReport report;
    report.p = pair.p;
    report.q = pair.q;
    report.a0 = base.value();
    report.seed = opts.seed;
    report.version = kVersion;

    for (const auto& name : suite_names()) {
        const bool wanted =
            all || std::find(names.begin(), names.end(), name) != names.end();
        if (wanted)
            run_suite(name, pair, base, opts, report);
    }
    return report;
}

std::string to_json(const VerificationReport& report)
{
    nlohmann::ordered_json j;
    j["p"] = dec(report.p);
    j["q"] = dec(report.q);
    j["a0"] = dec(report.a0);
    j["seed"] = report.seed;
    j["version"] = report.version;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& check : report.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = check.name;
        entry["instance"] = check.instance;
        entry["pass"] = check.pass;
        entry["details"] = check.details;
        j["checks"].push_back(std::move(entry));
    }
    j["summary"] = {{"total", report.total()},
                    {"passed", report.passed()},
                    {"failed", report.failed()}};
    return j.dump(2) + "\n";
}

std::string to_text(const VerificationReport& report)
{
    std::ostringstream os;
    os << "pair p=" << report.p << " q=" << report.q << " a0=" << report.a0
       << " seed=" << report.seed << " version=" << report.version << "\n";

    // Per-suite aggregate, failures spelled out.
    for (const auto& name : suite_names()) {
        std::size_t total = 0;
        std::size_t failed = 0;
        for (const auto& check : report.checks) {
            if (check.name != name)
                continue;
            ++total;
            if (!check.pass)
                ++failed;
        }
        if (total == 0)
            continue;
        os << "  " << (failed == 0 ? "PASS" : "FAIL") << " " << name << ": " << total
           << " instances, " << failed << " failures\n";
    }
    for (const auto& check : report.checks)
        if (!check.pass)
            os << "    FAIL " << check.name << " [" << check.instance << "] "
               << check.details << "\n";

    os << "summary: total=" << report.total() << " passed=" << report.passed()
       << " failed=" << report.failed() << "\n";
    return os.str();
}

} // namespace liftlab::checks
