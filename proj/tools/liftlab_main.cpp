// liftlab: generate safe-prime pairs, verify the lifting identities on them,
// sweep whole ranges, and walk through a single instance step by step.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 invalid input, 64 usage.

#include "liftlab/checks.hpp"
#include "liftlab/lifts.hpp"
#include "liftlab/noncanonical.hpp"
#include "liftlab/oracle.hpp"
#include "liftlab/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

namespace {

using liftlab::Int;
using liftlab::dec;
using liftlab::checks::Options;
using liftlab::checks::VerificationReport;
using liftlab::instance::SafePrimePair;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& text, const char* what)
{
    try {
        return Int(text, 10);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + ": not a decimal integer: " + text);
    }
}

void write_output(const std::string& payload, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + out_path);
    out << payload;
}

// ---- gen ----

int cmd_gen(unsigned bits, std::uint64_t seed, const std::string& format)
{
    SafePrimePair pair;
    try {
        pair = liftlab::instance::find_safe_prime(bits, seed);
    } catch (const liftlab::ExhaustedAttempts& e) {
        std::cerr << "liftlab gen: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    if (format == "json") {
        ordered_json j;
        j["p"] = dec(pair.p);
        j["q"] = dec(pair.q);
        j["bits"] = bits;
        j["seed"] = seed;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "p=" << pair.p << " q=" << pair.q << "\n";
    }
    return kExitOk;
}

// ---- verify ----

int cmd_verify(const Int& p, const Int& q, const std::optional<Int>& a0,
               const std::string& check, const Options& opts, const std::string& format,
               const std::string& out_path)
{
    SafePrimePair pair;
    try {
        pair = liftlab::instance::validate_safe_prime(p, q);
    } catch (const liftlab::Error& e) {
        std::cerr << "liftlab verify: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    VerificationReport report;
    try {
        report = liftlab::checks::run_suites(pair, a0, {check}, opts);
    } catch (const liftlab::Error& e) {
        std::cerr << "liftlab verify: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    write_output(format == "text" ? liftlab::checks::to_text(report)
                                  : liftlab::checks::to_json(report),
                 out_path);
    return report.failed() == 0 ? kExitOk : kExitCheckFailure;
}

// ---- sweep ----

struct SweepRow {
    Int p;
    Int q;
    std::string check;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::uint64_t millis = 0;
};

struct SweepPairResult {
    SafePrimePair pair;
    VerificationReport report;
    std::vector<SweepRow> rows;
};

std::vector<SafePrimePair> safe_prime_pairs_up_to(const Int& q_max)
{
    std::vector<SafePrimePair> pairs;
    for (Int q = 3; q <= q_max; ++q) {
        if (!liftlab::arith::is_probable_prime(q) ||
            !liftlab::arith::is_probable_prime(2 * q + 1))
            continue;
        pairs.push_back(liftlab::instance::validate_safe_prime(2 * q + 1, q));
    }
    return pairs;
}

SweepPairResult sweep_one_pair(const SafePrimePair& pair,
                               const std::vector<std::string>& suites, const Options& opts,
                               bool timings)
{
    SweepPairResult result;
    result.pair = pair;
    result.report.p = pair.p;
    result.report.q = pair.q;
    result.report.seed = opts.seed;
    result.report.version = liftlab::kVersion;

    const auto a0 = liftlab::instance::find_dual_primitive_root(pair);
    result.report.a0 = a0.value();

    for (const auto& suite : suites) {
        const std::size_t before = result.report.checks.size();
        const auto start = std::chrono::steady_clock::now();
        liftlab::checks::run_suite(suite, pair, a0, opts, result.report);
        const auto elapsed = std::chrono::steady_clock::now() - start;

        SweepRow row;
        row.p = pair.p;
        row.q = pair.q;
        row.check = suite;
        row.instances = result.report.checks.size() - before;
        for (std::size_t i = before; i < result.report.checks.size(); ++i)
            if (!result.report.checks[i].pass)
                ++row.failures;
        // Wall time is not reproducible; reports stay byte-stable unless
        // timings are requested explicitly.
        row.millis = timings ? static_cast<std::uint64_t>(
                                   std::chrono::duration_cast<std::chrono::milliseconds>(
                                       elapsed)
                                       .count())
                             : 0;
        result.rows.push_back(std::move(row));
    }
    return result;
}

int cmd_sweep(const Int& q_max, std::vector<std::string> suites, const Options& opts,
              unsigned jobs, const std::string& out_dir, bool timings)
{
    namespace fs = std::filesystem;

    if (suites.empty())
        suites = {"all"};
    bool all = false;
    for (const auto& s : suites)
        if (s == "all")
            all = true;
    std::vector<std::string> ordered;
    for (const auto& name : liftlab::checks::suite_names())
        if (all || std::find(suites.begin(), suites.end(), name) != suites.end())
            ordered.push_back(name);

    const auto pairs = safe_prime_pairs_up_to(q_max);
    std::vector<SweepPairResult> results(pairs.size());

    if (jobs < 1)
        jobs = 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pairs.size())
                return;
            results[i] = sweep_one_pair(pairs[i], ordered, opts, timings);
        }
    };
    if (jobs == 1 || pairs.size() <= 1) {
        worker();
    } else {
        std::vector<std::future<void>> futures;
        for (unsigned j = 0; j < std::min<std::size_t>(jobs, pairs.size()); ++j)
            futures.push_back(std::async(std::launch::async, worker));
        for (auto& f : futures)
            f.get();
    }

    fs::create_directories(out_dir);
    std::size_t total_failures = 0;
    std::ostringstream csv;
    csv << "p,q,check,instances,failures,millis\n";
    for (const auto& result : results) {
        const std::string json = liftlab::checks::to_json(result.report);
        std::ofstream file(fs::path(out_dir) / ("q" + dec(result.pair.q) + ".json"),
                           std::ios::binary);
        file << json;
        for (const auto& row : result.rows) {
            csv << row.p << "," << row.q << "," << row.check << "," << row.instances << ","
                << row.failures << "," << row.millis << "\n";
            total_failures += row.failures;
        }
        std::cout << "q=" << result.pair.q << " p=" << result.pair.p
                  << " total=" << result.report.total()
                  << " failed=" << result.report.failed() << "\n";
    }
    {
        std::ofstream file(fs::path(out_dir) / "summary.csv", std::ios::binary);
        file << csv.str();
    }
    std::cout << "pairs=" << pairs.size() << " failures=" << total_failures << "\n";
    return total_failures == 0 ? kExitOk : kExitCheckFailure;
}

// ---- demo ----

struct DemoStep {
    std::string label;
    std::string value;
    std::optional<bool> pass;
};

int cmd_demo(const Int& p, const Int& q, const Int& n, const Int& k, const std::string& format)
{
    SafePrimePair pair;
    try {
        pair = liftlab::instance::validate_safe_prime(p, q);
    } catch (const liftlab::Error& e) {
        std::cerr << "liftlab demo: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    if (n < 0 || n >= pair.subgroup_order) {
        std::cerr << "liftlab demo: n must lie in [0, q*phi(q)) = [0, "
                  << pair.subgroup_order << ")\n";
        return kExitInvalidInput;
    }

    namespace lifts = liftlab::lifts;
    namespace nc = liftlab::noncanonical;

    const auto a0 = liftlab::instance::find_dual_primitive_root(pair);
    const Int b0 = liftlab::arith::powmod(a0.value(), n, pair.pq).value();
    const auto inst = liftlab::instance::DlogInstance::make(pair, a0.value(), b0, n);

    const auto quotient_a = lifts::fermat_quotient_pq(pair, a0.value());
    const auto quotient_b = lifts::fermat_quotient_pq(pair, b0);
    const auto lift_a = lifts::canonical_lift(pair, a0.value());
    const auto lift_b = lifts::canonical_lift(pair, b0);
    const auto beta = lifts::carry(pair, a0.value(), n, b0);
    const bool carry_ok =
        lifts::verify_carry_relation(pair, a0.value(), b0, n, lift_a, lift_b, beta);
    const bool quotient_ok =
        lifts::verify_fermat_carry_relation(pair, a0.value(), b0, n, beta);

    const auto offset = nc::construct_noncanonical(inst, lift_a, lift_b, k);
    const Int g = liftlab::gcd(offset.k.value(), pair.pq);

    const auto recovered =
        nc::recover_mod_pq(pair, a0.value(), b0, offset.k.value(), offset.l.value());
    const bool recovered_ok =
        recovered.value() == liftlab::mod_reduce(n, recovered.modulus());

    const auto smart =
        nc::smart_recover(pair, lift_a, lift_b, offset.k.value(), offset.l.value());
    const bool smart_ok = smart == recovered;

    std::optional<liftlab::arith::Residue> recovered_q;
    bool recovered_q_ok = true;
    if (offset.tag == nc::LiftCase::SubgroupPreserving) {
        recovered_q = nc::recover_mod_q(pair, a0.value(), b0, offset.k1().value(),
                                        offset.l1().value());
        recovered_q_ok = recovered_q->value() == liftlab::mod_reduce(n, pair.q);
    }

    // The final climb to mod p-1 needs n mod q, which the recovery provides
    // whenever gcd(k, pq) != q.
    std::optional<liftlab::arith::Residue> n_p;
    bool n_p_ok = true;
    if (g != pair.q) {
        n_p = nc::lift_to_p_minus_1(pair, liftlab::mod_reduce(a0.value(), pair.p),
                                    liftlab::mod_reduce(b0, pair.p),
                                    liftlab::mod_reduce(recovered.value(), pair.q));
        n_p_ok = n_p->value() == liftlab::mod_reduce(n, pair.p - 1);
    }

    const bool all_ok =
        carry_ok && quotient_ok && recovered_ok && smart_ok && recovered_q_ok && n_p_ok;

    if (format == "json") {
        ordered_json j;
        j["p"] = dec(pair.p);
        j["q"] = dec(pair.q);
        j["n"] = dec(n);
        j["k"] = dec(offset.k.value());
        j["a0"] = dec(a0.value());
        j["b0"] = dec(b0);
        j["fermat_quotient_a0"] = dec(quotient_a.value.value());
        j["fermat_quotient_b0"] = dec(quotient_b.value.value());
        j["digit_a1"] = dec(lift_a.digit.value());
        j["lift_a"] = dec(lift_a.lifted.value());
        j["digit_b1"] = dec(lift_b.digit.value());
        j["lift_b"] = dec(lift_b.lifted.value());
        j["carry_beta"] = dec(beta.beta.value());
        j["carry_relation"] = carry_ok;
        j["fermat_carry_relation"] = quotient_ok;
        j["offset_l"] = dec(offset.l.value());
        j["case"] = nc::to_string(offset.tag);
        j["recovered_mod_pq"] = {{"value", dec(recovered.value())},
                                 {"modulus", dec(recovered.modulus())},
                                 {"pass", recovered_ok}};
        j["smart_recovered"] = {{"value", dec(smart.value())},
                                {"modulus", dec(smart.modulus())},
                                {"pass", smart_ok}};
        if (recovered_q)
            j["recovered_mod_q"] = {{"value", dec(recovered_q->value())},
                                    {"modulus", dec(pair.q)},
                                    {"pass", recovered_q_ok}};
        else
            j["recovered_mod_q"] = nullptr;
        if (n_p)
            j["n_p"] = {{"value", dec(n_p->value())},
                        {"modulus", dec(pair.p - 1)},
                        {"pass", n_p_ok}};
        else
            j["n_p"] = nullptr;
        std::cout << j.dump(2) << "\n";
    } else {
        auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
        std::cout << "safe prime pair: p=" << pair.p << " q=" << pair.q << "  (pq=" << pair.pq
                  << ", p^2q^2=" << pair.p2q2 << ", p^2q^3=" << pair.p2q3
                  << ", p^3q^3=" << pair.p3q3 << ")\n";
        std::cout << "base a0 = " << a0.value()
                  << " (smallest dual primitive root), order q*phi(q) = "
                  << pair.subgroup_order << " mod " << pair.pq << "\n";
        std::cout << "index n = " << n << ", target b0 = a0^n = " << b0 << " mod " << pair.pq
                  << "\n";
        std::cout << "fermat quotient q(a0) = " << quotient_a.value.value() << " mod "
                  << pair.pq << "   [x^(pq*phi(q)) = 1 + q(x)*p^2q^2 mod p^3q^3]\n";
        std::cout << "fermat quotient q(b0) = " << quotient_b.value.value() << " mod "
                  << pair.pq << "\n";
        std::cout << "canonical digits: a1 = -q(a0)*a0/phi(q) = " << lift_a.digit.value()
                  << ", lift(a0) = " << lift_a.lifted.value() << " mod " << pair.p2q2 << "\n";
        std::cout << "                  b1 = " << lift_b.digit.value()
                  << ", lift(b0) = " << lift_b.lifted.value() << " mod " << pair.p2q2 << "\n";
        std::cout << "carry beta = " << beta.beta.value()
                  << "   [a0^n = b0 + beta*pq mod p^2q^2]\n";
        std::cout << "carry relation beta + n*(b0/a0)*a1 = b1 mod pq: " << verdict(carry_ok)
                  << "\n";
        std::cout << "quotient relation n*q(a0) = q(b0) + (beta/b0)*phi(q) mod pq: "
                  << verdict(quotient_ok) << "\n";
        std::cout << "offset k = " << offset.k.value() << " (" << nc::to_string(offset.tag)
                  << "), derived l = n*(b0/a0)*k = " << offset.l.value() << " mod " << pair.pq
                  << "\n";
        std::cout << "logarithmic-derivative recovery (l/b0)/(k/a0): n = " << recovered.value()
                  << " mod " << recovered.modulus() << ": " << verdict(recovered_ok) << "\n";
        std::cout << "power-raising recovery through quotient digits: n = " << smart.value()
                  << " mod " << smart.modulus() << ": " << verdict(smart_ok) << "\n";
        if (recovered_q)
            std::cout << "subgroup-level recovery (l1/b0)/(k1/a0): n = "
                      << recovered_q->value() << " mod " << pair.q << ": "
                      << verdict(recovered_q_ok) << "\n";
        else
            std::cout << "subgroup-level recovery: not applicable (k is not a multiple of p)\n";
        if (n_p)
            std::cout << "lift to mod p-1: n_p = " << n_p->value() << " mod " << pair.p - 1
                      << ": " << verdict(n_p_ok) << "\n";
        else
            std::cout << "lift to mod p-1: skipped (k shares the factor q; n mod q was lost)\n";
    }
    return all_ok ? kExitOk : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"liftlab " + std::string(liftlab::kVersion) +
                 ": discrete-log lifting over safe-prime moduli, verified at desk scale"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Find a safe prime pair of a given size");
    unsigned gen_bits = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_format = "text";
    gen->add_option("--bits", gen_bits, "Bit length of q (>= 2)")
        ->required()
        ->check(CLI::Range(2u, 4096u));
    gen->add_option("--seed", gen_seed, "Sampling seed")->envname("LIFTLAB_SEED");
    gen->add_option("--format", gen_format)->check(CLI::IsMember({"text", "json"}));

    // verify
    auto* verify = app.add_subcommand("verify", "Run check suites on one pair");
    std::string verify_p, verify_q, verify_a0, verify_check = "all";
    std::string verify_format = "json", verify_out;
    std::uint64_t verify_seed = 0;
    std::size_t verify_samples = 0;
    bool verify_exhaustive = false;
    verify->add_option("-p,--p", verify_p, "Safe prime p = 2q + 1")->required();
    verify->add_option("-q,--q", verify_q, "Sophie Germain prime q")->required();
    verify->add_option("--a0", verify_a0, "Base (default: smallest dual primitive root)");
    verify->add_option("--check", verify_check, "Suite to run")
        ->check(CLI::IsMember({"lemma1", "lemma2", "carry", "fermat-carry", "orders",
                               "formula4", "recovery", "smart", "relaxed", "all"}));
    verify->add_option("--samples", verify_samples,
                       "Offsets/triples per instance (default min(q*phi(q), 200))");
    verify->add_option("--seed", verify_seed, "Sampling seed")->envname("LIFTLAB_SEED");
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", verify_out, "Write the report here instead of stdout");
    verify->add_flag("--exhaustive", verify_exhaustive,
                     "Enumerate every offset instead of sampling (q <= 50)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Verify every safe prime pair up to q-max");
    std::string sweep_q_max;
    std::vector<std::string> sweep_checks;
    std::uint64_t sweep_seed = 0;
    unsigned sweep_jobs = 1;
    std::string sweep_out = "sweep-out";
    std::size_t sweep_samples = 0;
    bool sweep_exhaustive = false;
    bool sweep_timings = false;
    sweep->add_option("--q-max", sweep_q_max, "Upper bound for q")->required();
    sweep->add_option("--checks", sweep_checks, "Suites to run (default all)");
    sweep->add_option("--seed", sweep_seed, "Sampling seed")->envname("LIFTLAB_SEED");
    sweep->add_option("--jobs", sweep_jobs, "Pairs verified in parallel");
    sweep->add_option("--out", sweep_out, "Output directory");
    sweep->add_option("--samples", sweep_samples, "Offsets/triples per instance");
    sweep->add_flag("--exhaustive", sweep_exhaustive, "Enumerate every offset (q <= 50)");
    sweep->add_flag("--timings", sweep_timings,
                    "Record wall-clock millis in the CSV (breaks byte-reproducibility)");

    // demo
    auto* demo = app.add_subcommand("demo", "Annotated walkthrough of one instance");
    std::string demo_p, demo_q, demo_n, demo_k = "1";
    std::string demo_format = "text";
    demo->add_option("-p,--p", demo_p, "Safe prime p = 2q + 1")->required();
    demo->add_option("-q,--q", demo_q, "Sophie Germain prime q")->required();
    demo->add_option("-n,--n", demo_n, "Index n in [0, q*phi(q))")->required();
    demo->add_option("-k,--k", demo_k, "Lift offset k mod pq");
    demo->add_option("--format", demo_format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "liftlab: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_bits, gen_seed, gen_format);
        if (verify->parsed()) {
            Options opts;
            opts.seed = verify_seed;
            opts.samples = verify_samples;
            opts.exhaustive = verify_exhaustive;
            std::optional<Int> a0;
            if (!verify_a0.empty())
                a0 = parse_int(verify_a0, "--a0");
            return cmd_verify(parse_int(verify_p, "-p"), parse_int(verify_q, "-q"), a0,
                              verify_check, opts, verify_format, verify_out);
        }
        if (sweep->parsed()) {
            Options opts;
            opts.seed = sweep_seed;
            opts.samples = sweep_samples;
            opts.exhaustive = sweep_exhaustive;
            return cmd_sweep(parse_int(sweep_q_max, "--q-max"), sweep_checks, opts, sweep_jobs,
                             sweep_out, sweep_timings);
        }
        if (demo->parsed())
            return cmd_demo(parse_int(demo_p, "-p"), parse_int(demo_q, "-q"),
                            parse_int(demo_n, "-n"), parse_int(demo_k, "-k"), demo_format);
    } catch (const UsageError& e) {
        std::cerr << "liftlab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const liftlab::Error& e) {
        std::cerr << "liftlab: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "liftlab: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitUsage;
}
