#pragma once

#include "liftlab/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// The verification engine behind the CLI and the acceptance suite: each suite
// replays one identity or construction across a whole pair (exhaustively
// where feasible, seeded sampling where not) and records per-instance
// pass/fail rows.

namespace liftlab::checks {

using arith::Residue;
using instance::SafePrimePair;

struct CheckResult {
    std::string name;      // suite name
    std::string instance;  // which instance within the suite
    bool pass = false;
    std::string details;
};

struct VerificationReport {
    Int p;
    Int q;
    Int a0;
    std::uint64_t seed = 0;
    std::string version;
    std::vector<CheckResult> checks;

    std::size_t total() const { return checks.size(); }
    std::size_t failed() const;
    std::size_t passed() const { return total() - failed(); }
};

struct Options {
    std::uint64_t seed = 0;
    // Offsets (or triples) per instance; 0 means the default
    // min(q*phi(q), 200).
    std::size_t samples = 0;
    // Replaces offset sampling by full enumeration of k in [1, pq); only
    // honored for q <= 50.
    bool exhaustive = false;
};

/// Canonical suite order: lemma1, lemma2, carry, fermat-carry, orders,
/// formula4, recovery, smart, relaxed.
const std::vector<std::string>& suite_names();

bool is_suite_name(const std::string& name);

/// Runs one named suite for the pair, appending one CheckResult per instance.
void run_suite(const std::string& name, const SafePrimePair& pair, const Residue& a0,
               const Options& opts, VerificationReport& out);

/// Runs the named suites (or all of them for {"all"}) with the smallest dual
/// primitive root unless a0 is supplied.
VerificationReport run_suites(const SafePrimePair& pair, const std::optional<Int>& a0,
                              const std::vector<std::string>& names, const Options& opts);

/// Stable key order, arbitrary precision values as decimal strings.
std::string to_json(const VerificationReport& report);

std::string to_text(const VerificationReport& report);

} // namespace liftlab::checks
