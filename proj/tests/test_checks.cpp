#include "liftlab/checks.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace liftlab;
using checks::Options;

namespace {

instance::SafePrimePair pair73() { return instance::validate_safe_prime(7, 3); }

std::size_t count_suite(const checks::VerificationReport& report, const std::string& name)
{
    std::size_t n = 0;
    for (const auto& check : report.checks)
        if (check.name == name)
            ++n;
    return n;
}

} // namespace

TEST_CASE("every suite passes on the worked pair")
{
    Options opts;
    opts.seed = 42;
    const auto report = checks::run_suites(pair73(), std::nullopt, {"all"}, opts);
    CHECK(report.failed() == 0);
    CHECK(report.total() == report.passed());
    CHECK(report.a0 == 5);

    // phi(21) = 12 candidate targets
    CHECK(count_suite(report, "lemma1") == 12);
    // q*phi(q) = 6 indices in the exhaustive suites
    CHECK(count_suite(report, "lemma2") == 6);
    CHECK(count_suite(report, "carry") == 6);
    CHECK(count_suite(report, "fermat-carry") == 6);
    // all named suites ran
    for (const auto& name : checks::suite_names())
        CHECK(count_suite(report, name) > 0);
}

TEST_CASE("suite selection and unknown names")
{
    Options opts;
    const auto report = checks::run_suites(pair73(), std::nullopt, {"lemma1"}, opts);
    CHECK(report.total() == 12);
    CHECK(count_suite(report, "lemma2") == 0);

    CHECK(checks::is_suite_name("fermat-carry"));
    CHECK_FALSE(checks::is_suite_name("bogus"));

    checks::VerificationReport sink;
    CHECK_THROWS_AS(
        checks::run_suite("bogus", pair73(), instance::find_dual_primitive_root(pair73()),
                          opts, sink),
        Error);
}

TEST_CASE("a supplied base must be a dual primitive root")
{
    Options opts;
    CHECK_NOTHROW(checks::run_suites(pair73(), Int(5), {"orders"}, opts));
    CHECK_THROWS_AS(checks::run_suites(pair73(), Int(4), {"orders"}, opts), Error);
    CHECK_THROWS_AS(checks::run_suites(pair73(), Int(3), {"orders"}, opts), NotCoprime);
}

TEST_CASE("json report shape")
{
    Options opts;
    opts.seed = 7;
    const auto report = checks::run_suites(pair73(), std::nullopt, {"lemma1", "orders"}, opts);
    const auto parsed = nlohmann::json::parse(checks::to_json(report));

    CHECK(parsed["p"] == "7");
    CHECK(parsed["q"] == "3");
    CHECK(parsed["a0"] == "5");
    CHECK(parsed["seed"] == 7);
    CHECK(parsed["version"].is_string());
    CHECK(parsed["checks"].is_array());
    CHECK(parsed["checks"].size() == report.total());
    for (const auto& entry : parsed["checks"]) {
        CHECK(entry.contains("name"));
        CHECK(entry.contains("instance"));
        CHECK(entry.contains("pass"));
        CHECK(entry.contains("details"));
    }
    CHECK(parsed["summary"]["total"] == report.total());
    CHECK(parsed["summary"]["passed"] == report.passed());
    CHECK(parsed["summary"]["failed"] == 0);

    // key order is pinned for byte-stable reports
    const std::string text = checks::to_json(report);
    CHECK(text.find("\"p\"") < text.find("\"q\""));
    CHECK(text.find("\"q\"") < text.find("\"a0\""));
    CHECK(text.find("\"checks\"") < text.find("\"summary\""));
}

TEST_CASE("reports are byte-identical for a fixed seed")
{
    Options opts;
    opts.seed = 1234;
    opts.samples = 8;
    const auto first =
        checks::to_json(checks::run_suites(pair73(), std::nullopt, {"all"}, opts));
    const auto second =
        checks::to_json(checks::run_suites(pair73(), std::nullopt, {"all"}, opts));
    CHECK(first == second);
}

TEST_CASE("text rendering mentions every suite and the summary")
{
    Options opts;
    const auto report = checks::run_suites(pair73(), std::nullopt, {"all"}, opts);
    const auto text = checks::to_text(report);
    for (const auto& name : checks::suite_names())
        CHECK(text.find(name) != std::string::npos);
    CHECK(text.find("summary: total=") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);
}
