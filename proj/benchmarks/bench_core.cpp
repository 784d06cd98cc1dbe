#include "liftlab/checks.hpp"
#include "liftlab/lifts.hpp"
#include "liftlab/noncanonical.hpp"
#include "liftlab/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace liftlab;

namespace {

const instance::SafePrimePair& pair89()
{
    static const auto pair = instance::validate_safe_prime(179, 89);
    return pair;
}

void BM_powmod_tower(benchmark::State& state)
{
    const auto& pair = pair89();
    const Int base = 1234567;
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::powmod(base, pair.full_lift_order, pair.p3q3));
}
BENCHMARK(BM_powmod_tower);

void BM_is_probable_prime_64bit(benchmark::State& state)
{
    const Int n = Int("18446744073709551557");  // largest 64-bit prime
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::is_probable_prime(n));
}
BENCHMARK(BM_is_probable_prime_64bit);

void BM_fermat_quotient(benchmark::State& state)
{
    const auto& pair = pair89();
    const Int x = 12345;
    for (auto _ : state)
        benchmark::DoNotOptimize(lifts::fermat_quotient_pq(pair, x));
}
BENCHMARK(BM_fermat_quotient);

void BM_canonical_lift(benchmark::State& state)
{
    const auto& pair = pair89();
    for (auto _ : state)
        benchmark::DoNotOptimize(lifts::canonical_lift(pair, 12345));
}
BENCHMARK(BM_canonical_lift);

void BM_is_extendable(benchmark::State& state)
{
    const auto& pair = pair89();
    for (auto _ : state)
        benchmark::DoNotOptimize(instance::is_extendable(pair, 12345));
}
BENCHMARK(BM_is_extendable);

void BM_recover_mod_pq(benchmark::State& state)
{
    const auto& pair = pair89();
    const auto a0 = instance::find_dual_primitive_root(pair);
    const auto inst = instance::DlogInstance::from_exponent(pair, a0.value(), 4321);
    const auto lift_a = lifts::canonical_lift(pair, a0.value());
    const auto lift_b = lifts::canonical_lift(pair, inst.b0.value());
    const auto lift = noncanonical::construct_noncanonical(inst, lift_a, lift_b, 101);
    for (auto _ : state)
        benchmark::DoNotOptimize(noncanonical::recover_mod_pq(
            pair, a0.value(), inst.b0.value(), 101, lift.l.value()));
}
BENCHMARK(BM_recover_mod_pq);

void BM_smart_recover(benchmark::State& state)
{
    const auto& pair = pair89();
    const auto a0 = instance::find_dual_primitive_root(pair);
    const auto inst = instance::DlogInstance::from_exponent(pair, a0.value(), 4321);
    const auto lift_a = lifts::canonical_lift(pair, a0.value());
    const auto lift_b = lifts::canonical_lift(pair, inst.b0.value());
    const auto lift = noncanonical::construct_noncanonical(inst, lift_a, lift_b, 101);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            noncanonical::smart_recover(pair, lift_a, lift_b, 101, lift.l.value()));
}
BENCHMARK(BM_smart_recover);

void BM_dlog_bruteforce(benchmark::State& state)
{
    const auto& pair = pair89();
    const auto a0 = instance::find_dual_primitive_root(pair);
    const Int target = arith::powmod(a0.value(), pair.subgroup_order - 1, pair.pq).value();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            oracle::dlog_bruteforce(a0.value(), target, pair.pq, pair.subgroup_order));
}
BENCHMARK(BM_dlog_bruteforce);

void BM_dlog_bsgs(benchmark::State& state)
{
    const auto& pair = pair89();
    const auto a0 = instance::find_dual_primitive_root(pair);
    const Int target = arith::powmod(a0.value(), pair.subgroup_order - 1, pair.pq).value();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            oracle::dlog_bsgs(a0.value(), target, pair.pq, pair.subgroup_order));
}
BENCHMARK(BM_dlog_bsgs);

void BM_lemma2_suite_q11(benchmark::State& state)
{
    const auto pair = instance::validate_safe_prime(23, 11);
    const auto a0 = instance::find_dual_primitive_root(pair);
    checks::Options opts;
    for (auto _ : state) {
        checks::VerificationReport report;
        checks::run_suite("lemma2", pair, a0, opts, report);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_lemma2_suite_q11);

} // namespace

BENCHMARK_MAIN();
