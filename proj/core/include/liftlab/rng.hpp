#pragma once

#include "liftlab/int.hpp"

#include <cstdint>
#include <initializer_list>

namespace liftlab {

// splitmix64: tiny, well-mixed, identical on every platform. All sampling in
// the library goes through this generator so that reports are byte-stable
// for a fixed seed regardless of standard library or thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound), bound > 0. Rejection sampling, no bias.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Exactly `bits` random bits as a nonnegative integer (leading bits may
    /// be zero).
    Int bits(unsigned bits)
    {
        Int out = 0;
        while (bits >= 64) {
            out <<= 64;
            out |= Int(static_cast<unsigned long>(next() >> 32)) << 32 |
                   Int(static_cast<unsigned long>(next() & 0xffffffffULL));
            bits -= 64;
        }
        if (bits > 0) {
            Int chunk = Int(static_cast<unsigned long>((next() >> 32) & 0xffffffffULL)) << 32 |
                        Int(static_cast<unsigned long>(next() & 0xffffffffULL));
            out <<= bits;
            out |= chunk & ((Int(1) << bits) - 1);
        }
        return out;
    }

    /// Uniform draw in [0, bound) for arbitrary precision bounds, bound > 0.
    Int below_int(const Int& bound)
    {
        const auto nbits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
        Int v;
        do {
            v = bits(nbits);
        } while (v >= bound);
        return v;
    }

private:
    std::uint64_t state_;
};

/// Mixes a run seed with sub-task coordinates (pair, index, purpose tag) so
/// parallel sweeps draw the same samples in any schedule.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts)
{
    Rng mixer(seed);
    std::uint64_t acc = mixer.next();
    for (std::uint64_t part : parts) {
        Rng step(acc ^ (part + 0x517cc1b727220a95ULL));
        acc = step.next();
    }
    return acc;
}

} // namespace liftlab
