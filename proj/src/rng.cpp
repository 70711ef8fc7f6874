#include "silab/rng.hpp"

#include "silab/errors.hpp"

namespace silab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double hashed_u01(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_index) {
    // Avalanche the address into four words so that nearby (seed, stream)
    // pairs initialize well-separated engine states. std::seed_seq::generate
    // is fully specified by the standard.
    const std::uint64_t a = splitmix64(master_seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(stream_index));
    const std::uint64_t c = splitmix64(b + 0x94d049bb133111ebULL);
    const std::uint64_t d = splitmix64(c + 0xda942042e4dd58b5ULL);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(make_engine(master_seed, stream_index)) {}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    if (n == 0) throw ParameterError("uniform_below: n must be positive");
    if ((n & (n - 1)) == 0) return engine_() & (n - 1); // power of two
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

} // namespace silab
