#pragma once

#include <cstdint>
#include <random>

namespace voodb::sim {

// One sub-stream per stochastic concern, all derived from a replication seed.
enum class StreamId : std::uint32_t {
    Database = 1,
    Workload = 2,
    Traversal = 3,
    BufferPolicy = 4,
    RootSet = 5,
    Clustering = 6,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed for the i-th child of a parent seed (replication seeds, sub-streams).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are written out
// so the same (seed, stream) draws the same values on every standard library.
class RandomStream {
public:
    RandomStream() : RandomStream(0, 0) {}
    RandomStream(std::uint64_t seed, std::uint32_t stream_id);
    RandomStream(std::uint64_t seed, StreamId stream)
        : RandomStream(seed, static_cast<std::uint32_t>(stream)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint32_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform on [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    // Uniform integer on [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t seed_;
    std::uint32_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace voodb::sim
