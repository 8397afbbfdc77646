#pragma once

#include <cstdint>

namespace priceform {

/// Deterministic random stream keyed by (master seed, stream index).
///
/// The generator is xoshiro256** seeded through SplitMix64 from the key, so
/// that replica streams are independent and a given key yields the same
/// sequence on every platform. Variates are produced by hand-written
/// transforms rather than <random> distributions, whose output is
/// implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1).
    double uniform() noexcept;
    /// Uniform on (0, 1].
    double uniform_pos() noexcept { return 1.0 - uniform(); }
    double exponential(double rate) noexcept;
    double normal() noexcept;

private:
    std::uint64_t s_[4];
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace priceform
