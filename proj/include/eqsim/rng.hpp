#ifndef EQSIM_RNG_HPP
#define EQSIM_RNG_HPP

#include "eqsim/linalg.hpp"

#include <cstdint>
#include <random>

namespace eqsim {

// Seeded random stream, a value type. The same (seed, stream_id) pair always
// produces the same sample sequence; distinct stream ids give independent
// streams. Gaussian draws are hand-rolled Box-Muller on top of the raw engine
// so the sequence does not depend on the standard library's distribution
// implementations.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform index in [0, n)
    std::size_t next_index(std::size_t n);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 eng_;
};

// Circularly symmetric complex Gaussian with E{|v|^2} = variance.
// variance = 0 yields exactly zero (while still consuming two draws, so
// streams stay aligned across noise settings).
Cplx gaussian_complex(RngStream& rng, double variance);

} // namespace eqsim

#endif // EQSIM_RNG_HPP
