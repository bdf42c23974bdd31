#include "eqsim/rng.hpp"

#include "eqsim/errors.hpp"

#include <cmath>
#include <numbers>

namespace eqsim {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream_id),
        static_cast<std::uint32_t>(stream_id >> 32),
    };
    eng_.seed(seq);
}

std::size_t RngStream::next_index(std::size_t n) {
    if (n == 0) throw config_error("RngStream::next_index: empty range");
    // modulo bias is ~n/2^64, irrelevant at alphabet sizes used here
    return static_cast<std::size_t>(next_u64() % n);
}

Cplx gaussian_complex(RngStream& rng, double variance) {
    if (variance < 0.0) throw config_error("gaussian_complex: negative variance");
    // u1 in (0, 1] keeps the log finite
    const double u1 = (static_cast<double>(rng.next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = rng.next_unit();
    const double amp = std::sqrt(-variance * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return Cplx{amp * std::cos(phase), amp * std::sin(phase)};
}

} // namespace eqsim
