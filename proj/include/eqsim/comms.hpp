#ifndef EQSIM_COMMS_HPP
#define EQSIM_COMMS_HPP

#include "eqsim/linalg.hpp"
#include "eqsim/rng.hpp"

#include <cstddef>

namespace eqsim {

// Square QAM alphabet, Gray-indexed, normalized to unit average power.
// points[m] places the axis level whose Gray code equals the respective half
// of m, so lattice neighbors differ in exactly one index bit.
struct Constellation {
    std::size_t order = 4;
    std::size_t side = 2;     // sqrt(order)
    double scale = 1.0;       // lattice unit
    CVec points;
};

// order must be one of 4 (QPSK), 16, 256.
Constellation make_constellation(std::size_t order);

// n i.i.d. uniform draws from the alphabet.
CVec draw_symbols(const Constellation& c, std::size_t n, RngStream& rng);

// Index of the alphabet point nearest to z; exact ties resolved to the
// lowest index. Non-finite z is an error (no decision possible).
std::size_t slice_index(Cplx z, const Constellation& c);
Cplx slice(Cplx z, const Constellation& c);

struct ChannelModel {
    CVec taps;
};

// Linear convolution with zero initial state; the tail is truncated so the
// output length equals the input length.
CVec apply_channel(const CVec& s, const ChannelModel& ch);

struct AwgnResult {
    CVec signal;
    double sigma_v2 = 0.0;
};

// Adds circular complex Gaussian noise sized from the *empirical* signal
// power: sigma_v2 = mean|sig|^2 / 10^(snr_db/10).
AwgnResult add_awgn(const CVec& sig, double snr_db, RngStream& rng);

// Fraction of positions >= skip where decision != truth (exact complex
// equality; both sides are sliced alphabet points).
double symbol_error_rate(const CVec& decisions, const CVec& truth, std::size_t skip);

} // namespace eqsim

#endif // EQSIM_COMMS_HPP
