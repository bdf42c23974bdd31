#include "eqsim/comms.hpp"

#include "eqsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqsim {

namespace {

std::size_t gray_encode(std::size_t v) { return v ^ (v >> 1); }

double axis_level(std::size_t pos, std::size_t side) {
    return 2.0 * static_cast<double>(pos) - static_cast<double>(side - 1);
}

} // namespace

Constellation make_constellation(std::size_t order) {
    if (order != 4 && order != 16 && order != 256)
        throw config_error("constellation order must be 4, 16 or 256");

    Constellation c;
    c.order = order;
    c.side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(order))));

    // average power of the +/-1, +/-3, ... lattice is 2*(side^2-1)/3 per symbol
    const double side_f = static_cast<double>(c.side);
    c.scale = 1.0 / std::sqrt(2.0 * (side_f * side_f - 1.0) / 3.0);

    std::size_t axis_bits = 0;
    while ((std::size_t{1} << axis_bits) < c.side) ++axis_bits;

    c.points.resize(order);
    for (std::size_t pi = 0; pi < c.side; ++pi) {
        for (std::size_t pq = 0; pq < c.side; ++pq) {
            const std::size_t idx = (gray_encode(pi) << axis_bits) | gray_encode(pq);
            c.points[idx] = c.scale * Cplx{axis_level(pi, c.side), axis_level(pq, c.side)};
        }
    }
    return c;
}

CVec draw_symbols(const Constellation& c, std::size_t n, RngStream& rng) {
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c.points[rng.next_index(c.order)];
    return out;
}

std::size_t slice_index(Cplx z, const Constellation& c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw numeric_error("slice: non-finite sample");

    std::size_t axis_bits = 0;
    while ((std::size_t{1} << axis_bits) < c.side) ++axis_bits;

    // floor/ceil lattice positions per axis always bracket the nearest level
    const auto axis_candidates = [&](double v, std::size_t out[2]) {
        const double pos = (v / c.scale + static_cast<double>(c.side - 1)) / 2.0;
        const double f = std::floor(pos);
        const long lo = std::clamp(static_cast<long>(f), 0L, static_cast<long>(c.side - 1));
        const long hi = std::clamp(static_cast<long>(f) + 1, 0L, static_cast<long>(c.side - 1));
        out[0] = static_cast<std::size_t>(lo);
        out[1] = static_cast<std::size_t>(hi);
    };

    std::size_t ci[2], cq[2];
    axis_candidates(z.real(), ci);
    axis_candidates(z.imag(), cq);

    std::size_t best_idx = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const std::size_t idx = (gray_encode(ci[a]) << axis_bits) | gray_encode(cq[b]);
            const double d = std::norm(z - c.points[idx]);
            if (d < best_d || (d == best_d && idx < best_idx)) {
                best_d = d;
                best_idx = idx;
            }
        }
    }
    return best_idx;
}

Cplx slice(Cplx z, const Constellation& c) { return c.points[slice_index(z, c)]; }

CVec apply_channel(const CVec& s, const ChannelModel& ch) {
    if (ch.taps.empty()) throw config_error("channel needs at least one tap");
    CVec y(s.size(), Cplx{0.0, 0.0});
    const std::size_t K = ch.taps.size();
    for (std::size_t n = 0; n < s.size(); ++n) {
        Cplx acc{0.0, 0.0};
        const std::size_t kmax = std::min(K - 1, n);
        for (std::size_t k = 0; k <= kmax; ++k) acc += ch.taps[k] * s[n - k];
        y[n] = acc;
    }
    return y;
}

AwgnResult add_awgn(const CVec& sig, double snr_db, RngStream& rng) {
    if (sig.empty()) throw config_error("add_awgn: empty signal");
    double power = 0.0;
    for (const Cplx& z : sig) power += std::norm(z);
    power /= static_cast<double>(sig.size());
    if (!(power > 0.0)) throw config_error("add_awgn: zero-power signal");

    AwgnResult r;
    r.sigma_v2 = power / std::pow(10.0, snr_db / 10.0);
    r.signal.resize(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i)
        r.signal[i] = sig[i] + gaussian_complex(rng, r.sigma_v2);
    return r;
}

double symbol_error_rate(const CVec& decisions, const CVec& truth, std::size_t skip) {
    if (decisions.size() != truth.size())
        throw std::invalid_argument("symbol_error_rate: length mismatch");
    if (skip >= decisions.size())
        throw std::invalid_argument("symbol_error_rate: skip exceeds series length");
    std::size_t errors = 0;
    for (std::size_t i = skip; i < decisions.size(); ++i)
        if (decisions[i] != truth[i]) ++errors;
    return static_cast<double>(errors) / static_cast<double>(decisions.size() - skip);
}

} // namespace eqsim
