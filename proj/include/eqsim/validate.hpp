#ifndef EQSIM_VALIDATE_HPP
#define EQSIM_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace eqsim {

struct CheckResult {
    std::string group;
    bool pass = false;
    std::string detail;
};

// Each check is deterministic in its seed. Scales default to the values the
// release gate runs at.

// Generic engine with L=1, W=1 against a standalone scalar LMS; likewise the
// normalized variant; PRA with alpha=0 against R-APA. Trajectories must agree
// to 1e-12 at every step.
CheckResult check_reduction_lms(std::uint64_t seed, std::size_t steps = 10000);
CheckResult check_reduction_nlms(std::uint64_t seed, std::size_t steps = 10000);
CheckResult check_reduction_pra_apa(std::uint64_t seed, std::size_t steps = 10000);

// Noiseless unit-step projection: after an update the a-posteriori block
// error must shrink below 1e-6 of the desired block norm. Also verifies the
// eps <= 0 parameter gate trips.
CheckResult check_projection(std::uint64_t seed, std::size_t updates = 1000);

// Every applied variable step stays in [0, mu_max); the step rule is
// monotone in the smoothed-direction norm.
CheckResult check_step_bounds(std::uint64_t seed, std::size_t steps = 5000);

// Adaptive psi against the direct regularized-Gram trace Monte-Carlo
// (within 10%), and the SNR-derived value at 30 dB, L=4 (exactly 0.004).
CheckResult check_psi_estimate(std::uint64_t seed, std::size_t draws = 10000);

// Ensemble-averaged optimal-step expression against a brute-force grid
// search of the expected MSD decrease over mu in [0,2], grid 1e-3; must
// agree within two grid steps. detail reports the deviation.
CheckResult check_optimal_step(std::uint64_t seed, std::size_t trials = 10000);

// Trial-averaged MSD under the per-step oracle step size never rises by
// more than one standard error.
CheckResult check_msd_descent(std::uint64_t seed, std::size_t trials = 500,
                              std::size_t iterations = 200);

// Error split: measured error equals a-priori error plus noise, to 1e-12.
CheckResult check_error_decomposition(std::uint64_t seed, std::size_t steps = 200);

std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

} // namespace eqsim

#endif // EQSIM_VALIDATE_HPP
