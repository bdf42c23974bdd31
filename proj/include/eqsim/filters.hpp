#ifndef EQSIM_FILTERS_HPP
#define EQSIM_FILTERS_HPP

#include "eqsim/linalg.hpp"
#include "eqsim/rng.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace eqsim {

// Algorithm catalog. All of these are instances of the one generic update
//   h <- h + mu * X * W * e
// differing in the projection order L, the weighting W, the update schedule
// (the partial-rank family holds the weights between block boundaries) and
// whether mu is fixed or driven by the smoothed update-direction norm.
enum class Variant {
    lms,
    nlms,
    apa,
    rapa,
    pra,
    vss_nlms,
    vss_apa,
    vsspr,
};

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// How the variable-step denominator constant psi is obtained.
struct PsiMode {
    enum class Kind { fixed, from_snr, adaptive };
    Kind kind = Kind::fixed;
    double value = 1e-4;     // fixed
    double snr_linear = 0.0; // from_snr: psi = L / snr_linear; 0 = bind to the run's SNR
};

// psi for the given mode. Adaptive mode estimates L * sigma_v^2 * E{1/||x||^2}
// from a window of recent squared regressor norms; zero norms are skipped and
// an all-zero window falls back to a 1e-8 floor.
double psi_value(const PsiMode& mode, std::size_t L, double sigma_v2,
                 std::span<const double> recent_norms);

struct AlgorithmSpec {
    Variant variant = Variant::nlms;
    std::string label;               // column name in outputs; default variant_name()
    std::size_t projection_order = 1; // L
    double mu = 0.4;                 // fixed-step variants
    double mu_max = 1.7;             // variable-step variants, must stay below 2
    double eps = 1e-4;               // Gram regularization
    double beta = 0.99;              // smoothing factor of the p-hat recursion
    int alpha = 1;                   // block factor: hold length L' = alpha*(L-1)
    PsiMode psi;

    bool variable_step() const {
        return variant == Variant::vss_nlms || variant == Variant::vss_apa ||
               variant == Variant::vsspr;
    }
    bool block_scheduled() const { return variant == Variant::pra || variant == Variant::vsspr; }
    bool scalar_weighting() const { return variant == Variant::lms || variant == Variant::nlms; }

    std::size_t effective_order() const { return scalar_weighting() ? 1 : projection_order; }
    std::size_t hold_length() const {
        return block_scheduled() ? static_cast<std::size_t>(alpha) * (effective_order() - 1) : 0;
    }

    std::string display_name() const { return label.empty() ? variant_name(variant) : label; }

    // Throws config_error on any invariant violation (mu_max >= 2, beta outside
    // [0,1], nonpositive eps/mu, L < 1, ...).
    void validate() const;
};

// One adaptation step's observable outcome.
struct StepRecord {
    Cplx output{0.0, 0.0};      // s_hat(n), inner product of regressor and weights
    Cplx prior_error{0.0, 0.0}; // d(n) - output
    double mu_used = 0.0;       // 0 when the weights were held this iteration
    bool updated = false;
};

// The complex convention throughout the filter equations: the output stays
// linear in the data (e[j] = d[j] - (column j of X)^T h) and the conjugation
// lands on the data matrix in the update direction, i.e. the gradient with
// respect to conj(h). For real signals this is the textbook real form.

// e[j] = d[j] - (column j of X)^T h
CVec error_vector(const CVec& d, const CMat& X, const CVec& h);

// W(n) selecting the algorithm family: LMS -> [1], NLMS -> [1/(eps+||x||^2)],
// APA/R-APA/PRA/VSSPR -> (eps*I + X^T conj(X))^{-1}.
CMat weighting_matrix(const AlgorithmSpec& spec, const CMat& X);

// h + mu * conj(X) * W * e
CVec generic_update(const CVec& h, const CMat& X, const CMat& W, const CVec& e, double mu);

// p_hat <- beta * p_hat + (1-beta) * conj(X) (eps*I + X^T conj(X))^{-1} e
CVec vss_p_hat(const CVec& p_hat, const CMat& X, const CVec& e, double beta, double eps);

// mu(n) = mu_max * ||p_hat||^2 / (||p_hat||^2 + psi); always in [0, mu_max)
double vss_mu(const CVec& p_hat, double psi, double mu_max);

// Known-truth system identification scenario for validation harnesses.
struct SysIdScenario {
    CVec h_true;
    double input_variance = 1.0;
    double noise_variance = 0.0;
};

// ||h_true - h||^2
double msd(const CVec& h, const SysIdScenario& scenario);

// Single-sample plug-in of the optimal step-size expression: with
// B = conj(X)*W and C = B*X^T,
//   mu = Re(eps_vec^H C eps_vec) / (||C eps_vec||^2 + sigma_v2 * ||B||_F^2).
// Returns 0 on a vanishing denominator. Validation use only (needs the true
// weight error).
double oracle_optimal_mu(const CVec& eps_vec, const CMat& X, const CMat& W, double sigma_v2);

// Running state of one adaptive filter. Owned by a single realization;
// step() is deterministic in (state, inputs).
class FilterState {
public:
    FilterState(AlgorithmSpec spec, std::size_t num_taps, double noise_variance = 0.0);

    // Output the filter would produce for x_new without committing anything.
    Cplx predict(Cplx x_new) const;

    // Push x_new / d_new, emit output and prior error, then run the variant's
    // update. Rejects non-finite inputs (numeric_error) leaving state intact.
    StepRecord step(Cplx x_new, Cplx d_new);

    const CVec& weights() const { return h_; }
    // warm start; length must match the tap count
    void set_weights(CVec h);
    const CVec& p_hat() const { return p_hat_; }
    const RegressorWindow& window() const { return window_; }
    const AlgorithmSpec& spec() const { return spec_; }
    double psi() const { return psi_; }
    std::size_t iteration() const { return iter_; }
    std::size_t num_taps() const { return M_; }

private:
    void update_psi();

    AlgorithmSpec spec_;
    std::size_t M_;
    std::size_t L_;
    CVec h_;
    CVec p_hat_;
    RegressorWindow window_;
    CVec d_hist_; // most recent first, length L
    std::size_t block_phase_ = 0;
    double psi_ = 1e-4;
    double noise_variance_ = 0.0;
    std::vector<double> recent_norms_; // ring buffer for adaptive psi
    std::size_t norms_next_ = 0;
    std::size_t norms_count_ = 0;
    std::size_t iter_ = 0;
};

} // namespace eqsim

#endif // EQSIM_FILTERS_HPP
