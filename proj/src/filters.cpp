#include "eqsim/filters.hpp"

#include "eqsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqsim {

namespace {
constexpr std::size_t kNormWindow = 256; // ring size for adaptive psi
} // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::lms: return "lms";
        case Variant::nlms: return "nlms";
        case Variant::apa: return "apa";
        case Variant::rapa: return "rapa";
        case Variant::pra: return "pra";
        case Variant::vss_nlms: return "vss-nlms";
        case Variant::vss_apa: return "vss-apa";
        case Variant::vsspr: return "vsspr";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "lms") return Variant::lms;
    if (name == "nlms") return Variant::nlms;
    if (name == "apa" || name == "ap") return Variant::apa;
    if (name == "rapa" || name == "r-apa") return Variant::rapa;
    if (name == "pra" || name == "pr") return Variant::pra;
    if (name == "vss-nlms" || name == "vssnlms") return Variant::vss_nlms;
    if (name == "vss-apa" || name == "vssapa") return Variant::vss_apa;
    if (name == "vsspr" || name == "vss-pr") return Variant::vsspr;
    throw config_error("unknown algorithm name: '" + name + "'");
}

double psi_value(const PsiMode& mode, std::size_t L, double sigma_v2,
                 std::span<const double> recent_norms) {
    switch (mode.kind) {
        case PsiMode::Kind::fixed:
            if (!(mode.value > 0.0)) throw config_error("psi: fixed value must be positive");
            return mode.value;
        case PsiMode::Kind::from_snr:
            if (!(mode.snr_linear > 0.0)) throw config_error("psi: snr must be positive");
            return static_cast<double>(L) / mode.snr_linear;
        case PsiMode::Kind::adaptive: {
            if (sigma_v2 < 0.0) throw config_error("psi: negative noise variance");
            double inv_sum = 0.0;
            std::size_t used = 0;
            for (double n2 : recent_norms) {
                if (n2 > 0.0) {
                    inv_sum += 1.0 / n2;
                    ++used;
                }
            }
            if (used == 0) return 1e-8;
            const double est = static_cast<double>(L) * sigma_v2 * (inv_sum / used);
            // floor keeps the step-size rule defined in noiseless runs
            return std::max(est, 1e-8);
        }
    }
    throw config_error("psi: unknown mode");
}

void AlgorithmSpec::validate() const {
    if (projection_order < 1) throw config_error("projection order must be at least 1");
    if (scalar_weighting() && projection_order != 1)
        throw config_error(std::string(variant_name(variant)) + " requires projection order 1");
    if (variable_step()) {
        if (!(mu_max > 0.0) || !(mu_max < 2.0))
            throw config_error("mu_max must lie in (0, 2) to guarantee update stability");
        if (!(beta >= 0.0 && beta <= 1.0)) throw config_error("beta must lie in [0, 1]");
        if (psi.kind == PsiMode::Kind::fixed && !(psi.value > 0.0))
            throw config_error("psi value must be positive");
        if (psi.kind == PsiMode::Kind::from_snr && psi.snr_linear < 0.0)
            throw config_error("psi snr must not be negative");
    } else {
        if (!(mu > 0.0)) throw config_error("mu must be positive");
    }
    if (!(eps > 0.0)) throw config_error("eps must be positive");
    if (alpha != 0 && alpha != 1) throw config_error("alpha must be 0 or 1");
}

CVec error_vector(const CVec& d, const CMat& X, const CVec& h) {
    if (d.size() != X.cols || h.size() != X.rows)
        throw std::invalid_argument("error_vector: dimension mismatch");
    CVec e(X.cols);
    for (std::size_t j = 0; j < X.cols; ++j) {
        Cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < X.rows; ++i) acc += X(i, j) * h[i];
        e[j] = d[j] - acc;
    }
    return e;
}

CMat weighting_matrix(const AlgorithmSpec& spec, const CMat& X) {
    switch (spec.variant) {
        case Variant::lms: {
            CMat W(1, 1);
            W(0, 0) = Cplx{1.0, 0.0};
            return W;
        }
        case Variant::nlms:
        case Variant::vss_nlms: {
            if (X.cols != 1) throw std::invalid_argument("nlms weighting expects a single column");
            double n2 = 0.0;
            for (std::size_t i = 0; i < X.rows; ++i) n2 += std::norm(X(i, 0));
            CMat W(1, 1);
            // regularized so an all-zero cold-start regressor stays finite
            W(0, 0) = Cplx{1.0 / (spec.eps + n2), 0.0};
            return W;
        }
        case Variant::apa:
        case Variant::rapa:
        case Variant::pra:
        case Variant::vss_apa:
        case Variant::vsspr:
            // eps*I + X^T conj(X) is the conjugate of the plain Gram
            return hermitian_pd_inverse(conjugate(regularized_gram(X, spec.eps)));
    }
    throw std::invalid_argument("weighting_matrix: unknown variant");
}

CVec generic_update(const CVec& h, const CMat& X, const CMat& W, const CVec& e, double mu) {
    if (mu < 0.0) throw std::invalid_argument("generic_update: negative mu");
    const CVec we = matvec(W, e);
    CVec out = h;
    for (std::size_t i = 0; i < X.rows; ++i) {
        Cplx acc{0.0, 0.0};
        const Cplx* row = &X.a[i * X.cols];
        for (std::size_t j = 0; j < X.cols; ++j) acc += std::conj(row[j]) * we[j];
        out[i] += mu * acc;
    }
    return out;
}

CVec vss_p_hat(const CVec& p_hat, const CMat& X, const CVec& e, double beta, double eps) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw config_error("vss_p_hat: beta must lie in [0, 1]");
    const CMat W = hermitian_pd_inverse(conjugate(regularized_gram(X, eps)));
    const CVec we = matvec(W, e);
    CVec out(p_hat.size());
    for (std::size_t i = 0; i < p_hat.size(); ++i) {
        Cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < X.cols; ++j) acc += std::conj(X(i, j)) * we[j];
        out[i] = beta * p_hat[i] + (1.0 - beta) * acc;
    }
    return out;
}

double vss_mu(const CVec& p_hat, double psi, double mu_max) {
    if (!(psi > 0.0)) throw config_error("vss_mu: psi must be positive");
    if (!(mu_max > 0.0)) throw config_error("vss_mu: mu_max must be positive");
    const double p2 = squared_norm(p_hat);
    return mu_max * p2 / (p2 + psi);
}

double msd(const CVec& h, const SysIdScenario& scenario) {
    if (h.size() != scenario.h_true.size()) throw std::invalid_argument("msd: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) acc += std::norm(scenario.h_true[i] - h[i]);
    return acc;
}

double oracle_optimal_mu(const CVec& eps_vec, const CMat& X, const CMat& W, double sigma_v2) {
    // B = conj(X)*W, C = B*X^T; evaluated without forming the M x M product
    const CMat B = matmul(conjugate(X), W);
    double b_frob2 = 0.0;
    for (const Cplx& z : B.a) b_frob2 += std::norm(z);

    const CVec xt = matvec_transpose(X, eps_vec); // X^T eps, the a-priori direction
    const CVec c_eps = matvec(B, xt);             // C eps
    const double num = std::max(0.0, dot_conj(eps_vec, c_eps).real());
    const double den = squared_norm(c_eps) + sigma_v2 * b_frob2;
    if (!(den > 0.0)) return 0.0;
    return num / den;
}

FilterState::FilterState(AlgorithmSpec spec, std::size_t num_taps, double noise_variance)
    : spec_(std::move(spec)),
      M_(num_taps),
      L_(spec_.effective_order()),
      h_(num_taps, Cplx{0.0, 0.0}),
      p_hat_(num_taps, Cplx{0.0, 0.0}),
      window_(num_taps + spec_.effective_order() - 1),
      d_hist_(spec_.effective_order(), Cplx{0.0, 0.0}),
      noise_variance_(noise_variance) {
    spec_.validate();
    if (M_ < 1) throw config_error("filter needs at least one tap");
    if (L_ > M_) throw config_error("projection order cannot exceed the tap count");
    if (spec_.psi.kind == PsiMode::Kind::adaptive) recent_norms_.resize(kNormWindow, 0.0);
    update_psi();
}

void FilterState::set_weights(CVec h) {
    if (h.size() != M_) throw std::invalid_argument("set_weights: length mismatch");
    if (!all_finite(h)) throw numeric_error("set_weights: non-finite weights");
    h_ = std::move(h);
}

void FilterState::update_psi() {
    if (spec_.psi.kind == PsiMode::Kind::adaptive) {
        psi_ = psi_value(spec_.psi, L_, noise_variance_,
                         std::span<const double>(recent_norms_.data(), norms_count_));
    } else {
        psi_ = psi_value(spec_.psi, L_, noise_variance_, {});
    }
}

Cplx FilterState::predict(Cplx x_new) const {
    Cplx acc = x_new * h_[0];
    for (std::size_t i = 1; i < M_; ++i) acc += window_.at(i - 1) * h_[i];
    return acc;
}

StepRecord FilterState::step(Cplx x_new, Cplx d_new) {
    if (!std::isfinite(x_new.real()) || !std::isfinite(x_new.imag()) ||
        !std::isfinite(d_new.real()) || !std::isfinite(d_new.imag()))
        throw numeric_error("filter step: non-finite input sample at iteration " +
                            std::to_string(iter_));

    window_.push(x_new);
    for (std::size_t j = d_hist_.size(); j-- > 1;) d_hist_[j] = d_hist_[j - 1];
    d_hist_[0] = d_new;

    StepRecord rec;
    const auto win = window_.samples();
    rec.output = dot_plain(win.subspan(0, M_), std::span<const Cplx>(h_));
    rec.prior_error = d_new - rec.output;

    if (spec_.psi.kind == PsiMode::Kind::adaptive) {
        recent_norms_[norms_next_] = squared_norm(win.subspan(0, M_));
        norms_next_ = (norms_next_ + 1) % recent_norms_.size();
        norms_count_ = std::min(norms_count_ + 1, recent_norms_.size());
        update_psi();
    }

    switch (spec_.variant) {
        case Variant::lms: {
            const Cplx scaled = spec_.mu * rec.prior_error;
            for (std::size_t i = 0; i < M_; ++i) h_[i] += std::conj(win[i]) * scaled;
            rec.mu_used = spec_.mu;
            rec.updated = true;
            break;
        }
        case Variant::nlms: {
            const double n2 = squared_norm(win.subspan(0, M_));
            const Cplx scaled = spec_.mu / (spec_.eps + n2) * rec.prior_error;
            for (std::size_t i = 0; i < M_; ++i) h_[i] += std::conj(win[i]) * scaled;
            rec.mu_used = spec_.mu;
            rec.updated = true;
            break;
        }
        case Variant::vss_nlms: {
            const double n2 = squared_norm(win.subspan(0, M_));
            const Cplx dir = rec.prior_error / (spec_.eps + n2);
            for (std::size_t i = 0; i < M_; ++i)
                p_hat_[i] = spec_.beta * p_hat_[i] + (1.0 - spec_.beta) * std::conj(win[i]) * dir;
            const double mu_n = vss_mu(p_hat_, psi_, spec_.mu_max);
            for (std::size_t i = 0; i < M_; ++i) h_[i] += mu_n * (std::conj(win[i]) * dir);
            rec.mu_used = mu_n;
            rec.updated = true;
            break;
        }
        case Variant::apa:
        case Variant::rapa:
        case Variant::pra: {
            const bool boundary = !spec_.block_scheduled() || block_phase_ == 0;
            if (boundary) {
                const CMat X = regressor_matrix(window_, M_, L_);
                const CVec e = error_vector(d_hist_, X, h_);
                const CMat W = weighting_matrix(spec_, X);
                h_ = generic_update(h_, X, W, e, spec_.mu);
                rec.mu_used = spec_.mu;
                rec.updated = true;
                if (spec_.block_scheduled()) block_phase_ = spec_.hold_length();
            } else {
                --block_phase_;
            }
            break;
        }
        case Variant::vss_apa:
        case Variant::vsspr: {
            const CMat X = regressor_matrix(window_, M_, L_);
            const CVec e = error_vector(d_hist_, X, h_);
            const CMat W = weighting_matrix(spec_, X);
            const CVec we = matvec(W, e);
            CVec q(M_);
            for (std::size_t i = 0; i < M_; ++i) {
                Cplx acc{0.0, 0.0};
                for (std::size_t j = 0; j < L_; ++j) acc += std::conj(X(i, j)) * we[j];
                q[i] = acc;
            }
            // p-hat is refreshed every iteration, even while the weights hold
            for (std::size_t i = 0; i < M_; ++i)
                p_hat_[i] = spec_.beta * p_hat_[i] + (1.0 - spec_.beta) * q[i];
            const bool boundary = !spec_.block_scheduled() || block_phase_ == 0;
            if (boundary) {
                const double mu_n = vss_mu(p_hat_, psi_, spec_.mu_max);
                for (std::size_t i = 0; i < M_; ++i) h_[i] += mu_n * q[i];
                rec.mu_used = mu_n;
                rec.updated = true;
                if (spec_.block_scheduled()) block_phase_ = spec_.hold_length();
            } else {
                --block_phase_;
            }
            break;
        }
    }

    ++iter_;
    return rec;
}

} // namespace eqsim
