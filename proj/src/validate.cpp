#include "eqsim/validate.hpp"

#include "eqsim/equalizer.hpp"
#include "eqsim/errors.hpp"
#include "eqsim/filters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eqsim {

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

CVec random_unit_filter(std::size_t M, RngStream& rng) {
    CVec h(M);
    for (auto& c : h) c = gaussian_complex(rng, 1.0);
    const double n = std::sqrt(squared_norm(h));
    for (auto& c : h) c /= n;
    return h;
}

// Known-system data source shared by the checks below.
struct SysIdDriver {
    CVec h_true;
    RegressorWindow window;
    CVec d_hist;
    double noise_variance;

    SysIdDriver(CVec ht, std::size_t L, double sigma_v2)
        : h_true(std::move(ht)),
          window(h_true.size() + L - 1),
          d_hist(L, Cplx{0.0, 0.0}),
          noise_variance(sigma_v2) {}

    // pushes one sample, returns (x, d, v)
    std::tuple<Cplx, Cplx, Cplx> advance(RngStream& rng) {
        const Cplx x = gaussian_complex(rng, 1.0);
        window.push(x);
        const Cplx v = gaussian_complex(rng, noise_variance);
        const Cplx d =
            dot_plain(window.samples().subspan(0, h_true.size()), std::span<const Cplx>(h_true)) + v;
        for (std::size_t j = d_hist.size(); j-- > 1;) d_hist[j] = d_hist[j - 1];
        d_hist[0] = d;
        return {x, d, v};
    }
};

double max_weight_gap(const CVec& a, const CVec& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    return gap;
}

} // namespace

CheckResult check_reduction_lms(std::uint64_t seed, std::size_t steps) {
    constexpr std::size_t M = 16;
    constexpr double mu = 0.05;

    RngStream rng(seed, 101);
    CVec h_true = random_unit_filter(M, rng);
    SysIdDriver src(h_true, 1, 0.01);

    AlgorithmSpec spec;
    spec.variant = Variant::lms;
    spec.mu = mu;
    FilterState engine(spec, M);

    // standalone scalar LMS, written independently of the engine
    CVec w(M, Cplx{0.0, 0.0});
    CVec xbuf(M, Cplx{0.0, 0.0});

    double worst = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        auto [x, d, v] = src.advance(rng);
        (void)v;
        engine.step(x, d);

        for (std::size_t i = M; i-- > 1;) xbuf[i] = xbuf[i - 1];
        xbuf[0] = x;
        Cplx y{0.0, 0.0};
        for (std::size_t i = 0; i < M; ++i) y += xbuf[i] * w[i];
        const Cplx e = d - y;
        for (std::size_t i = 0; i < M; ++i) w[i] += mu * std::conj(xbuf[i]) * e;

        worst = std::max(worst, max_weight_gap(engine.weights(), w));
    }
    return {"reduction-lms", worst <= 1e-12,
            "max weight gap " + fmt(worst) + " over " + std::to_string(steps) + " steps"};
}

CheckResult check_reduction_nlms(std::uint64_t seed, std::size_t steps) {
    constexpr std::size_t M = 16;
    constexpr double mu = 0.7;
    constexpr double eps = 1e-4;

    RngStream rng(seed, 102);
    CVec h_true = random_unit_filter(M, rng);
    SysIdDriver src(h_true, 1, 0.01);

    AlgorithmSpec spec;
    spec.variant = Variant::nlms;
    spec.mu = mu;
    spec.eps = eps;
    FilterState engine(spec, M);

    CVec w(M, Cplx{0.0, 0.0});
    CVec xbuf(M, Cplx{0.0, 0.0});

    double worst = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        auto [x, d, v] = src.advance(rng);
        (void)v;
        engine.step(x, d);

        for (std::size_t i = M; i-- > 1;) xbuf[i] = xbuf[i - 1];
        xbuf[0] = x;
        Cplx y{0.0, 0.0};
        double norm2 = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            y += xbuf[i] * w[i];
            norm2 += std::norm(xbuf[i]);
        }
        const Cplx e = d - y;
        const Cplx g = mu / (eps + norm2) * e;
        for (std::size_t i = 0; i < M; ++i) w[i] += std::conj(xbuf[i]) * g;

        worst = std::max(worst, max_weight_gap(engine.weights(), w));
    }
    return {"reduction-nlms", worst <= 1e-12,
            "max weight gap " + fmt(worst) + " over " + std::to_string(steps) + " steps"};
}

CheckResult check_reduction_pra_apa(std::uint64_t seed, std::size_t steps) {
    constexpr std::size_t M = 16;
    constexpr std::size_t L = 4;

    RngStream rng(seed, 103);
    CVec h_true = random_unit_filter(M, rng);
    SysIdDriver src(h_true, L, 0.01);

    AlgorithmSpec pra;
    pra.variant = Variant::pra;
    pra.projection_order = L;
    pra.mu = 0.3;
    pra.alpha = 0; // degenerate block: update every iteration

    AlgorithmSpec rapa = pra;
    rapa.variant = Variant::rapa;
    rapa.alpha = 1;

    FilterState a(pra, M), b(rapa, M);

    double worst = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        auto [x, d, v] = src.advance(rng);
        (void)v;
        a.step(x, d);
        b.step(x, d);
        worst = std::max(worst, max_weight_gap(a.weights(), b.weights()));
    }
    return {"reduction-pra-apa", worst <= 1e-12,
            "max weight gap " + fmt(worst) + " over " + std::to_string(steps) + " steps"};
}

CheckResult check_projection(std::uint64_t seed, std::size_t updates) {
    constexpr std::size_t M = 35;
    constexpr std::size_t L = 4;
    constexpr double eps = 1e-12;

    RngStream rng(seed, 104);
    CVec h_true = random_unit_filter(M, rng);
    SysIdDriver src(h_true, L, 0.0); // noiseless

    AlgorithmSpec spec;
    spec.variant = Variant::apa;
    spec.projection_order = L;
    spec.mu = 1.0;
    spec.eps = eps;

    CVec h(M, Cplx{0.0, 0.0});
    double worst_ratio = 0.0;

    // fill the window first so X has full column rank
    for (std::size_t n = 0; n < M + L; ++n) src.advance(rng);

    for (std::size_t n = 0; n < updates; ++n) {
        src.advance(rng);
        const CMat X = regressor_matrix(src.window, M, L);
        const CVec e = error_vector(src.d_hist, X, h);
        const CMat W = weighting_matrix(spec, X);
        h = generic_update(h, X, W, e, spec.mu);

        const CVec post = error_vector(src.d_hist, X, h);
        const double dnorm = std::sqrt(squared_norm(src.d_hist));
        if (dnorm > 0.0)
            worst_ratio = std::max(worst_ratio, std::sqrt(squared_norm(post)) / dnorm);
    }

    bool gate_ok = false;
    try {
        RegressorWindow w(M + L - 1);
        regularized_gram(regressor_matrix(w, M, L), 0.0);
    } catch (const config_error&) {
        gate_ok = true; // eps = 0 must be refused
    }

    const bool pass = worst_ratio < 1e-6 && gate_ok;
    return {"projection", pass,
            "worst a-posteriori/desired ratio " + fmt(worst_ratio) + ", eps gate " +
                (gate_ok ? "ok" : "MISSING")};
}

CheckResult check_step_bounds(std::uint64_t seed, std::size_t steps) {
    constexpr std::size_t M = 16;
    constexpr std::size_t L = 4;
    constexpr double mu_max = 1.7;

    RngStream rng(seed, 105);
    CVec h_true = random_unit_filter(M, rng);
    SysIdDriver src(h_true, L, 1e-3);

    AlgorithmSpec spec;
    spec.variant = Variant::vsspr;
    spec.projection_order = L;
    spec.mu_max = mu_max;
    spec.psi.kind = PsiMode::Kind::fixed;
    spec.psi.value = 1e-4;
    FilterState state(spec, M, 1e-3);

    double lo = 0.0, hi = 0.0;
    bool in_range = true;
    for (std::size_t n = 0; n < steps; ++n) {
        auto [x, d, v] = src.advance(rng);
        (void)v;
        const StepRecord rec = state.step(x, d);
        lo = std::min(lo, rec.mu_used);
        hi = std::max(hi, rec.mu_used);
        if (!(rec.mu_used >= 0.0 && rec.mu_used < mu_max)) in_range = false;
    }

    // monotone in the squared norm at fixed psi
    bool monotone = true;
    double prev = -1.0;
    for (double p2 = 0.0; p2 <= 4.0; p2 += 0.01) {
        CVec p(1, Cplx{std::sqrt(p2), 0.0});
        const double m = vss_mu(p, 1e-4, mu_max);
        if (m < prev) monotone = false;
        prev = m;
    }

    return {"step-size-bounds", in_range && monotone,
            "mu range [" + fmt(lo) + ", " + fmt(hi) + ") of mu_max " + fmt(mu_max) +
                (monotone ? ", monotone" : ", NOT monotone")};
}

CheckResult check_psi_estimate(std::uint64_t seed, std::size_t draws) {
    constexpr std::size_t M = 35;
    constexpr std::size_t L = 4;
    constexpr double eps = 1e-4;
    constexpr double sigma_v2 = 1e-3;

    RngStream rng(seed, 106);
    std::vector<double> norms;
    norms.reserve(draws);
    double trace_sum = 0.0;

    for (std::size_t k = 0; k < draws; ++k) {
        RegressorWindow w(M + L - 1);
        for (std::size_t i = 0; i < M + L - 1; ++i) w.push(gaussian_complex(rng, 1.0));
        const CMat X = regressor_matrix(w, M, L);
        norms.push_back(squared_norm(w.samples().subspan(0, M)));

        const CMat inv = hermitian_pd_inverse(regularized_gram(X, eps));
        for (std::size_t j = 0; j < L; ++j) trace_sum += inv(j, j).real();
    }

    PsiMode adaptive;
    adaptive.kind = PsiMode::Kind::adaptive;
    const double psi_adaptive = psi_value(adaptive, L, sigma_v2, norms);
    const double psi_direct = sigma_v2 * trace_sum / static_cast<double>(draws);
    const double rel = std::abs(psi_adaptive - psi_direct) / psi_direct;

    PsiMode from_snr;
    from_snr.kind = PsiMode::Kind::from_snr;
    from_snr.snr_linear = 1000.0;
    const double psi_snr = psi_value(from_snr, L, 0.0, {});
    const bool snr_exact = psi_snr == 0.004;

    return {"psi-estimate", rel <= 0.10 && snr_exact,
            "adaptive " + fmt(psi_adaptive) + " vs direct trace " + fmt(psi_direct) +
                " (rel dev " + fmt(rel) + "), 30 dB value " + fmt(psi_snr)};
}

CheckResult check_optimal_step(std::uint64_t seed, std::size_t trials) {
    constexpr std::size_t M = 8;
    constexpr std::size_t L = 2;
    constexpr double eps = 1e-4;
    constexpr double sigma_v2 = 0.05;

    RngStream rng(seed, 107);
    const CVec eps_vec = random_unit_filter(M, rng); // h = 0, so the weight error is h_true

    double num12 = 0.0, den12 = 0.0, tr_bb = 0.0;
    double e1 = 0.0, e2 = 0.0; // grid-route moments

    for (std::size_t t = 0; t < trials; ++t) {
        RegressorWindow w(M + L - 1);
        for (std::size_t i = 0; i < M + L - 1; ++i) w.push(gaussian_complex(rng, 1.0));
        const CMat X = regressor_matrix(w, M, L);

        CVec v(L);
        for (auto& z : v) z = gaussian_complex(rng, sigma_v2);

        const CMat W = hermitian_pd_inverse(conjugate(regularized_gram(X, eps)));
        const CMat B = matmul(conjugate(X), W);

        const CVec xte = matvec_transpose(X, eps_vec); // X^T eps, the a-priori error
        const CVec c_eps = matvec(B, xte);

        num12 += dot_conj(eps_vec, c_eps).real();
        den12 += squared_norm(c_eps);
        for (const Cplx& z : B.a) tr_bb += std::norm(z);

        // measured-error moments from an antithetic noise pair (+v, -v)
        CVec e_plus(L), e_minus(L);
        for (std::size_t j = 0; j < L; ++j) {
            e_plus[j] = xte[j] + v[j];
            e_minus[j] = xte[j] - v[j];
        }
        const CVec be_p = matvec(B, e_plus);
        const CVec be_m = matvec(B, e_minus);
        e1 += 0.5 * (squared_norm(be_p) + squared_norm(be_m));
        e2 += 0.5 * (dot_conj(be_p, eps_vec).real() + dot_conj(be_m, eps_vec).real());
    }
    const double n = static_cast<double>(trials);
    const double mu_formula = (num12 / n) / (den12 / n + sigma_v2 * tr_bb / n);

    // brute-force maximization of the expected MSD decrease
    double best_mu = 0.0, best_gain = -1e300;
    for (int k = 0; k <= 2000; ++k) {
        const double mu = 1e-3 * k;
        const double gain = 2.0 * mu * (e2 / n) - mu * mu * (e1 / n);
        if (gain > best_gain) {
            best_gain = gain;
            best_mu = mu;
        }
    }

    const double dev = std::abs(mu_formula - best_mu);
    return {"optimal-step", dev <= 2e-3 + 1e-12,
            "formula " + fmt(mu_formula) + " vs grid argmax " + fmt(best_mu) + ", deviation " +
                fmt(dev)};
}

CheckResult check_msd_descent(std::uint64_t seed, std::size_t trials, std::size_t iterations) {
    constexpr std::size_t M = 8;
    constexpr std::size_t L = 2;
    constexpr double eps = 1e-4;
    constexpr double sigma_v2 = 1e-3;

    AlgorithmSpec spec;
    spec.variant = Variant::rapa;
    spec.projection_order = L;
    spec.mu = 1.0; // replaced by the oracle value below
    spec.eps = eps;

    std::vector<double> sum(iterations, 0.0), sumsq(iterations, 0.0);

    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(seed, 200 + t);
        CVec h_true = random_unit_filter(M, rng);
        SysIdDriver src(h_true, L, sigma_v2);
        CVec h(M, Cplx{0.0, 0.0});

        for (std::size_t n = 0; n < iterations; ++n) {
            src.advance(rng);
            const CMat X = regressor_matrix(src.window, M, L);
            const CVec e = error_vector(src.d_hist, X, h);
            const CMat W = weighting_matrix(spec, X);

            CVec eps_vec(M);
            for (std::size_t i = 0; i < M; ++i) eps_vec[i] = h_true[i] - h[i];
            const double mu = oracle_optimal_mu(eps_vec, X, W, sigma_v2);
            h = generic_update(h, X, W, e, mu);

            double m = 0.0;
            for (std::size_t i = 0; i < M; ++i) m += std::norm(h_true[i] - h[i]);
            sum[n] += m;
            sumsq[n] += m * m;
        }
    }

    const double nt = static_cast<double>(trials);
    bool ok = true;
    double worst_rise = 0.0;
    for (std::size_t n = 1; n < iterations; ++n) {
        const double mean_prev = sum[n - 1] / nt;
        const double mean_cur = sum[n] / nt;
        const double var = std::max(0.0, sumsq[n] / nt - mean_cur * mean_cur);
        const double se = std::sqrt(var / nt);
        const double rise = mean_cur - mean_prev;
        worst_rise = std::max(worst_rise, rise - se);
        if (rise > se) ok = false;
    }
    return {"msd-descent", ok,
            std::string("trial-averaged MSD ") + (ok ? "nonincreasing" : "ROSE") +
                " (worst excess " + fmt(worst_rise) + ")"};
}

CheckResult check_error_decomposition(std::uint64_t seed, std::size_t steps) {
    constexpr std::size_t M = 12;
    constexpr std::size_t L = 3;
    constexpr double sigma_v2 = 0.1;

    RngStream rng(seed, 108);
    CVec h_true = random_unit_filter(M, rng);
    SysIdDriver src(h_true, L, sigma_v2);

    CVec h(M, Cplx{0.0, 0.0});
    CVec v_hist(L, Cplx{0.0, 0.0});
    for (auto& c : h) c = gaussian_complex(rng, 0.5); // any fixed nonzero filter works

    double worst = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        auto [x, d, v] = src.advance(rng);
        (void)x;
        (void)d;
        for (std::size_t j = L; j-- > 1;) v_hist[j] = v_hist[j - 1];
        v_hist[0] = v;
        if (n + 1 < L) continue; // wait until the noise history is populated

        const CMat X = regressor_matrix(src.window, M, L);
        const CVec e = error_vector(src.d_hist, X, h);
        CVec eps_vec(M);
        for (std::size_t i = 0; i < M; ++i) eps_vec[i] = h_true[i] - h[i];
        const CVec e_a = matvec_transpose(X, eps_vec);
        for (std::size_t j = 0; j < L; ++j)
            worst = std::max(worst, std::abs(e[j] - (e_a[j] + v_hist[j])));
    }
    return {"error-decomposition", worst <= 1e-12,
            "max |e - (e_a + v)| = " + fmt(worst)};
}

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
    return {
        check_reduction_lms(seed),     check_reduction_nlms(seed),
        check_reduction_pra_apa(seed), check_projection(seed),
        check_step_bounds(seed),       check_psi_estimate(seed),
        check_optimal_step(seed),      check_msd_descent(seed),
        check_error_decomposition(seed),
    };
}

} // namespace eqsim
