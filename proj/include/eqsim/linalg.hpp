#ifndef EQSIM_LINALG_HPP
#define EQSIM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace eqsim {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

// Dense row-major complex matrix. Sizes here are tiny (M ~ 35, L <= 8);
// everything is written for clarity over blocking.
struct CMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    CVec a;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static CMat identity(std::size_t n);
};

// sum_i conj(a[i]) * b[i]
Cplx dot_conj(std::span<const Cplx> a, std::span<const Cplx> b);

// sum_i a[i] * b[i] (no conjugation)
Cplx dot_plain(std::span<const Cplx> a, std::span<const Cplx> b);

CMat conjugate(const CMat& A);

double squared_norm(std::span<const Cplx> v);

bool all_finite(std::span<const Cplx> v);

// y = A * x
CVec matvec(const CMat& A, const CVec& x);

// y = A^H * x
CVec matvec_conj(const CMat& A, const CVec& x);

// y = A^T * x (no conjugation)
CVec matvec_transpose(const CMat& A, const CVec& x);

CMat matmul(const CMat& A, const CMat& B);

// Sliding history of the newest `capacity` input samples, newest first.
// Positions never pushed hold exactly zero (cold-start padding).
class RegressorWindow {
public:
    explicit RegressorWindow(std::size_t capacity) : buf_(capacity, Cplx{0.0, 0.0}) {}

    void push(Cplx u) {
        for (std::size_t i = buf_.size(); i-- > 1;) buf_[i] = buf_[i - 1];
        if (!buf_.empty()) buf_[0] = u;
    }

    Cplx at(std::size_t k) const { return buf_[k]; }
    std::size_t capacity() const { return buf_.size(); }
    std::span<const Cplx> samples() const { return buf_; }

private:
    std::vector<Cplx> buf_;
};

// M x L matrix whose column j holds the window at offsets j .. j+M-1,
// i.e. the regressor delayed by j samples. Requires capacity >= M+L-1.
CMat regressor_matrix(const RegressorWindow& w, std::size_t M, std::size_t L);

// eps*I + X^H X, built Hermitian by construction (real diagonal, mirrored
// off-diagonals). eps must be positive.
CMat regularized_gram(const CMat& X, double eps);

// Inverse of a small Hermitian positive definite matrix via pivoted
// Gauss-Jordan. The result is re-symmetrized so inv(G) == inv(G)^H exactly.
// Throws numeric_error on non-finite entries or a vanishing pivot.
CMat hermitian_pd_inverse(const CMat& G);

} // namespace eqsim

#endif // EQSIM_LINALG_HPP
