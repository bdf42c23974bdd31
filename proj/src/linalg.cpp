#include "eqsim/linalg.hpp"

#include "eqsim/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace eqsim {

CMat CMat::identity(std::size_t n) {
    CMat I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = Cplx{1.0, 0.0};
    return I;
}

Cplx dot_conj(std::span<const Cplx> a, std::span<const Cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot_conj: length mismatch");
    Cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

Cplx dot_plain(std::span<const Cplx> a, std::span<const Cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot_plain: length mismatch");
    Cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

CMat conjugate(const CMat& A) {
    CMat out(A.rows, A.cols);
    for (std::size_t i = 0; i < A.a.size(); ++i) out.a[i] = std::conj(A.a[i]);
    return out;
}

double squared_norm(std::span<const Cplx> v) {
    double acc = 0.0;
    for (const Cplx& z : v) acc += std::norm(z);
    return acc;
}

bool all_finite(std::span<const Cplx> v) {
    for (const Cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CVec matvec(const CMat& A, const CVec& x) {
    if (x.size() != A.cols) throw std::invalid_argument("matvec: dimension mismatch");
    CVec y(A.rows, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < A.rows; ++i) {
        Cplx acc{0.0, 0.0};
        const Cplx* row = &A.a[i * A.cols];
        for (std::size_t j = 0; j < A.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

CVec matvec_conj(const CMat& A, const CVec& x) {
    if (x.size() != A.rows) throw std::invalid_argument("matvec_conj: dimension mismatch");
    CVec y(A.cols, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < A.rows; ++i) {
        const Cplx xi = x[i];
        const Cplx* row = &A.a[i * A.cols];
        for (std::size_t j = 0; j < A.cols; ++j) y[j] += std::conj(row[j]) * xi;
    }
    return y;
}

CVec matvec_transpose(const CMat& A, const CVec& x) {
    if (x.size() != A.rows) throw std::invalid_argument("matvec_transpose: dimension mismatch");
    CVec y(A.cols, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < A.rows; ++i) {
        const Cplx xi = x[i];
        const Cplx* row = &A.a[i * A.cols];
        for (std::size_t j = 0; j < A.cols; ++j) y[j] += row[j] * xi;
    }
    return y;
}

CMat matmul(const CMat& A, const CMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: dimension mismatch");
    CMat C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const Cplx aik = A(i, k);
            for (std::size_t j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

CMat regressor_matrix(const RegressorWindow& w, std::size_t M, std::size_t L) {
    if (w.capacity() < M + L - 1)
        throw config_error("regressor_matrix: window capacity smaller than M+L-1");
    CMat X(M, L);
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t i = 0; i < M; ++i) X(i, j) = w.at(j + i);
    return X;
}

CMat regularized_gram(const CMat& X, double eps) {
    if (!(eps > 0.0)) throw config_error("regularized_gram: eps must be positive");
    const std::size_t L = X.cols;
    CMat G(L, L);
    for (std::size_t j = 0; j < L; ++j) {
        // diagonal accumulated as a real norm so G(j,j) has zero imaginary part
        double d = 0.0;
        for (std::size_t i = 0; i < X.rows; ++i) d += std::norm(X(i, j));
        G(j, j) = Cplx{d + eps, 0.0};
        for (std::size_t k = j + 1; k < L; ++k) {
            Cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < X.rows; ++i) acc += std::conj(X(i, j)) * X(i, k);
            G(j, k) = acc;
            G(k, j) = std::conj(acc);
        }
    }
    return G;
}

CMat hermitian_pd_inverse(const CMat& G) {
    if (G.rows != G.cols) throw std::invalid_argument("hermitian_pd_inverse: matrix not square");
    if (!all_finite(G.a)) throw numeric_error("hermitian_pd_inverse: non-finite entries");

    const std::size_t n = G.rows;
    CMat A = G;
    CMat R = CMat::identity(n);

    // Gauss-Jordan with partial pivoting over [A | R].
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(A(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = std::abs(A(r, col));
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (!(best >= 1e-300))
            throw numeric_error("hermitian_pd_inverse: numerically singular pivot");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(A(col, j), A(piv, j));
                std::swap(R(col, j), R(piv, j));
            }
            std::swap(perm[col], perm[piv]);
        }
        const Cplx inv_piv = Cplx{1.0, 0.0} / A(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            A(col, j) *= inv_piv;
            R(col, j) *= inv_piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Cplx f = A(r, col);
            if (f == Cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                A(r, j) -= f * A(col, j);
                R(r, j) -= f * R(col, j);
            }
        }
    }

    // Re-symmetrize: the true inverse of a Hermitian matrix is Hermitian.
    for (std::size_t i = 0; i < n; ++i) {
        R(i, i) = Cplx{R(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Cplx avg = 0.5 * (R(i, j) + std::conj(R(j, i)));
            R(i, j) = avg;
            R(j, i) = std::conj(avg);
        }
    }
    if (!all_finite(R.a)) throw numeric_error("hermitian_pd_inverse: non-finite result");
    return R;
}

} // namespace eqsim
