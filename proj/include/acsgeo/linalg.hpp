#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace acsgeo {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

// Dense row-major complex matrix. Ambient dimensions in this library are
// tiny (<= 16), so everything is direct loops; no blocking, no pivot-free
// shortcuts.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n);
    // u v^* (conjugates v)
    static CMatrix outer(const CVector& u, const CVector& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator*(cplx s) const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);

    CVector operator*(const CVector& v) const;

    CMatrix transpose() const;
    CMatrix conjugate() const;
    CMatrix adjoint() const;
    CMatrix real_part() const;   // Re entries, imaginary parts zeroed
    CMatrix imag_part() const;   // Im entries as a real-valued matrix

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMatrix operator*(cplx s, const CMatrix& m);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Gaussian elimination with partial pivoting; throws std::runtime_error on
// a numerically singular matrix.
CMatrix inverse(const CMatrix& m);
CVector solve(const CMatrix& m, const CVector& rhs);

// sum u_k v_k, complex-linear in both arguments
cplx bilinear_dot(const CVector& u, const CVector& v);
// sum u_k conj(v_k): conjugate-linear in the SECOND argument
cplx hermitian_dot(const CVector& u, const CVector& v);
double vec_norm(const CVector& v);

CVector operator+(const CVector& u, const CVector& v);
CVector operator-(const CVector& u, const CVector& v);
CVector operator*(cplx s, const CVector& v);

// Real-vector helpers for points and tangents.
RVector operator+(const RVector& u, const RVector& v);
RVector operator-(const RVector& u, const RVector& v);
RVector operator*(double s, const RVector& v);
double dot(const RVector& u, const RVector& v);
double norm(const RVector& u);
RVector normalized(const RVector& u);

CVector to_complex(const RVector& v);
RVector real_vec(const CVector& v);
RVector imag_vec(const CVector& v);
// Apply a matrix with (numerically) real entries to a real vector.
RVector mul_real(const CMatrix& m, const RVector& v);

// Modified Gram-Schmidt under the Hermitian inner product, two passes per
// vector; vectors whose remainder drops below drop_tol are discarded.
// Returns an orthonormal spanning set of the input span.
std::vector<CVector> gram_schmidt_hermitian(const std::vector<CVector>& vs, double drop_tol);
// Default drop tolerance: 1e-10 * (largest input norm).
double gram_schmidt_drop_tol(const std::vector<CVector>& vs);

// B = P T (I-P), C = (I-P) T P for an idempotent P.
std::pair<CMatrix, CMatrix> block_split(const CMatrix& P, const CMatrix& T);

// Trace of A restricted to span(basis); requires an orthonormal basis
// (Hermitian, within 1e-10) and A to preserve the span (off-span leak
// checked against check_tol * scale). Throws std::runtime_error otherwise.
cplx restricted_trace(const CMatrix& A, const std::vector<CVector>& basis,
                      double check_tol = 1e-8);

// Eigenvalues of a small real symmetric matrix by cyclic Jacobi sweeps.
std::vector<double> symmetric_eigenvalues(const CMatrix& S);

// Deterministic RNG used everywhere: fixed bit-derivation from
// mt19937_64 so streams are stable across platforms and thread counts.
class Rng {
public:
    explicit Rng(uint64_t seed) : g_(seed) {}
    double uniform();                    // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();                   // Box-Muller, no cached spare
    RVector gaussian_vec(int n);
    CVector gaussian_cvec(int n);

private:
    std::mt19937_64 g_;
};

}  // namespace acsgeo
