#include "acsgeo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace acsgeo {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::outer(const CVector& u, const CVector& v) {
    CMatrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    CMatrix r = *this;
    r += o;
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    CMatrix r = *this;
    r -= o;
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    CMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

CMatrix CMatrix::operator*(cplx s) const {
    CMatrix r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
}

CVector CMatrix::operator*(const CVector& v) const {
    CVector r(rows_, cplx(0.0));
    for (int i = 0; i < rows_; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conjugate() const {
    CMatrix r = *this;
    for (auto& x : r.a_) x = std::conj(x);
    return r;
}

CMatrix CMatrix::adjoint() const { return transpose().conjugate(); }

CMatrix CMatrix::real_part() const {
    CMatrix r = *this;
    for (auto& x : r.a_) x = cplx(x.real(), 0.0);
    return r;
}

CMatrix CMatrix::imag_part() const {
    CMatrix r = *this;
    for (auto& x : r.a_) x = cplx(x.imag(), 0.0);
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& x : a_) s = std::max(s, std::abs(x));
    return s;
}

CMatrix operator*(cplx s, const CMatrix& m) { return m * s; }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix inverse(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::runtime_error("inverse: matrix not square");
    const int n = m.rows();
    CMatrix a = m;
    CMatrix inv = CMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > best) { best = std::abs(a(r, col)); piv = r; }
        if (best < 1e-300) throw std::runtime_error("inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const cplx d = a(col, col);
        for (int j = 0; j < n; ++j) { a(col, j) /= d; inv(col, j) /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = a(r, col);
            if (f == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

CVector solve(const CMatrix& m, const CVector& rhs) { return inverse(m) * rhs; }

cplx bilinear_dot(const CVector& u, const CVector& v) {
    cplx s = 0.0;
    for (size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
    return s;
}

cplx hermitian_dot(const CVector& u, const CVector& v) {
    cplx s = 0.0;
    for (size_t k = 0; k < u.size(); ++k) s += u[k] * std::conj(v[k]);
    return s;
}

double vec_norm(const CVector& v) { return std::sqrt(hermitian_dot(v, v).real()); }

CVector operator+(const CVector& u, const CVector& v) {
    CVector r = u;
    for (size_t k = 0; k < r.size(); ++k) r[k] += v[k];
    return r;
}

CVector operator-(const CVector& u, const CVector& v) {
    CVector r = u;
    for (size_t k = 0; k < r.size(); ++k) r[k] -= v[k];
    return r;
}

CVector operator*(cplx s, const CVector& v) {
    CVector r = v;
    for (auto& x : r) x *= s;
    return r;
}

RVector operator+(const RVector& u, const RVector& v) {
    RVector r = u;
    for (size_t k = 0; k < r.size(); ++k) r[k] += v[k];
    return r;
}

RVector operator-(const RVector& u, const RVector& v) {
    RVector r = u;
    for (size_t k = 0; k < r.size(); ++k) r[k] -= v[k];
    return r;
}

RVector operator*(double s, const RVector& v) {
    RVector r = v;
    for (auto& x : r) x *= s;
    return r;
}

double dot(const RVector& u, const RVector& v) {
    double s = 0.0;
    for (size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
    return s;
}

double norm(const RVector& u) { return std::sqrt(dot(u, u)); }

RVector normalized(const RVector& u) {
    const double n = norm(u);
    if (n == 0.0) throw std::runtime_error("normalized: zero vector");
    return (1.0 / n) * u;
}

CVector to_complex(const RVector& v) {
    CVector r(v.size());
    for (size_t k = 0; k < v.size(); ++k) r[k] = cplx(v[k], 0.0);
    return r;
}

RVector real_vec(const CVector& v) {
    RVector r(v.size());
    for (size_t k = 0; k < v.size(); ++k) r[k] = v[k].real();
    return r;
}

RVector imag_vec(const CVector& v) {
    RVector r(v.size());
    for (size_t k = 0; k < v.size(); ++k) r[k] = v[k].imag();
    return r;
}

RVector mul_real(const CMatrix& m, const RVector& v) {
    RVector r(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j).real() * v[j];
        r[i] = acc;
    }
    return r;
}

double gram_schmidt_drop_tol(const std::vector<CVector>& vs) {
    double mx = 0.0;
    for (const auto& v : vs) mx = std::max(mx, vec_norm(v));
    return 1e-10 * mx;
}

std::vector<CVector> gram_schmidt_hermitian(const std::vector<CVector>& vs, double drop_tol) {
    std::vector<CVector> basis;
    for (const auto& v0 : vs) {
        CVector v = v0;
        // two orthogonalization passes for numerical stability
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v = v - hermitian_dot(v, b) * b;
        const double n = vec_norm(v);
        if (n <= drop_tol) continue;
        basis.push_back((1.0 / n) * v);
    }
    return basis;
}

std::pair<CMatrix, CMatrix> block_split(const CMatrix& P, const CMatrix& T) {
    const CMatrix Q = CMatrix::identity(P.rows()) - P;
    return {P * T * Q, Q * T * P};
}

cplx restricted_trace(const CMatrix& A, const std::vector<CVector>& basis, double check_tol) {
    if (basis.empty()) throw std::runtime_error("restricted_trace: empty basis");
    const int k = static_cast<int>(basis.size());

    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= i; ++j) {
            const cplx g = hermitian_dot(basis[i], basis[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10)
                throw std::runtime_error("restricted_trace: basis not orthonormal");
        }

    // Sum of diagonal matrix entries in the given basis; the off-span leak of
    // each image is bounded so the result really is a trace of a restriction.
    const double anorm = A.max_abs();
    cplx t = 0.0;
    for (int j = 0; j < k; ++j) {
        const CVector img = A * basis[j];
        CVector res = img;
        for (int i = 0; i < k; ++i) res = res - hermitian_dot(img, basis[i]) * basis[i];
        if (vec_norm(res) > check_tol * std::max(1.0, anorm))
            throw std::runtime_error("restricted_trace: operator does not preserve the span");
        t += hermitian_dot(img, basis[j]);
    }
    return t;
}

std::vector<double> symmetric_eigenvalues(const CMatrix& S) {
    const int n = S.rows();
    // copy of the real part; assumed symmetric
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = S(i, j).real();

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

double Rng::uniform() {
    // 53 high bits of the generator output; identical across platforms
    return static_cast<double>(g_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

RVector Rng::gaussian_vec(int n) {
    RVector v(n);
    for (auto& x : v) x = gaussian();
    return v;
}

CVector Rng::gaussian_cvec(int n) {
    CVector v(n);
    for (auto& x : v) {
        const double re = gaussian();
        const double im = gaussian();
        x = cplx(re, im);
    }
    return v;
}

}  // namespace acsgeo
