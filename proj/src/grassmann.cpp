#include "acsgeo/grassmann.hpp"

#include <cmath>

namespace acsgeo {

Projector make_projector(const CMatrix& m) {
    Projector p;
    p.mat = m;
    p.rank = static_cast<int>(std::lround(m.trace().real()));
    p.idem_residual = (m * m - m).max_abs();
    p.selfadj_residual = (m.adjoint() - m).max_abs();
    return p;
}

GrassTangent make_tangent(const Projector& P, const CMatrix& T) {
    GrassTangent t;
    t.mat = T;
    auto [B, C] = block_split(P.mat, T);
    t.B = B;
    t.C = C;
    t.tangency_residual = (P.mat * T + T * P.mat - T).max_abs();
    return t;
}

namespace {

void check_tangent(const Projector& P, const GrassTangent& T, const char* who) {
    const CMatrix& m = T.mat;
    const double r = (P.mat * m + m * P.mat - m).max_abs();
    if (r > 1e-3 * (1.0 + m.max_abs()))
        throw std::runtime_error(std::string(who) + ": tangency violation, residual " +
                                 std::to_string(r));
}

}  // namespace

cplx omega(const Projector& P, const GrassTangent& S, const GrassTangent& T) {
    check_tangent(P, S, "omega");
    check_tangent(P, T, "omega");
    return (P.mat * commutator(S.mat, T.mat)).trace() / cplx(0.0, 2.0);
}

GrassTangent grassmann_K(const Projector& P, const GrassTangent& T) {
    if (P.selfadj_residual > 1e-8)
        throw std::runtime_error("grassmann_K: projector not self-adjoint");
    check_tangent(P, T, "grassmann_K");
    return make_tangent(P, cplx(0.0, 1.0) * (T.mat * P.mat - P.mat * T.mat));
}

namespace {

// orthonormal basis of the image of an idempotent applied to the
// coordinate directions
std::vector<CVector> image_basis(const CMatrix& P) {
    const int n = P.rows();
    std::vector<CVector> cand;
    for (int j = 0; j < n; ++j) {
        CVector e(n, cplx(0.0));
        e[j] = 1.0;
        cand.push_back(P * e);
    }
    return gram_schmidt_hermitian(cand, gram_schmidt_drop_tol(cand));
}

CMatrix columns(const std::vector<CVector>& vs) {
    const int n = static_cast<int>(vs[0].size());
    const int k = static_cast<int>(vs.size());
    CMatrix m(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = vs[j][i];
    return m;
}

}  // namespace

CMatrix taming_acs(const Projector& P, const GrassTangent& T) {
    const int n = P.mat.rows();
    const CMatrix I = CMatrix::identity(n);
    const CMatrix U = columns(image_basis(P.mat));
    const CMatrix V = columns(image_basis(I - P.mat));
    const CMatrix beta = U.adjoint() * T.B * V;
    const CMatrix gamma = V.adjoint() * T.C * U;
    const CMatrix Bstar = V * beta.adjoint() * U.adjoint() * P.mat;
    const CMatrix Cstar = U * gamma.adjoint() * V.adjoint() * (I - P.mat);
    return cplx(0.0, 1.0) * Bstar - cplx(0.0, 1.0) * Cstar;
}

double taming_check(const Projector& P, const GrassTangent& T) {
    check_tangent(P, T, "taming_check");
    return omega(P, T, make_tangent(P, taming_acs(P, T))).real();
}

Projector canonical_P(const AcsField& f, const RVector& p) {
    if (!f.on_sphere())
        throw std::runtime_error("canonical_P: sphere fields only");
    const RVector q = normalized(p);
    CMatrix m = p_minus(f, q);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) += q[i] * q[j];
    return make_projector(m);
}

Projector perp_P(const AcsField& f, const RVector& p) {
    if (!f.on_sphere())
        throw std::runtime_error("perp_P: sphere fields only");
    const RVector q = normalized(p);
    CMatrix m = jrm_split(f, q).Q;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) += q[i] * q[j];
    return make_projector(m);
}

GrassTangent d_map(const AcsField& f, const RVector& p, const RVector& X, MapKind kind,
                   double step) {
    const double h = step > 0.0 ? step : default_step(f);
    const RVector q = normalized(p);
    auto map_at = [&](const RVector& r) {
        return kind == MapKind::Canonical ? canonical_P(f, r).mat : perp_P(f, r).mat;
    };
    const CMatrix d = fd4_matrix(
        [&](double t) { return map_at(geodesic(q, X, t)); }, h);
    const Projector P = kind == MapKind::Canonical ? canonical_P(f, q) : perp_P(f, q);
    return make_tangent(P, d);
}

double pullback_reomega_fd(const AcsField& f, const RVector& p, const RVector& X,
                           const RVector& Y, double step) {
    const Projector P = canonical_P(f, p);
    const GrassTangent tx = d_map(f, p, X, MapKind::Canonical, step);
    const GrassTangent ty = d_map(f, p, Y, MapKind::Canonical, step);
    return omega(P, tx, ty).real();
}

double pullback_reomega_closed(const AcsField& f, const RVector& p, const RVector& X,
                               const RVector& Y, double step) {
    const cplx ct = commutator_trace_t01(f, p, X, Y, step);
    const CMatrix J = f.J(p);
    return -0.125 * ct.imag() - 0.25 * dot(X, mul_real(J, Y)) +
           0.25 * dot(Y, mul_real(J, X));
}

double pullback_reomega(const AcsField& f, const RVector& p, const RVector& X,
                        const RVector& Y, PullbackMode mode, double step) {
    return mode == PullbackMode::Fd ? pullback_reomega_fd(f, p, X, Y, step)
                                    : pullback_reomega_closed(f, p, X, Y, step);
}

double pullback_kahler_fd(const AcsField& f, const RVector& p, const RVector& X,
                          const RVector& Y, double step) {
    const GrassTangent tx = d_map(f, p, X, MapKind::Perp, step);
    const GrassTangent ty = d_map(f, p, Y, MapKind::Perp, step);
    return (tx.B * ty.B.adjoint()).trace().imag();
}

double pullback_kahler_closed(const AcsField& f, const RVector& p, const RVector& X,
                              const RVector& Y, double step) {
    return eta_form(f, p, X, Y, step) + jrm_split(f, p).nu(X, Y);
}

double pullback_kahler(const AcsField& f, const RVector& p, const RVector& X,
                       const RVector& Y, PullbackMode mode, double step) {
    return mode == PullbackMode::Fd ? pullback_kahler_fd(f, p, X, Y, step)
                                    : pullback_kahler_closed(f, p, X, Y, step);
}

CVector dbar_perp(const AcsField& f, const RVector& p, const RVector& X, const CVector& v,
                  double step) {
    const RVector q = normalized(p);
    const RVector JX = mul_real(f.J(q), X);
    const Projector P = perp_P(f, q);
    const GrassTangent djx = d_map(f, q, JX, MapKind::Perp, step);
    const GrassTangent dx = d_map(f, q, X, MapKind::Perp, step);
    const CMatrix op = djx.mat - grassmann_K(P, dx).mat;
    return op * v;
}

S2Criterion s2_criterion(const Poly2& f, const Poly2& g, double tol) {
    const double fv = f.eval(0.0, 0.0);
    const double gv = g.eval(0.0, 0.0);
    if (std::abs(gv) < 1e-12)
        throw std::runtime_error("s2_criterion: g(0,0) = 0, structure undefined");
    const double fx = f.ddx().eval(0.0, 0.0), fy = f.ddy().eval(0.0, 0.0);
    const double gx = g.ddx().eval(0.0, 0.0), gy = g.ddy().eval(0.0, 0.0);
    S2Criterion out;
    out.threshold = 1.0 + fv * fv + gv * gv;
    out.det_df = fx * gy - fy * gx;
    const double c2 = 1.0 / out.threshold;
    out.pullback_value = c2 * c2 * gv * gv * out.det_df + c2 * gv * gv;
    out.degenerate = std::abs(out.det_df - out.threshold) <= tol;
    return out;
}

CMatrix random_idempotent(int n, int k, bool self_adjoint, Rng& rng) {
    if (self_adjoint) {
        std::vector<CVector> cand;
        for (int j = 0; j < k; ++j) cand.push_back(rng.gaussian_cvec(n));
        const auto basis = gram_schmidt_hermitian(cand, gram_schmidt_drop_tol(cand));
        if (static_cast<int>(basis.size()) != k)
            throw std::runtime_error("random_idempotent: degenerate draw");
        CMatrix P(n, n);
        for (const auto& u : basis) P += CMatrix::outer(u, u);
        return P;
    }
    // V D V^{-1} with a random invertible V
    CMatrix V(n, n);
    for (int i = 0; i < n; ++i) {
        const CVector c = rng.gaussian_cvec(n);
        for (int j = 0; j < n; ++j) V(i, j) = c[j];
    }
    CMatrix D(n, n);
    for (int i = 0; i < k; ++i) D(i, i) = 1.0;
    return V * D * inverse(V);
}

CMatrix random_grass_tangent(const CMatrix& P, Rng& rng) {
    const int n = P.rows();
    CMatrix T0(n, n);
    for (int i = 0; i < n; ++i) {
        const CVector c = rng.gaussian_cvec(n);
        for (int j = 0; j < n; ++j) T0(i, j) = c[j];
    }
    const CMatrix I = CMatrix::identity(n);
    return P * T0 * (I - P) + (I - P) * T0 * P;
}

}  // namespace acsgeo
