#include "acsgeo/tensors.hpp"

#include <cmath>

namespace acsgeo {

double default_step(const AcsField& f) { return f.on_sphere() ? 1e-3 : 1e-4; }

namespace {
double step_or_default(const AcsField& f, double step) {
    return step > 0.0 ? step : default_step(f);
}
}  // namespace

std::vector<RVector> tangent_frame(const AcsField& f, const RVector& p) {
    const int n = f.ambient();
    std::vector<RVector> frame;
    if (!f.on_sphere()) {
        frame.push_back({1.0, 0.0});
        frame.push_back({0.0, 1.0});
        return frame;
    }
    const RVector q = normalized(p);
    for (int j = 0; j < n && static_cast<int>(frame.size()) < n - 1; ++j) {
        RVector e(n, 0.0);
        e[j] = 1.0;
        RVector v = project_tangent(q, e);
        for (const auto& b : frame) v = v - dot(v, b) * b;
        for (const auto& b : frame) v = v - dot(v, b) * b;
        const double nv = norm(v);
        if (nv > 1e-10) frame.push_back((1.0 / nv) * v);
    }
    return frame;
}

CMatrix chart_covariant_derivative(const AcsField& f, const RVector& p, const RVector& X,
                                   double step) {
    if (f.on_sphere())
        throw std::runtime_error("chart_covariant_derivative: chart backends only");
    const double h = step_or_default(f, step);
    CMatrix dx(2, 2), dy(2, 2);
    if (f.dJ) {
        const auto d = f.dJ(p);
        dx = d[0];
        dy = d[1];
    } else {
        dx = fd4_matrix([&](double t) { return f.J({p[0] + t, p[1]}); }, h);
        dy = fd4_matrix([&](double t) { return f.J({p[0], p[1] + t}); }, h);
    }
    const auto& chart = std::get<ChartBackend>(f.backend);
    const auto gam = christoffel_conformal(chart, p[0], p[1]);
    const CMatrix J = f.J(p);
    const CMatrix covx = dx + commutator(gam.gamma_x(), J);
    const CMatrix covy = dy + commutator(gam.gamma_y(), J);
    return X[0] * covx + X[1] * covy;
}

CMatrix nabla_j(const AcsField& f, const RVector& p, const RVector& X, double step) {
    if (!f.on_sphere()) return chart_covariant_derivative(f, p, X, step);
    const double h = step_or_default(f, step);
    const RVector q = normalized(p);
    const CMatrix Pi = tangent_projection(q);
    const CMatrix d = fd4_matrix(
        [&](double t) {
            const RVector g = geodesic(q, X, t);
            return f.J(g) * tangent_projection(normalized(g));
        },
        h);
    return Pi * d * Pi;
}

RVector tangent_algebra_m(const AcsField& f, const RVector& p, const RVector& X,
                          const RVector& Y, double step) {
    const CMatrix J = f.J(p);
    const RVector JX = mul_real(J, X);
    const CMatrix aJX = nabla_j(f, p, JX, step);
    const CMatrix aX = nabla_j(f, p, X, step);
    return mul_real(aJX, Y) - mul_real(J, mul_real(aX, Y));
}

RVector nijenhuis(const AcsField& f, const RVector& p, const RVector& X, const RVector& Y,
                  double step) {
    return tangent_algebra_m(f, p, Y, X, step) - tangent_algebra_m(f, p, X, Y, step);
}

namespace {

// extend a fixed tangent vector to an ambient field
RVector extend_vec(const AcsField& f, const RVector& v, const RVector& q) {
    if (f.on_sphere()) return project_tangent(normalized(q), v);
    return v;
}

}  // namespace

RVector nijenhuis_bracket_oracle(const AcsField& f, const RVector& p, const RVector& X,
                                 const RVector& /*Y*/,
                                 const std::function<RVector(const RVector&)>& Yext,
                                 double step) {
    const double h = step_or_default(f, step);
    const RVector q = f.on_sphere() ? normalized(p) : p;
    const CMatrix Jp = f.J(q);

    using VecField = std::function<RVector(const RVector&)>;
    const VecField U = [&f, X](const RVector& r) { return extend_vec(f, X, r); };
    const VecField V = Yext;
    const VecField JU = [&f, X](const RVector& r) {
        return mul_real(f.J(r), extend_vec(f, X, r));
    };
    const VecField JV = [&f, &Yext](const RVector& r) {
        return mul_real(f.J(r), Yext(r));
    };

    auto dirderiv = [&](const VecField& W, const RVector& dir) {
        return real_vec(fd4_vector(
            [&](double t) { return to_complex(W(q + t * dir)); }, h));
    };
    auto lie = [&](const VecField& A, const VecField& B) {
        return dirderiv(B, A(q)) - dirderiv(A, B(q));
    };

    RVector n = lie(U, V) + mul_real(Jp, lie(JU, V)) + mul_real(Jp, lie(U, JV)) -
                lie(JU, JV);
    if (f.on_sphere()) n = project_tangent(q, n);
    return n;
}

RVector nijenhuis_bracket_oracle(const AcsField& f, const RVector& p, const RVector& X,
                                 const RVector& Y, double step) {
    return nijenhuis_bracket_oracle(
        f, p, X, Y, [&f, Y](const RVector& r) { return extend_vec(f, Y, r); }, step);
}

double strong_residual(const AcsField& f, const RVector& p, double step) {
    const auto frame = tangent_frame(f, p);
    double worst = 0.0;
    for (const auto& ei : frame)
        for (const auto& ej : frame)
            worst = std::max(worst, norm(tangent_algebra_m(f, p, ei, ej, step)));
    return worst;
}

cplx commutator_trace_t01(const AcsField& f, const RVector& p, const RVector& X,
                          const RVector& Y, double step) {
    const CMatrix c = commutator(nabla_j(f, p, X, step), nabla_j(f, p, Y, step));
    return restricted_trace(c, t01_basis(f, p).w);
}

std::pair<double, double> skew_trace_identity(const AcsField& f, const RVector& p,
                                              const RVector& X, double step) {
    const CMatrix J = f.J(p);
    if ((J.transpose() * J - field_projector(f, p)).max_abs() > 1e-8)
        throw std::runtime_error("skew_trace_identity: J not orthogonal at p");
    const CMatrix A = nabla_j(f, p, X, step);
    const auto basis = t01_basis(f, p);
    const double lhs = restricted_trace(J * A * A, basis.w).imag();
    const double s = metric_scale(f, p);
    double rhs = 0.0;
    for (const auto& z : basis.z) {
        const RVector az = mul_real(A, z);
        rhs += 2.0 * s * dot(az, az);
    }
    return {lhs, rhs};
}

double JrmSplit::nu(const RVector& X, const RVector& Y) const {
    return scale * dot(mul_real(M, X), Y);
}

double JrmSplit::ip(const RVector& X, const RVector& Y) const {
    return nu(X, mul_real(J, Y));
}

JrmSplit jrm_split_pointwise(const CMatrix& J, const CMatrix& Pi, double scale) {
    const int n = J.rows();
    const CMatrix Pm = 0.5 * (Pi + cplx(0.0, 1.0) * J);
    std::vector<CVector> cand;
    for (int j = 0; j < n; ++j) {
        CVector e(n, cplx(0.0));
        e[j] = 1.0;
        cand.push_back(Pm * e);
    }
    const auto basis = gram_schmidt_hermitian(cand, gram_schmidt_drop_tol(cand));
    CMatrix Q(n, n);
    for (const auto& w : basis) Q += CMatrix::outer(w, w);
    JrmSplit out;
    out.Q = Q;
    out.R = Q.real_part();
    out.M = Q.imag_part();
    out.J = J;
    out.Pi = Pi;
    out.scale = scale;
    out.t01_dim = static_cast<int>(basis.size());
    return out;
}

JrmSplit jrm_split(const AcsField& f, const RVector& p) {
    return jrm_split_pointwise(f.J(p), field_projector(f, p), metric_scale(f, p));
}

double q_form(const AcsField& f, const RVector& p, const RVector& Z, const RVector& X,
              double step) {
    const auto jrm = jrm_split(f, p);
    const CMatrix aX = nabla_j(f, p, X, step);
    const RVector mzx = tangent_algebra_m(f, p, Z, X, step);
    return jrm.ip(mul_real(aX, Z), mul_real(jrm.J, mzx));
}

double eta_form(const AcsField& f, const RVector& p, const RVector& X, const RVector& Y,
                const T01Basis& basis, double step) {
    const auto jrm = jrm_split(f, p);
    const CMatrix aX = nabla_j(f, p, X, step);
    const CMatrix aY = nabla_j(f, p, Y, step);
    double s = 0.0;
    for (const auto& z : basis.z) s += jrm.nu(mul_real(aX, z), mul_real(aY, z));
    return s;
}

double eta_form(const AcsField& f, const RVector& p, const RVector& X, const RVector& Y,
                double step) {
    return eta_form(f, p, X, Y, t01_basis(f, p), step);
}

double complexified_m_residual(const AcsField& f, const RVector& p, const RVector& X,
                               const RVector& Y, double step) {
    const double h = step_or_default(f, step);
    if (!f.on_sphere()) {
        // Yhat(r) = (I - sum_k (r-p)_k Gamma_k(p)) Y is parallel at p to
        // first order, which is all the identity needs.
        const auto& chart = std::get<ChartBackend>(f.backend);
        const auto gam = christoffel_conformal(chart, p[0], p[1]);
        const CMatrix Gx = gam.gamma_x(), Gy = gam.gamma_y();
        const CVector Yc = to_complex(Y);
        auto W = [&](const RVector& r) -> CVector {
            const CVector yh = Yc - ((r[0] - p[0]) * Gx + (r[1] - p[1]) * Gy) * Yc;
            return yh + cplx(0.0, 1.0) * (f.J(r) * yh);
        };
        auto covw = [&](const RVector& V) {
            const CVector d = fd4_vector([&](double t) { return W(p + t * V); }, h);
            return d + (V[0] * Gx + V[1] * Gy) * W(p);
        };
        const RVector JX = mul_real(f.J(p), X);
        const CVector cX = covw(X), cJX = covw(JX);
        CVector total(2, cplx(0.0));
        for (int k = 0; k < 2; ++k) total[k] = cX[k] + cplx(0.0, 1.0) * cJX[k];
        const CMatrix Pp = p_plus(f, p);
        const CVector lhs = Pp * total;
        const CVector rhs = Pp * to_complex(tangent_algebra_m(f, p, X, Y, step));
        return vec_norm(lhs + rhs);
    }
    const RVector q = normalized(p);
    const CMatrix Pi = tangent_projection(q);
    const CMatrix Pp = p_plus(f, q);

    // W(r) = Yhat(r) + i J(r) Yhat(r), Yhat the projection extension
    auto W = [&](const RVector& r) -> CVector {
        const RVector yh = project_tangent(normalized(r), Y);
        const CVector jy = to_complex(mul_real(f.J(r), yh));
        return to_complex(yh) + cplx(0.0, 1.0) * jy;
    };
    const RVector JX = mul_real(f.J(q), X);
    const CVector dX =
        fd4_vector([&](double t) { return W(geodesic(q, X, t)); }, h);
    const CVector dJX =
        fd4_vector([&](double t) { return W(geodesic(q, JX, t)); }, h);
    // covariant derivative along X + iJX: project the ambient derivative
    CVector total(q.size(), cplx(0.0));
    for (size_t k = 0; k < total.size(); ++k) total[k] = dX[k] + cplx(0.0, 1.0) * dJX[k];
    total = Pi * total;

    const CVector lhs = Pp * total;
    const CVector rhs = Pp * to_complex(tangent_algebra_m(f, q, X, Y, step));
    return vec_norm(lhs + rhs);
}

}  // namespace acsgeo
