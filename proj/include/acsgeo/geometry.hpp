#pragma once

#include <array>
#include <functional>
#include <string>
#include <variant>

#include "acsgeo/linalg.hpp"

namespace acsgeo {

// Round sphere S^{2n} embedded in R^{2n+1}, induced metric.
struct SphereBackend {
    int half_dim = 1;  // n in S^{2n}
    int ambient() const { return 2 * half_dim + 1; }
};

// Planar chart R^2 with conformal metric h(x,y) (dx^2 + dy^2).
struct ChartBackend {
    std::string name;
    std::function<double(double, double)> h;
    // exact gradient (h_x, h_y); empty -> central differences
    std::function<std::array<double, 2>(double, double)> dh;
};

using Backend = std::variant<SphereBackend, ChartBackend>;

int ambient_dim(const Backend& b);
bool is_sphere(const Backend& b);

// I - p p^T for unit p.
CMatrix tangent_projection(const RVector& p);
RVector project_tangent(const RVector& p, const RVector& v);
// Great circle gamma(t) = cos(t|X|) p + sin(t|X|) X/|X|.
// X must be tangent at p: |<p,X>| <= 1e-10 |X| or a tangency error is thrown.
RVector geodesic(const RVector& p, const RVector& X, double t);

// 4th-order central difference (f(-2h) - 8f(-h) + 8f(h) - f(2h)) / (12h).
double fd4_scalar(const std::function<double(double)>& f, double step);
CVector fd4_vector(const std::function<CVector(double)>& f, double step);
CMatrix fd4_matrix(const std::function<CMatrix(double)>& f, double step);

// Derivative at t=0 of F(gamma(t)) along the sphere geodesic with velocity X.
CMatrix fd_derivative_matrix_field(const std::function<CMatrix(const RVector&)>& F,
                                   const RVector& p, const RVector& X, double step);
CVector fd_derivative_vector_field(const std::function<CVector(const RVector&)>& F,
                                   const RVector& p, const RVector& X, double step);

// Levi-Civita covariant derivative of a tangent vector field along X at p,
// via the Gauss formula: project the ambient derivative back to T_p.
RVector covariant_derivative_vec(const std::function<RVector(const RVector&)>& W,
                                 const RVector& p, const RVector& X, double step);

// Christoffel symbols of the conformal metric h (dx^2 + dy^2):
// with a = h_x / (2h), b = h_y / (2h), the 8 symbols are
//   G^x_xx =  a, G^x_xy = G^x_yx =  b, G^x_yy = -a,
//   G^y_xx = -b, G^y_xy = G^y_yx =  a, G^y_yy =  b.
struct ConformalChristoffels {
    double a = 0.0, b = 0.0;
    double sym(int up, int lo1, int lo2) const;  // indices 0=x, 1=y
    CMatrix gamma_x() const;                     // [Gamma_x]^i_j = G^i_{x j}
    CMatrix gamma_y() const;
};

ConformalChristoffels christoffel_conformal(const ChartBackend& c, double x, double y,
                                            double step = 1e-5);

// Standard charts used by the field registry.
ChartBackend chart_flat();
// h = (1 + x^2 + y^2)^{-2}; h(0,0) = 1.
ChartBackend chart_stereo();
// h = 4 (1 + x^2 + y^2)^{-2}; the unit round S^2 in stereographic coordinates.
ChartBackend chart_stereo_unit();

}  // namespace acsgeo
