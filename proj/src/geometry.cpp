#include "acsgeo/geometry.hpp"

#include <cmath>

namespace acsgeo {

int ambient_dim(const Backend& b) {
    if (const auto* s = std::get_if<SphereBackend>(&b)) return s->ambient();
    return 2;
}

bool is_sphere(const Backend& b) { return std::holds_alternative<SphereBackend>(b); }

CMatrix tangent_projection(const RVector& p) {
    const int n = static_cast<int>(p.size());
    CMatrix m = CMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) -= p[i] * p[j];
    return m;
}

RVector project_tangent(const RVector& p, const RVector& v) {
    return v - dot(p, v) * p;
}

RVector geodesic(const RVector& p, const RVector& X, double t) {
    const double nx = norm(X);
    if (nx == 0.0) return p;
    if (std::abs(dot(p, X)) > 1e-10 * nx)
        throw std::runtime_error("geodesic: tangency error, <p,X> != 0");
    return std::cos(t * nx) * p + (std::sin(t * nx) / nx) * X;
}

double fd4_scalar(const std::function<double(double)>& f, double step) {
    return (f(-2 * step) - 8.0 * f(-step) + 8.0 * f(step) - f(2 * step)) / (12.0 * step);
}

CVector fd4_vector(const std::function<CVector(double)>& f, double step) {
    const CVector a = f(-2 * step), b = f(-step), c = f(step), d = f(2 * step);
    CVector r(a.size());
    for (size_t k = 0; k < r.size(); ++k)
        r[k] = (a[k] - 8.0 * b[k] + 8.0 * c[k] - d[k]) / (12.0 * step);
    return r;
}

CMatrix fd4_matrix(const std::function<CMatrix(double)>& f, double step) {
    CMatrix a = f(-2 * step), b = f(-step), c = f(step), d = f(2 * step);
    CMatrix r(a.rows(), a.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j)
            r(i, j) = (a(i, j) - 8.0 * b(i, j) + 8.0 * c(i, j) - d(i, j)) / (12.0 * step);
    return r;
}

CMatrix fd_derivative_matrix_field(const std::function<CMatrix(const RVector&)>& F,
                                 const RVector& p, const RVector& X, double step) {
    return fd4_matrix([&](double t) { return F(geodesic(p, X, t)); }, step);
}

CVector fd_derivative_vector_field(const std::function<CVector(const RVector&)>& F,
                                 const RVector& p, const RVector& X, double step) {
    return fd4_vector([&](double t) { return F(geodesic(p, X, t)); }, step);
}

RVector covariant_derivative_vec(const std::function<RVector(const RVector&)>& W,
                                    const RVector& p, const RVector& X, double step) {
    const CVector d = fd4_vector(
        [&](double t) { return to_complex(W(geodesic(p, X, t))); }, step);
    return project_tangent(p, real_vec(d));
}

double ConformalChristoffels::sym(int up, int lo1, int lo2) const {
    // all 8 symbols of h (dx^2 + dy^2) in terms of a = h_x/2h, b = h_y/2h
    if (up == 0) {
        if (lo1 == 0 && lo2 == 0) return a;
        if (lo1 == 1 && lo2 == 1) return -a;
        return b;  // mixed
    }
    if (lo1 == 0 && lo2 == 0) return -b;
    if (lo1 == 1 && lo2 == 1) return b;
    return a;  // mixed
}

CMatrix ConformalChristoffels::gamma_x() const {
    CMatrix m(2, 2);
    m(0, 0) = a;  m(0, 1) = b;
    m(1, 0) = -b; m(1, 1) = a;
    return m;
}

CMatrix ConformalChristoffels::gamma_y() const {
    CMatrix m(2, 2);
    m(0, 0) = b; m(0, 1) = -a;
    m(1, 0) = a; m(1, 1) = b;
    return m;
}

ConformalChristoffels christoffel_conformal(const ChartBackend& c, double x, double y,
                                            double step) {
    double hx, hy;
    if (c.dh) {
        const auto g = c.dh(x, y);
        hx = g[0];
        hy = g[1];
    } else {
        hx = fd4_scalar([&](double t) { return c.h(x + t, y); }, step);
        hy = fd4_scalar([&](double t) { return c.h(x, y + t); }, step);
    }
    const double h = c.h(x, y);
    return ConformalChristoffels{hx / (2.0 * h), hy / (2.0 * h)};
}

ChartBackend chart_flat() {
    ChartBackend c;
    c.name = "flat";
    c.h = [](double, double) { return 1.0; };
    c.dh = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
    return c;
}

ChartBackend chart_stereo() {
    ChartBackend c;
    c.name = "stereo";
    c.h = [](double x, double y) {
        const double d = 1.0 + x * x + y * y;
        return 1.0 / (d * d);
    };
    c.dh = [](double x, double y) {
        const double d = 1.0 + x * x + y * y;
        const double f = -4.0 / (d * d * d);
        return std::array<double, 2>{f * x, f * y};
    };
    return c;
}

ChartBackend chart_stereo_unit() {
    ChartBackend c = chart_stereo();
    c.name = "stereo-unit";
    auto h0 = c.h;
    auto dh0 = c.dh;
    c.h = [h0](double x, double y) { return 4.0 * h0(x, y); };
    c.dh = [dh0](double x, double y) {
        auto g = dh0(x, y);
        return std::array<double, 2>{4.0 * g[0], 4.0 * g[1]};
    };
    return c;
}

}  // namespace acsgeo
