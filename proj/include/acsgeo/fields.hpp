#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "acsgeo/geometry.hpp"
#include "acsgeo/linalg.hpp"

namespace acsgeo {

// Bivariate polynomial with exact coefficient arithmetic.
struct Poly2 {
    struct Term {
        int dx = 0, dy = 0;
        double c = 0.0;
    };
    std::vector<Term> terms;

    Poly2() = default;
    Poly2(std::initializer_list<Term> ts) : terms(ts) {}
    static Poly2 constant(double c) { return Poly2{{0, 0, c}}; }

    double eval(double x, double y) const;
    Poly2 ddx() const;
    Poly2 ddy() const;
    int degree() const;
};

// Parses the coefficient file format:
//   '#' starts a comment; a line "f" or "g" opens a section; data lines are
//   "<x-degree> <y-degree> <coefficient>".
// Throws std::runtime_error with a message on malformed input.
std::pair<Poly2, Poly2> parse_fg_coeffs(const std::string& path);

// An almost complex structure field: J as an ambient-matrix-valued function.
// Sphere fields normalize their argument, so they are defined (constantly
// along rays) in a neighborhood of the sphere; chart fields take (x, y).
struct AcsField {
    std::string name;
    Backend backend;
    std::function<CMatrix(const RVector&)> J;
    // exact coordinate partials (d/dx J, d/dy J); charts only, may be empty
    std::function<std::array<CMatrix, 2>(const RVector&)> dJ;
    std::function<bool(const RVector&)> in_domain;  // may be empty
    std::array<double, 4> sample_box{-1.0, 1.0, -1.0, 1.0};
    bool orthogonal_hint = false;

    int ambient() const { return ambient_dim(backend); }
    bool on_sphere() const { return is_sphere(backend); }
};

// Octonion arithmetic (Cayley-Dickson over quaternion pairs).
// e_i e_j = sign * e_k for basis imaginary units; i, j in 0..7.
struct BasisProduct {
    int index;
    int sign;
};
BasisProduct octonion_basis_product(int i, int j);
// Seven-dimensional cross product u x v = Im(u * v) for imaginary u, v.
RVector octonion_cross(const RVector& u, const RVector& v);

// Pointwise structure matrices (the evaluators behind the registry fields).
CMatrix octonionic_j(const RVector& p);   // 7x7, v -> p x v
CMatrix standard_s2_j(const RVector& p);  // 3x3, v -> p x v
CMatrix example24_j(const RVector& p);    // [[0, x], [-1/x, 0]], x != 0
CMatrix stereo_fg_j(const Poly2& f, const Poly2& g, const RVector& p);

// Registry fields.
AcsField octonionic_s6();
AcsField standard_s2();
AcsField example_2_4();
AcsField stereo_fg(const Poly2& f, const Poly2& g);
// J' = S J S^{-1} with S = I + eps * Pi A0 Pi, A0 a fixed seeded matrix
// normalized to unit Frobenius norm. Smooth, non-orthogonal for eps > 0.
AcsField conjugated_s6(double eps, uint64_t seed);

struct FieldOptions {
    std::optional<std::pair<Poly2, Poly2>> fg;
    double eps = 0.2;
};
// Throws std::runtime_error for an unknown name.
AcsField make_field(const std::string& name, const FieldOptions& opts = {});

// Metric scale factor s(p): the metric is s * <.,.>_euclid (1 on spheres,
// h(p) on conformal charts).
double metric_scale(const AcsField& f, const RVector& p);
// Tangent projector at p (I - p p^T on spheres, identity on charts).
CMatrix field_projector(const AcsField& f, const RVector& p);

// Projectors onto the -i / +i eigenspaces of J along each other,
// restricted to the (complexified) tangent space. The pointwise forms
// recover the tangent projector as Pi = -J^2.
CMatrix p_minus(const CMatrix& J);                     // 1/2 (Pi + i J)
CMatrix p_plus(const CMatrix& J);                      // 1/2 (Pi - i J)
CMatrix p_minus(const AcsField& f, const RVector& p);
CMatrix p_plus(const AcsField& f, const RVector& p);

// Orthonormal basis (w.r.t. the scaled Hermitian metric) of the -i
// eigenspace, built deterministically: project the ambient coordinate
// directions by p_minus in index order, then modified Gram-Schmidt.
// z_k = Re(w_k) give the associated real directions (w_k = z_k + i J z_k).
struct T01Basis {
    std::vector<CVector> w;
    std::vector<RVector> z;
};
T01Basis t01_basis(const AcsField& f, const RVector& p);

// Pointwise validation of the structure equations at sampled points.
struct ValidationCheck {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};
struct ValidationResult {
    std::vector<ValidationCheck> checks;
    bool pass = true;
};
ValidationResult validate(const AcsField& f, int samples, uint64_t seed,
                          double tol = 1e-10);

bool is_orthogonal(const AcsField& f, int samples, uint64_t seed, double tol = 1e-9);

// Seeded sampling. Chart points are drawn from sample_box with rejection
// against in_domain; throws after 1000 failed draws.
RVector random_point(const AcsField& f, Rng& rng);
RVector random_unit_tangent(const AcsField& f, const RVector& p, Rng& rng);

}  // namespace acsgeo
