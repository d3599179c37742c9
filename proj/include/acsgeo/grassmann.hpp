#pragma once

#include "acsgeo/tensors.hpp"

namespace acsgeo {

// Idempotent ambient matrix with its diagnostic residuals.
struct Projector {
    CMatrix mat;
    int rank = 0;                  // round(Re tr P)
    double idem_residual = 0.0;    // |P^2 - P|
    double selfadj_residual = 0.0; // |P* - P|
};
Projector make_projector(const CMatrix& m);

// Tangent vector to the idempotent variety at P: P T + T P = T.
// B = P T (I-P), C = (I-P) T P are the two off-blocks.
struct GrassTangent {
    CMatrix mat, B, C;
    double tangency_residual = 0.0;  // |P T + T P - T|
};
GrassTangent make_tangent(const Projector& P, const CMatrix& T);

// omega(S, T) = (1/2i) tr(P (S T - T S)). Antisymmetric; for self-adjoint
// P, S, T equals Im tr(B_S B_T^*). Throws if S or T fails the tangency
// equation at P by more than a gross margin.
cplx omega(const Projector& P, const GrassTangent& S, const GrassTangent& T);

// For self-adjoint P: K(T) = i (T P - P T); maps blocks (B, C) to (-iB, iC),
// squares to -Id on tangents and preserves omega.
GrassTangent grassmann_K(const Projector& P, const GrassTangent& T);

// Compatible almost complex structure on the tangent space at an arbitrary
// idempotent P, built from orthonormal bases U of Im P and V of Ker P:
//   beta         = U* B V,   gamma = V* C U,
//   J_P(T)       = i V beta* U* P  -  i U gamma* V* (I - P).
// For self-adjoint P this is the block map (B, C) -> (-iC*, iB*). Then
// J_P^2 = -Id on tangents and Re omega(T, J_P T) = (|beta|_F^2 +
// |gamma|_F^2) / 2 > 0 for T != 0.
CMatrix taming_acs(const Projector& P, const GrassTangent& T);
// Re omega(T, J_P T), in the standard Hermitian inner product (the one
// fixed choice this library implements).
double taming_check(const Projector& P, const GrassTangent& T);

// Canonical maps of a sphere field into the idempotent varieties:
//   canonical_P = 1/2 (Pi + i J) + n n^T         (idempotent; self-adjoint iff
//                                                 J is orthogonal)
//   perp_P      = [T01 orthoprojector] + n n^T   (always self-adjoint)
Projector canonical_P(const AcsField& f, const RVector& p);
Projector perp_P(const AcsField& f, const RVector& p);

enum class MapKind { Canonical, Perp };
// Derivative of the chosen map along X at p (4th-order FD along the
// geodesic), reported against the projector at p.
GrassTangent d_map(const AcsField& f, const RVector& p, const RVector& X, MapKind kind,
                   double step = 0.0);

enum class PullbackMode { Fd, Closed };

// Pullback of Re omega through the canonical map: FD evaluation and the
// closed form
//   -1/8 Im tr([nabla_X J, nabla_Y J]|_{T01}) - 1/4 <X, JY> + 1/4 <Y, JX>.
double pullback_reomega(const AcsField& f, const RVector& p, const RVector& X,
                        const RVector& Y, PullbackMode mode, double step = 0.0);
double pullback_reomega_fd(const AcsField& f, const RVector& p, const RVector& X,
                           const RVector& Y, double step = 0.0);
double pullback_reomega_closed(const AcsField& f, const RVector& p, const RVector& X,
                               const RVector& Y, double step = 0.0);

// Pullback of omega through the perp map: FD evaluation Im tr(B_X B_Y^*)
// (spheres) and the closed form eta(X, Y) + nu(X, Y) (any backend).
double pullback_kahler(const AcsField& f, const RVector& p, const RVector& X,
                       const RVector& Y, PullbackMode mode, double step = 0.0);
double pullback_kahler_fd(const AcsField& f, const RVector& p, const RVector& X,
                          const RVector& Y, double step = 0.0);
double pullback_kahler_closed(const AcsField& f, const RVector& p, const RVector& X,
                              const RVector& Y, double step = 0.0);

// dbar of the perp map along X, applied to an ambient vector:
// (d_{JX} Pperp - K(d_X Pperp)) v.
CVector dbar_perp(const AcsField& f, const RVector& p, const RVector& X, const CVector& v,
                  double step = 0.0);

// Stereographic family criterion, evaluated exactly at the chart origin for
// J = [[f, -(1+f^2)/g], [g, -f]] on the round chart:
//   threshold      = 1 + f^2 + g^2,  det_df = f_x g_y - f_y g_x,
//   pullback_value = g^2 det_df / threshold^2 + g^2 / threshold,
//   degenerate iff |det_df - threshold| <= tol.
struct S2Criterion {
    double pullback_value = 0.0;
    double det_df = 0.0;
    double threshold = 0.0;
    bool degenerate = false;
};
S2Criterion s2_criterion(const Poly2& f, const Poly2& g, double tol = 1e-9);

// Random generators for property tests.
CMatrix random_idempotent(int n, int k, bool self_adjoint, Rng& rng);
CMatrix random_grass_tangent(const CMatrix& P, Rng& rng);

}  // namespace acsgeo
