#pragma once

#include "acsgeo/fields.hpp"

namespace acsgeo {

// Default finite-difference step: 1e-3 on spheres, 1e-4 on charts.
double default_step(const AcsField& f);

// Deterministic Euclidean-orthonormal real tangent frame at p (projected
// coordinate directions, Gram-Schmidt in index order).
std::vector<RVector> tangent_frame(const AcsField& f, const RVector& p);

// Covariant derivative (nabla_X J)(p) as an ambient matrix acting on T_p.
// Spheres: Gauss formula, Pi d/dt [J Pi](gamma(t)) Pi along the geodesic.
// Charts: partial_k J + [Gamma_k, J] contracted with X (exact dJ if the
// field provides it, 4th-order central differences otherwise).
CMatrix nabla_j(const AcsField& f, const RVector& p, const RVector& X, double step = 0.0);

// The chart branch of nabla_j on its own (throws on sphere backends).
CMatrix chart_covariant_derivative(const AcsField& f, const RVector& p, const RVector& X,
                                   double step = 0.0);

// m(X, Y) = (nabla_{JX} J) Y - J (nabla_X J) Y.
RVector tangent_algebra_m(const AcsField& f, const RVector& p, const RVector& X,
                          const RVector& Y, double step = 0.0);

// N(X, Y) = m(Y, X) - m(X, Y).
RVector nijenhuis(const AcsField& f, const RVector& p, const RVector& X,
                  const RVector& Y, double step = 0.0);

// Independent oracle for N built only from field evaluations and Lie
// brackets of extended vector fields:
//   N(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] - [JX,JY],
// with tangents extended by projection (spheres) or constants (charts) and
// brackets computed as D_U V - D_V U along straight ambient lines.
RVector nijenhuis_bracket_oracle(const AcsField& f, const RVector& p, const RVector& X,
                                 const RVector& Y, double step = 0.0);

// Same combination with a caller-supplied extension of Y replacing the
// canonical one; tensoriality makes the result extension-independent.
RVector nijenhuis_bracket_oracle(const AcsField& f, const RVector& p, const RVector& X,
                                 const RVector& Y,
                                 const std::function<RVector(const RVector&)>& Yext,
                                 double step = 0.0);

// max over tangent frame pairs (e_i, e_j) of |m(e_i, e_j)|;
// zero iff J is strongly integrable at p.
double strong_residual(const AcsField& f, const RVector& p, double step = 0.0);

// tr([nabla_X J, nabla_Y J] restricted to the -i eigenspace of J).
cplx commutator_trace_t01(const AcsField& f, const RVector& p, const RVector& X,
                          const RVector& Y, double step = 0.0);

// For orthogonal J: lhs = Im tr(J (nabla_X J)^2 |_{T01}),
// rhs = 2 sum_k |(nabla_X J) z_k|^2 over the T01 real directions z_k.
// Throws if J is not orthogonal at p.
std::pair<double, double> skew_trace_identity(const AcsField& f, const RVector& p,
                                              const RVector& X, double step = 0.0);

// Decomposition Q = R + i M of the orthogonal projector onto the -i
// eigenspace, in the scaled metric s <.,.>. nu and ip are the associated
// 2-form and symmetric form: nu(X,Y) = s <M X, Y>, ip(X,Y) = nu(X, J Y).
struct JrmSplit {
    CMatrix Q, R, M, J, Pi;
    double scale = 1.0;
    int t01_dim = 0;
    double nu(const RVector& X, const RVector& Y) const;
    double ip(const RVector& X, const RVector& Y) const;
};
JrmSplit jrm_split_pointwise(const CMatrix& J, const CMatrix& Pi, double scale = 1.0);
JrmSplit jrm_split(const AcsField& f, const RVector& p);

// Q_Z(X) = ip((nabla_X J) Z, J m(Z, X)).
double q_form(const AcsField& f, const RVector& p, const RVector& Z, const RVector& X,
              double step = 0.0);

// eta(X, Y) = sum_k nu((nabla_X J) z_k, (nabla_Y J) z_k) over T01 directions.
double eta_form(const AcsField& f, const RVector& p, const RVector& X, const RVector& Y,
                double step = 0.0);
// Same sum over the real directions of an explicitly supplied T01 basis.
double eta_form(const AcsField& f, const RVector& p, const RVector& X, const RVector& Y,
                const T01Basis& basis, double step);

// Residual of the complexified derivative identity
//   P+ (nabla_{X + iJX} (Yhat + i J Yhat)) = -P+ m(X, Y)
// with Yhat an extension of Y that is parallel at p (projection extension
// on spheres, first-order Christoffel correction on charts).
double complexified_m_residual(const AcsField& f, const RVector& p, const RVector& X,
                               const RVector& Y, double step = 0.0);

}  // namespace acsgeo
