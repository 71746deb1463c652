#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "repvar/presentation.hpp"

namespace repvar {

// Extended moduli space machinery: relator map, holomorphic momentum,
// the closed 2-form omega_{c,P}, the real Kaehler data from the polar
// decomposition, and momentum-fiber samplers.

/// prod [A_j, B_j].
Matrix relatorValue(const RepPoint& A);

/// mu_C(A) = matLog(relatorValue(A), X).  G-equivariant; equals X on the
/// fiber.  Throws ChartViolation when the relator value leaves the chart.
AlgebraElement complexMomentum(const RepPoint& A, const CentralTwist& t);

/// Differential of mu_C along the tangent tuple.  dexp-series route with a
/// finite-difference fallback when ||ad|| of the log exceeds the crossover.
Matrix complexMomentumDifferential(const RepPoint& A, const TangentTuple& v,
                                   const CentralTwist& t);

constexpr double kDexpCrossover = 2.0;   // ||ad|| beyond which FD is used
constexpr double kQuadratureTol = 1e-10;
// refinement threshold kept well under the contract so finite differences
// across nearby evaluations do not see refinement-decision noise
constexpr double kQuadratureInternalTol = 1e-13;

/// Radial homotopy primitive of exp*lambda about the twist point X:
/// B_Z(u,v) = int_0^1 s^2 (exp*lambda)_{X+s(Z-X)}(Z-X, u, v) ds.
/// Adaptive Gauss-Legendre to relative tolerance kQuadratureTol.
Complex primitiveB(const AlgebraElement& Z, const Matrix& u, const Matrix& v,
                   const CentralTwist& t);

/// exp*lambda at W on algebra vectors a, b, c.
Complex expPullbackLambda(const GroupSpec& spec, const Matrix& W, const Matrix& a,
                          const Matrix& b, const Matrix& c);

/// The closed G-invariant 2-form: chain sum of Omega plus the primitive
/// correction along mu_C.  The relative orientation (chain with boundary
/// -[r] + 2l[e], plus sign on the B term) is what makes
/// omega(xi_M, v) = D_v <mu_C, xi> hold; do not flip either independently.
Complex omegaC(const RepPoint& A, const TangentTuple& u, const TangentTuple& v,
               const TwoChain& c, const CentralTwist& t);

/// The 2-form Omega = (1/2) omega_1 . conj-omega_2 on G x G at (a, b):
/// ((p,q),(p',q')) -> (1/2)[<a^-1 p, q' b^-1> - <a^-1 p', q b^-1>].
Complex omegaPair(const GroupSpec& spec, const Matrix& a, const Matrix& b,
                  const Matrix& p, const Matrix& q, const Matrix& pp,
                  const Matrix& qp);

/// mu_cot per factor (Ad_k Y - Y for A = k exp(iY)), summed over the tuple.
/// k-valued, K-equivariant, zero on unitary tuples.
CompactAlgebraElement realMomentum(const RepPoint& A);

/// phi(A) = sum_j ||Y_j||^2 with ||Y||^2 = -scale tr(Y^2).  K-invariant,
/// nonnegative, zero exactly on unitary tuples.
double kahlerPotential(const RepPoint& A);

/// Measured once and frozen: xi o mu_R = a * (1/2)(d phi)(J xi_M).
constexpr double kPotentialConstant = 1.0;

/// Frozen consistency constant omega_{c,P} = kappa * omega_phi on
/// right-translated cocycles at fiber points.
constexpr double kPairingConstant = 1.0;

// ---------------------------------------------------------------------------
// Fiber sampling
// ---------------------------------------------------------------------------

struct FiberSampleConfig {
  int maxIter = 60;
  double targetResidual = 1e-10;  // on ||relatorValue(A) - exp(X)||
  double spread = 0.35;           // spread of the random start
  bool structured = false;        // use the structured seed families instead
};

/// Point A with ||relatorValue(A) - exp(X)|| <= targetResidual.
/// Structured mode: commuting tuples (trivial twist) or the anticommuting
/// pair family (n=2, GL, twist 1).  Newton mode: Gauss-Newton projection of a
/// random tuple using the relator differential, Moore-Penrose step with 0.5
/// backtracking.  Deterministic per seed.
RepPoint sampleFiberPoint(const GroupSpec& spec, int genus, const CentralTwist& t,
                          std::uint64_t seed, const FiberSampleConfig& cfg = {});

/// Gauss-Newton projection of an arbitrary start onto the fiber.
RepPoint projectToFiber(RepPoint A, const CentralTwist& t,
                        const FiberSampleConfig& cfg = {});

/// Residual ||relatorValue(A) - exp(X)||.
double fiberResidual(const RepPoint& A, const CentralTwist& t);

// ---------------------------------------------------------------------------
// Tangent helpers shared by the verification suites
// ---------------------------------------------------------------------------

/// Vector field of xi in g under conjugation on every factor:
/// (xi A_j - A_j xi)_j.
TangentTuple infinitesimalAction(const RepPoint& A, const Matrix& xi);

/// Entrywise multiplication by i (the ambient complex structure J).
TangentTuple applyJ(const TangentTuple& v);

/// Displace A along v: A_j exp(t A_j^-1 v_j).
RepPoint displace(const RepPoint& A, const TangentTuple& v, double tstep);

/// Conjugate every factor by g.
RepPoint conjugateTuple(const RepPoint& A, const Matrix& g);

/// Random tangent tuple with algebra-valued right logs, deterministic.
TangentTuple randomTangent(const RepPoint& A, std::uint64_t seed, double spread);

/// Central-difference derivative of f along the displacement curve.
double centralDifference(const std::function<double(const RepPoint&)>& f,
                         const RepPoint& A, const TangentTuple& v, double h);
Complex centralDifferenceC(const std::function<Complex(const RepPoint&)>& f,
                           const RepPoint& A, const TangentTuple& v, double h);

}  // namespace repvar
