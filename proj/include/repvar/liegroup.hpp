#pragma once

#include <cstdint>
#include <utility>

#include "repvar/types.hpp"

namespace repvar {

// Numerical kernel for GL(n,C) / SL(n,C): exponential chart, polar
// decomposition, the invariant trace form, and the Maurer-Cartan tensors.

/// ||X|| bound beyond which matExp refuses to evaluate.
constexpr double kExpNormBound = 200.0;

/// Distance to the branch cut below which matLog reports a chart violation.
constexpr double kBranchCutGuard = 1e-8;

/// e^X by scaling-and-squaring.  det(e^X) = e^(tr X) to 1e-10.
GroupElement matExp(const AlgebraElement& X);

/// Inverse of the exponential chart around exp(base), base central:
/// base + principal log of exp(-base) g.  Throws ChartViolation when the
/// spectrum of exp(-base) g comes within kBranchCutGuard of (-inf, 0].
AlgebraElement matLog(const GroupElement& g, const AlgebraElement& base);

/// Principal log of an invertible matrix (branch-cut guarded), raw form.
Matrix principalLog(const Matrix& w);

struct PolarDecomposition {
  GroupElement k;            // unitary factor, unit det in the SL case
  CompactAlgebraElement Y;   // g = k exp(iY), iY Hermitian
};

/// g = k exp(iY) with iY = (1/2) log(g^* g).
PolarDecomposition polar(const GroupElement& g);

/// The invariant form <X,Y> = scaleOfForm * tr(XY).
Complex traceForm(const AlgebraElement& X, const AlgebraElement& Y);
Complex traceForm(const GroupSpec& spec, const Matrix& X, const Matrix& Y);

/// Real inner product on k: <X,Y> = -scaleOfForm * tr(XY), positive definite.
double compactInner(const GroupSpec& spec, const Matrix& X, const Matrix& Y);

/// psi: g -> g*.  The dual is never materialized; the covector keeps its
/// carrier and pairs through the trace form.
struct Covector {
  AlgebraElement carrier;
  Complex operator()(const AlgebraElement& Y) const { return traceForm(carrier, Y); }
};

inline Covector formAdjoint(const AlgebraElement& X) { return Covector{X}; }

/// Differential of matExp: returns e^X T(X) V with T(X) = sum (-ad_X)^k/(k+1)!
/// truncated when the term norm drops below 1e-16.
Matrix dexp(const AlgebraElement& X, const Matrix& V);
Matrix dexpRaw(const GroupSpec& spec, const Matrix& X, const Matrix& V);

/// Solve dexp(V, S) = T for S, where V = principal log of W and T is tangent
/// at W.  Used to differentiate matLog.
Matrix dexpInverse(const GroupSpec& spec, const Matrix& V, const Matrix& T);

/// Cartan 3-form at g on ambient tangents u, v, w:
/// (1/2) <[g^-1 u, g^-1 v], g^-1 w>.  Totally antisymmetric, bi-invariant.
Complex cartanThreeForm(const GroupElement& g, const Matrix& u, const Matrix& v,
                        const Matrix& w);
Complex cartanThreeFormRaw(const GroupSpec& spec, const Matrix& g, const Matrix& u,
                           const Matrix& v, const Matrix& w);

/// Triple product tau(x,y,z) = (1/2) <[x,y], z> on the algebra.
Complex tripleProduct(const GroupSpec& spec, const Matrix& x, const Matrix& y,
                      const Matrix& z);

/// Equivariant 1-form theta(X)(v) = (1/2) <X, g^-1 v + v g^-1> at g.
Complex equivariantOneForm(const CompactAlgebraElement& X, const GroupElement& g,
                           const Matrix& v);

// ---------------------------------------------------------------------------
// Deterministic sampling
// ---------------------------------------------------------------------------

AlgebraElement randomAlgebraElement(const GroupSpec& spec, std::uint64_t seed,
                                    double spread);
CompactAlgebraElement randomCompactElement(const GroupSpec& spec, std::uint64_t seed,
                                           double spread);
/// exp of a Gaussian algebra element scaled by spread.
GroupElement randomGroupElement(const GroupSpec& spec, std::uint64_t seed,
                                double spread);

}  // namespace repvar
