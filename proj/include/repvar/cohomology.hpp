#pragma once

#include <limits>

#include "repvar/extmoduli.hpp"

namespace repvar {

// Group cohomology of the surface group with coefficients in g twisted by a
// representation point: Fox-calculus cocycles, the cup-product pairing, the
// quadratic momentum on H^1, and reduced Poisson brackets.

/// g-valued 1-cocycle at a base point, stored by its generator values.
struct Cocycle {
  std::vector<Matrix> values;  // u(x1), u(y1), ..., size 2*genus
};

struct RankDiagnostics {
  double largestSingular = 0;
  double smallestKept = 0;     // smallest singular value counted into the rank
  double largestDropped = 0;   // largest singular value treated as zero
  bool flagged = false;        // gap ratio below 10: ambiguous rank decision
  double gapRatio() const {
    return largestDropped > 0 ? smallestKept / largestDropped
                              : std::numeric_limits<double>::infinity();
  }
};

struct CohomologySummary {
  int dimH0 = 0;
  int dimZ1 = 0;
  int dimB1 = 0;
  int dimH1 = 0;
  RankDiagnostics stabilizerMargins;
  RankDiagnostics cocycleMargins;
};

constexpr double kSvdTol = 1e-8;

/// Kernel of xi -> (Ad_{A_j} xi - xi)_j, orthonormal w.r.t. tr(X Y^*).
std::vector<Matrix> stabilizerAlgebra(const RepPoint& A,
                                      RankDiagnostics* diag = nullptr,
                                      double svdTol = kSvdTol);

struct CohomologyBases {
  std::vector<Cocycle> z1;        // kernel of the relator Fox map
  std::vector<Cocycle> b1;        // coboundaries xi - Ad_{phi(g_j)} xi
  std::vector<Cocycle> harmonic;  // Hermitian-orthogonal complement of B1 in Z1
  CohomologySummary summary;
};

/// Fox-calculus computation of Z^1, B^1 and the dimension report.
/// Requires relatorValue(A) = exp(X) to fiberTol.
CohomologyBases cohomologyBases(const RepPoint& A, const CentralTwist& t,
                                double svdTol = kSvdTol, double fiberTol = 1e-8);

/// Crossed-homomorphism extension: u(gh) = u(g) + Ad_{phi(g)} u(h).
Matrix evaluateCocycleOnWord(const Cocycle& u, const FreeWord& w, const RepPoint& A);

/// Coboundary of xi with the convention u_xi(g) = xi - Ad_{phi(g)} xi.
Cocycle coboundary(const RepPoint& A, const Matrix& xi);

/// Cup-product symplectic pairing against the 2-chain:
/// omega_phi(u,v) = (1/2) sum_i n_i [ <u(a_i), Ad_{phi(a_i)} v(b_i)>
///                                  - <v(a_i), Ad_{phi(a_i)} u(b_i)> ].
Complex slicePairing(const Cocycle& u, const Cocycle& v, const TwoChain& c,
                     const RepPoint& A);

struct PairingMatrix {
  std::vector<Cocycle> basis;  // harmonic representatives
  Matrix gram;                 // antisymmetric by construction
  double smallestSingular = 0;
  CohomologySummary summary;
};

PairingMatrix buildPairingMatrix(const RepPoint& A, const CentralTwist& t,
                                 const TwoChain& c, double svdTol = kSvdTol);

/// <mu_phi(u), xi> = (1/2) sum_i n_i <xi, [u(a_i), Ad_{phi(a_i)} u(b_i)]>.
/// xi must lie in the stabilizer algebra (residual checked).
Complex quadraticMomentum(const Cocycle& u, const Matrix& xi, const TwoChain& c,
                          const RepPoint& A, double stabilizerTol = 1e-6);

/// Pointwise action of xi on a cocycle: (xi . u)(g) = [xi, u(g)].
Cocycle stabilizerAction(const Matrix& xi, const Cocycle& u);

// ---------------------------------------------------------------------------
// Invariant trace functions and the reduced bracket
// ---------------------------------------------------------------------------

/// f(A) = sum coeff * tr(evaluateWord(word, A)); conjugation invariant.
struct TraceFunction {
  std::vector<std::pair<Complex, FreeWord>> terms;

  Complex operator()(const RepPoint& A) const;
  /// Exact differential along a tangent tuple.
  Complex differential(const RepPoint& A, const TangentTuple& v) const;
};

/// Reduced holomorphic Poisson bracket at a polystable smooth-stratum point:
/// restrict df, dh to the harmonic H^1 slice (right translation), invert the
/// pairing gram.  Sign convention {f,h} = df^T gram^-1 dh.
Complex reducedBracket(const TraceFunction& f, const TraceFunction& h,
                       const RepPoint& A, const CentralTwist& t, const TwoChain& c);

/// Right-translated tangent tuple of a cocycle: entry_j = u_j A_j.
TangentTuple cocycleTangent(const Cocycle& u, const RepPoint& A);

}  // namespace repvar
