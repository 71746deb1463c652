#pragma once

#include <optional>

#include "repvar/cohomology.hpp"

namespace repvar {

// Kempf-Ness descent and reduced-space identification: semistability proxy,
// polystable representatives, invariant-based point equality, orbit-type
// labels.

struct FlowConfig {
  double initialStep = 0.25;
  int maxIter = 5000;
  double gradTol = 1e-8;       // target ||mu_R||
  double backtrackFactor = 0.5;
  double armijoConstant = 1e-4;

  void validate() const {
    if (initialStep <= 0 || maxIter <= 0 || gradTol <= 0 || armijoConstant <= 0 ||
        backtrackFactor <= 0 || backtrackFactor >= 1)
      throw ConfigError("flow configuration out of range");
  }
};

struct FlowReport {
  double initialNorm = 0;
  double finalNorm = 0;
  int iterations = 0;
  bool converged = false;
  RepPoint finalPoint;
  double invariantDrift = 0;  // max change of the default trace invariants
  double fiberDrift = 0;      // |residual(final) - residual(initial)|
  Matrix conjugator;          // finalPoint = conjugator . start . conjugator^-1
};

struct FlowTraceRow {
  int iteration;
  double norm;
  double step;
};

/// Gradient descent on ||mu_R||^2 by conjugation with exp(-s i m), m = mu_R.
/// Armijo backtracking with the slope measured along the step curve; the
/// accepted step never increases the norm.  Stays on the fiber exactly up to
/// roundoff (the target exp(X) is central).
FlowReport flowToKempfNess(const RepPoint& A, const FlowConfig& cfg,
                           std::vector<FlowTraceRow>* trace = nullptr);

struct SemistabilityResult {
  bool semistable = false;
  double floorNorm = 0;  // final norm; the stagnation floor when not semistable
  FlowReport report;
};

/// Numerical proxy for "closure of the orbit meets the zero set": the flow
/// reaches gradTol within budget.  A stall is reported, never asserted
/// impossible.
SemistabilityResult semistabilityTest(const RepPoint& A, const FlowConfig& cfg);

/// Default invariant words: generators, pairwise products of distinct
/// generators (i < j), and triples with strictly increasing indices.
std::vector<FreeWord> defaultInvariantWords(int genus);

/// tr(evaluateWord(w, A)) over the word list; exactly conjugation invariant.
Vector traceInvariants(const RepPoint& A,
                       const std::vector<FreeWord>* words = nullptr);

enum class ReducedComparison { Same, Different, Indeterminate };

/// Flow both points, compare trace-invariant vectors in the sup norm.
/// Separation is limited by the word-length budget of the invariant list.
ReducedComparison sameReducedPoint(const RepPoint& p, const RepPoint& q,
                                   const FlowConfig& cfg, double tol);

enum class StratumTag { Irreducible, ReducibleProper, Central };

struct StratumLabel {
  int stabilizerDim = 0;
  int centerDim = 0;
  StratumTag tag = StratumTag::Irreducible;
  RankDiagnostics diagnostics;
};

/// Orbit-type label of a polystable representative.
StratumLabel orbitTypeLabel(const RepPoint& A, double svdTol = kSvdTol);

const char* stratumTagName(StratumTag tag);

// ---------------------------------------------------------------------------
// KN2 at sample scale: unitary matching within the zero set
// ---------------------------------------------------------------------------

struct UnitaryMatchResult {
  Matrix k;         // unitary conjugator
  double distance;  // sqrt(sum_j ||k p_j k^-1 - q_j||^2)
  int iterations;
};

/// Projected gradient descent on K minimizing the conjugation distance,
/// warm-startable (pass the unitary polar factor of a known conjugator).
UnitaryMatchResult unitaryMatch(const RepPoint& p, const RepPoint& q,
                                const std::optional<Matrix>& warmStart = std::nullopt,
                                int maxIter = 200);

}  // namespace repvar
