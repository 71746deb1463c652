#include "repvar/reduction.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace repvar {

namespace {

double momentumNormSq(const RepPoint& A) {
  const Matrix m = realMomentum(A).m;
  return compactInner(A.spec, m, m);
}

}  // namespace

FlowReport flowToKempfNess(const RepPoint& A, const FlowConfig& cfg,
                           std::vector<FlowTraceRow>* trace) {
  cfg.validate();
  const int n = A.spec.n;

  RepPoint cur = A;
  Matrix conj = Matrix::Identity(n, n);
  const Vector inv0 = traceInvariants(A);
  const Matrix relator0 = relatorValue(A);

  double f = momentumNormSq(cur);
  FlowReport rep{std::sqrt(f), std::sqrt(f), 0, false, cur, 0, 0,
                 Matrix::Identity(n, n)};
  if (trace) trace->push_back({0, rep.initialNorm, 0.0});

  double step = cfg.initialStep;
  int iter = 0;
  for (; iter < cfg.maxIter; ++iter) {
    if (std::sqrt(f) <= cfg.gradTol) {
      rep.converged = true;
      break;
    }
    const Matrix m = realMomentum(cur).m;

    auto conjugateBy = [&](double s) {
      const Matrix g = (-s * Complex(0, 1) * m).exp();
      return std::pair{conjugateTuple(cur, g), g};
    };

    // slope of f along the curve, by central differences
    const double hs = 1e-7;
    const double slope =
        (momentumNormSq(conjugateBy(hs).first) - momentumNormSq(conjugateBy(-hs).first)) /
        (2.0 * hs);

    bool accepted = false;
    double s = step;
    for (int bt = 0; bt < 60; ++bt) {
      auto [trial, g] = conjugateBy(s);
      const double ft = momentumNormSq(trial);
      if (ft <= f + cfg.armijoConstant * s * slope && ft <= f) {
        cur = std::move(trial);
        conj = g * conj;
        f = ft;
        accepted = true;
        // grow the step back after easy acceptances; the Armijo test guards
        // the larger trial steps in shallow basins
        step = std::min(s * 2.0, 64.0 * cfg.initialStep);
        break;
      }
      s *= cfg.backtrackFactor;
    }
    if (trace) trace->push_back({iter + 1, std::sqrt(f), accepted ? s : 0.0});
    if (!accepted) break;  // line search exhausted: stall
  }

  rep.iterations = iter;
  rep.finalNorm = std::sqrt(f);
  rep.converged = rep.finalNorm <= cfg.gradTol;
  rep.finalPoint = cur;
  rep.conjugator = conj;
  rep.invariantDrift = (traceInvariants(cur) - inv0).cwiseAbs().maxCoeff();
  rep.fiberDrift = std::abs((relatorValue(cur) - relator0).norm());
  return rep;
}

SemistabilityResult semistabilityTest(const RepPoint& A, const FlowConfig& cfg) {
  SemistabilityResult res{false, 0, flowToKempfNess(A, cfg)};
  res.semistable = res.report.converged;
  res.floorNorm = res.report.finalNorm;
  return res;
}

std::vector<FreeWord> defaultInvariantWords(int genus) {
  const int g = 2 * genus;
  std::vector<FreeWord> words;
  for (int i = 0; i < g; ++i) words.push_back(generator(i));
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) words.push_back(concat(generator(i), generator(j)));
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      for (int k = j + 1; k < g; ++k)
        words.push_back(concat(concat(generator(i), generator(j)), generator(k)));
  return words;
}

Vector traceInvariants(const RepPoint& A, const std::vector<FreeWord>* words) {
  std::vector<FreeWord> defaults;
  if (!words) {
    defaults = defaultInvariantWords(A.genus);
    words = &defaults;
  }
  Vector out(words->size());
  for (std::size_t k = 0; k < words->size(); ++k)
    out(static_cast<Eigen::Index>(k)) = evaluateWord((*words)[k], A).trace();
  return out;
}

ReducedComparison sameReducedPoint(const RepPoint& p, const RepPoint& q,
                                   const FlowConfig& cfg, double tol) {
  const FlowReport fp = flowToKempfNess(p, cfg);
  const FlowReport fq = flowToKempfNess(q, cfg);
  if (!fp.converged || !fq.converged) return ReducedComparison::Indeterminate;
  const double dist =
      (traceInvariants(fp.finalPoint) - traceInvariants(fq.finalPoint))
          .cwiseAbs()
          .maxCoeff();
  return dist <= tol ? ReducedComparison::Same : ReducedComparison::Different;
}

StratumLabel orbitTypeLabel(const RepPoint& A, double svdTol) {
  StratumLabel label;
  label.centerDim = A.spec.centerDim();
  const auto stab = stabilizerAlgebra(A, &label.diagnostics, svdTol);
  label.stabilizerDim = static_cast<int>(stab.size());
  if (label.stabilizerDim == A.spec.algebraDim())
    label.tag = StratumTag::Central;
  else if (label.stabilizerDim == label.centerDim)
    label.tag = StratumTag::Irreducible;
  else
    label.tag = StratumTag::ReducibleProper;
  return label;
}

const char* stratumTagName(StratumTag tag) {
  switch (tag) {
    case StratumTag::Irreducible: return "Irreducible";
    case StratumTag::ReducibleProper: return "ReducibleProper";
    case StratumTag::Central: return "Central";
  }
  return "?";
}

UnitaryMatchResult unitaryMatch(const RepPoint& p, const RepPoint& q,
                                const std::optional<Matrix>& warmStart, int maxIter) {
  const int n = p.spec.n;
  Matrix k = warmStart.value_or(Matrix::Identity(n, n));
  const auto basis = orthonormalCompactBasis(p.spec);

  auto distance = [&](const Matrix& u) {
    double acc = 0;
    const Matrix ui = u.adjoint();  // unitary inverse
    for (int j = 0; j < p.size(); ++j)
      acc += (u * p.tuple[j] * ui - q.tuple[j]).squaredNorm();
    return std::sqrt(acc);
  };

  double d = distance(k);
  int iter = 0;
  double step = 0.5;
  for (; iter < maxIter && d > 1e-12; ++iter) {
    // gradient of the squared distance in the compact basis
    Eigen::VectorXd grad(basis.size());
    const Matrix ki = k.adjoint();
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
      double g = 0;
      for (int j = 0; j < p.size(); ++j) {
        const Matrix P = k * p.tuple[j] * ki;
        const Matrix dP = basis[bi] * P - P * basis[bi];
        g += 2.0 * ((P - q.tuple[j]).conjugate().array() * dP.array()).sum().real();
      }
      grad(static_cast<Eigen::Index>(bi)) = g;
    }
    const double gnorm2 = grad.squaredNorm();
    if (gnorm2 < 1e-24) break;

    bool accepted = false;
    double s = step;
    for (int bt = 0; bt < 40; ++bt) {
      Matrix dir = Matrix::Zero(n, n);
      for (std::size_t bi = 0; bi < basis.size(); ++bi)
        dir -= s * grad(static_cast<Eigen::Index>(bi)) * basis[bi];
      const Matrix kt = dir.exp() * k;
      const double dt = distance(kt);
      if (dt * dt <= d * d - 1e-4 * s * gnorm2) {
        k = kt;
        d = dt;
        step = std::min(s * 2.0, 1.0);
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(k), d, iter};
}

}  // namespace repvar
