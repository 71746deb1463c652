#include "repvar/extmoduli.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace repvar {

Matrix relatorValue(const RepPoint& A) {
  const SurfacePresentation pres = buildPresentation(A.genus);
  return evaluateWord(pres.relator, A);
}

AlgebraElement complexMomentum(const RepPoint& A, const CentralTwist& t) {
  GroupElement r(A.spec, relatorValue(A), unchecked);
  return matLog(r, t.X.asAlgebra());
}

Matrix complexMomentumDifferential(const RepPoint& A, const TangentTuple& v,
                                   const CentralTwist& t) {
  const SurfacePresentation pres = buildPresentation(A.genus);
  const Matrix expNegX = (-t.X.m).exp();
  const Matrix W = expNegX * evaluateWord(pres.relator, A);
  const Matrix dR = expNegX * wordDifferential(pres.relator, A, v);
  const Matrix V = principalLog(W);
  if (2.0 * V.norm() <= kDexpCrossover)  // ||ad_V|| <= 2||V||
    return dexpInverse(A.spec, V, dR);
  // fourth-order stencil fallback for logs far from the center
  const double h = 1e-4;
  auto mu = [&](double s) -> Matrix {
    return principalLog(expNegX * relatorValue(displace(A, v, s)));
  };
  return (-mu(2 * h) + 8.0 * mu(h) - 8.0 * mu(-h) + mu(-2 * h)) / (12.0 * h);
}

Complex expPullbackLambda(const GroupSpec& spec, const Matrix& W, const Matrix& a,
                          const Matrix& b, const Matrix& c) {
  return cartanThreeFormRaw(spec, W.exp(), dexpRaw(spec, W, a), dexpRaw(spec, W, b),
                            dexpRaw(spec, W, c));
}

namespace {

Complex gauss16(const std::function<Complex(double)>& f, double lo, double hi) {
  static const std::array<double, 8> xs = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static const std::array<double, 8> ws = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  Complex acc = 0;
  for (int i = 0; i < 8; ++i) {
    acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
  }
  return half * acc;
}

Complex adaptiveGL(const std::function<Complex(double)>& f, double lo, double hi,
                   double tol, int depth) {
  const Complex whole = gauss16(f, lo, hi);
  const double mid = 0.5 * (lo + hi);
  const Complex split = gauss16(f, lo, mid) + gauss16(f, mid, hi);
  if (std::abs(whole - split) <= tol * std::max(1.0, std::abs(split))) return split;
  if (depth >= 20) throw NumericsFailure("primitiveB: quadrature did not converge");
  return adaptiveGL(f, lo, mid, tol, depth + 1) + adaptiveGL(f, mid, hi, tol, depth + 1);
}

}  // namespace

Complex primitiveB(const AlgebraElement& Z, const Matrix& u, const Matrix& v,
                   const CentralTwist& t) {
  const Matrix D = Z.m - t.X.m;
  if (D.norm() < 1e-15) return 0.0;
  const GroupSpec& spec = Z.spec;
  auto integrand = [&](double s) -> Complex {
    return s * s * expPullbackLambda(spec, t.X.m + s * D, D, u, v);
  };
  return adaptiveGL(integrand, 0.0, 1.0, kQuadratureInternalTol, 0);
}

Complex omegaPair(const GroupSpec& spec, const Matrix& a, const Matrix& b,
                  const Matrix& p, const Matrix& q, const Matrix& pp,
                  const Matrix& qp) {
  const Matrix ia = a.inverse(), ib = b.inverse();
  return 0.5 * (traceForm(spec, ia * p, qp * ib) - traceForm(spec, ia * pp, q * ib));
}

Complex omegaC(const RepPoint& A, const TangentTuple& u, const TangentTuple& v,
               const TwoChain& c, const CentralTwist& t) {
  Complex total = 0;
  for (const ChainTerm& term : c.terms) {
    const Matrix av = evaluateWord(term.a, A);
    const Matrix bv = evaluateWord(term.b, A);
    total += double(term.coeff) *
             omegaPair(A.spec, av, bv, wordDifferential(term.a, A, u),
                       wordDifferential(term.b, A, u), wordDifferential(term.a, A, v),
                       wordDifferential(term.b, A, v));
  }
  const AlgebraElement Z = complexMomentum(A, t);
  total += primitiveB(Z, complexMomentumDifferential(A, u, t),
                      complexMomentumDifferential(A, v, t), t);
  return total;
}

CompactAlgebraElement realMomentum(const RepPoint& A) {
  Matrix m = Matrix::Zero(A.spec.n, A.spec.n);
  for (const Matrix& Aj : A.tuple) {
    PolarDecomposition pd = polar(GroupElement(A.spec, Aj, unchecked));
    m += pd.k.m * pd.Y.m * pd.k.m.adjoint() - pd.Y.m;
  }
  return CompactAlgebraElement(A.spec, std::move(m), unchecked);
}

double kahlerPotential(const RepPoint& A) {
  double phi = 0;
  for (const Matrix& Aj : A.tuple) {
    PolarDecomposition pd = polar(GroupElement(A.spec, Aj, unchecked));
    phi += compactInner(A.spec, pd.Y.m, pd.Y.m);
  }
  return phi;
}

double fiberResidual(const RepPoint& A, const CentralTwist& t) {
  return (relatorValue(A) - t.expX).norm();
}

RepPoint projectToFiber(RepPoint A, const CentralTwist& t, const FiberSampleConfig& cfg) {
  const auto basis = orthonormalAlgebraBasis(A.spec);
  const int d = static_cast<int>(basis.size());
  const int nslots = A.size();
  const int n = A.spec.n;

  double res = fiberResidual(A, t);
  for (int iter = 0; iter < cfg.maxIter; ++iter) {
    if (res <= cfg.targetResidual) return A;
    const Matrix F = complexMomentum(A, t).m - t.X.m;

    // Jacobian columns: D mu_C on right-translated basis tangents
    Matrix J(n * n, nslots * d);
    for (int slot = 0; slot < nslots; ++slot)
      for (int bi = 0; bi < d; ++bi) {
        TangentTuple tv = TangentTuple::zero(A);
        tv.entries[slot] = basis[bi] * A.tuple[slot];
        const Matrix col = complexMomentumDifferential(A, tv, t);
        J.col(slot * d + bi) = Eigen::Map<const Vector>(col.data(), n * n);
      }
    Vector rhs = -Eigen::Map<const Vector>(F.data(), n * n);
    // the residual is traceless, so J is structurally rank deficient; a
    // thresholded pseudo-inverse keeps the minimum-norm step smooth in A
    Eigen::JacobiSVD<Matrix> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    Vector step = svd.solve(rhs);

    // damped update with 0.5 backtracking on the residual
    double damping = 1.0;
    for (int bt = 0; bt < 30; ++bt) {
      RepPoint trial = A;
      for (int slot = 0; slot < nslots; ++slot) {
        const Matrix delta =
            algebraFromCoordinates(basis, step.segment(slot * d, d) * damping);
        trial.tuple[slot] = delta.exp() * A.tuple[slot];
      }
      const double tres = fiberResidual(trial, t);
      if (tres < res) {
        A = std::move(trial);
        res = tres;
        break;
      }
      damping *= 0.5;
      if (bt == 29)
        throw ConvergenceFailure("fiber projection stalled at residual " +
                                 std::to_string(res));
    }
  }
  if (res <= cfg.targetResidual) return A;
  throw ConvergenceFailure("fiber projection did not reach target residual, floor " +
                           std::to_string(res));
}

namespace {

RepPoint structuredSeed(const GroupSpec& spec, int genus, const CentralTwist& t,
                        std::uint64_t seed) {
  const int n = spec.n;
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dull + 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto cgauss = [&] { return Complex(gauss(rng), gauss(rng)); };

  if ((t.expX - Matrix::Identity(n, n)).norm() < 1e-14) {
    // commuting tuple: simultaneous exponentials of one diagonal direction
    std::vector<Matrix> tuple;
    const Matrix P = randomGroupElement(spec, seed ^ 0xabcdu, 0.4).m;
    const Matrix Pi = P.inverse();
    for (int j = 0; j < 2 * genus; ++j) {
      Matrix D = Matrix::Zero(n, n);
      Complex total = 0;
      for (int i = 0; i + 1 < n; ++i) {
        D(i, i) = 0.5 * cgauss();
        total += D(i, i);
      }
      D(n - 1, n - 1) = spec.isSpecial() ? -total : 0.5 * cgauss();
      tuple.push_back(P * D.exp() * Pi);
    }
    return RepPoint(spec, genus, std::move(tuple));
  }

  if (!spec.isSpecial()) {
    // scaled Weyl pair: A = lam clock^d, B = shift diag(mu), so that
    // [A, B] = e^{2 pi i d / n} I exactly; the scales cancel in the
    // commutator.  For n = 2 this is the anticommuting-pair family
    // diag(lam, -lam), antidiag(b1, b2).
    const Matrix P = randomGroupElement(spec, seed ^ 0x1234u, 0.3).m;
    const Matrix Pi = P.inverse();
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / n);
    Matrix clockPow = Matrix::Zero(n, n);
    Matrix shifted = Matrix::Zero(n, n);
    const Complex lam = 0.3 * cgauss() + Complex(1.0, 0);  // keep away from 0
    for (int i = 0; i < n; ++i) {
      clockPow(i, i) = lam * std::pow(omega, double(i * t.degree));
      shifted((i + 1) % n, i) = 0.3 * cgauss() + Complex(1.0, 0);
    }
    std::vector<Matrix> tuple{P * clockPow * Pi, P * shifted * Pi};
    for (int j = 2; j < 2 * genus; ++j) tuple.push_back(Matrix::Identity(n, n));
    return RepPoint(spec, genus, std::move(tuple));
  }
  throw ConfigError("no structured seed family for " + spec.name() + " twist " +
                    std::to_string(t.degree));
}

}  // namespace

RepPoint sampleFiberPoint(const GroupSpec& spec, int genus, const CentralTwist& t,
                          std::uint64_t seed, const FiberSampleConfig& cfg) {
  if (!(spec == t.spec)) throw ConfigError("twist built for a different group");
  if (cfg.structured) return structuredSeed(spec, genus, t, seed);

  if (!t.isTrivial()) {
    // Newton from the structured family keeps the relator in the chart
    // around exp(X); a fully random start would sit near the wrong central
    // value and outside the principal branch.
    RepPoint start = structuredSeed(spec, genus, t, seed);
    for (int j = 0; j < 2 * genus; ++j) {
      const Matrix wiggle =
          randomAlgebraElement(spec, seed ^ (0x51ed2701u + j), cfg.spread * 0.3).m;
      start.tuple[j] = wiggle.exp() * start.tuple[j];
    }
    return projectToFiber(std::move(start), t, cfg);
  }

  std::vector<Matrix> tuple;
  for (int j = 0; j < 2 * genus; ++j)
    tuple.push_back(randomGroupElement(spec, seed * 977 + j, cfg.spread).m);
  return projectToFiber(RepPoint(spec, genus, std::move(tuple)), t, cfg);
}

TangentTuple infinitesimalAction(const RepPoint& A, const Matrix& xi) {
  TangentTuple v;
  v.entries.reserve(A.size());
  for (const Matrix& Aj : A.tuple) v.entries.push_back(xi * Aj - Aj * xi);
  return v;
}

TangentTuple applyJ(const TangentTuple& v) {
  TangentTuple out;
  out.entries.reserve(v.entries.size());
  for (const Matrix& e : v.entries) out.entries.push_back(Complex(0, 1) * e);
  return out;
}

RepPoint displace(const RepPoint& A, const TangentTuple& v, double tstep) {
  RepPoint out = A;
  for (int j = 0; j < A.size(); ++j) {
    const Matrix dir = A.tuple[j].inverse() * v.entries[j];
    out.tuple[j] = A.tuple[j] * (tstep * dir).exp();
  }
  return out;
}

RepPoint conjugateTuple(const RepPoint& A, const Matrix& g) {
  RepPoint out = A;
  const Matrix gi = g.inverse();
  for (auto& Aj : out.tuple) Aj = g * Aj * gi;
  return out;
}

TangentTuple randomTangent(const RepPoint& A, std::uint64_t seed, double spread) {
  TangentTuple v;
  v.entries.reserve(A.size());
  for (int j = 0; j < A.size(); ++j)
    v.entries.push_back(A.tuple[j] *
                        randomAlgebraElement(A.spec, seed * 131 + j, spread).m);
  return v;
}

double centralDifference(const std::function<double(const RepPoint&)>& f,
                         const RepPoint& A, const TangentTuple& v, double h) {
  return (f(displace(A, v, h)) - f(displace(A, v, -h))) / (2.0 * h);
}

Complex centralDifferenceC(const std::function<Complex(const RepPoint&)>& f,
                           const RepPoint& A, const TangentTuple& v, double h) {
  return (f(displace(A, v, h)) - f(displace(A, v, -h))) / (2.0 * h);
}

}  // namespace repvar
