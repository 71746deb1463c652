#include "repvar/liegroup.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace repvar {

std::vector<Matrix> orthonormalAlgebraBasis(const GroupSpec& spec) {
  const int n = spec.n;
  std::vector<Matrix> basis;
  basis.reserve(spec.algebraDim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (spec.isSpecial() && i == j) continue;
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      basis.push_back(std::move(e));
    }
  if (spec.isSpecial()) {
    // traceless diagonal family: diag(1,..,1,-k,0,..)/sqrt(k(k+1))
    for (int k = 1; k < n; ++k) {
      Matrix e = Matrix::Zero(n, n);
      for (int i = 0; i < k; ++i) e(i, i) = 1.0;
      e(k, k) = -double(k);
      basis.push_back(e / std::sqrt(double(k) * (k + 1)));
    }
  }
  return basis;
}

std::vector<Matrix> orthonormalCompactBasis(const GroupSpec& spec) {
  const int n = spec.n;
  const double r2 = std::sqrt(2.0);
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix a = Matrix::Zero(n, n);
      a(i, j) = 1.0;
      a(j, i) = -1.0;
      basis.push_back(a / r2);
      Matrix b = Matrix::Zero(n, n);
      b(i, j) = Complex(0, 1);
      b(j, i) = Complex(0, 1);
      basis.push_back(b / r2);
    }
  if (spec.isSpecial()) {
    for (int k = 1; k < n; ++k) {
      Matrix e = Matrix::Zero(n, n);
      for (int i = 0; i < k; ++i) e(i, i) = Complex(0, 1);
      e(k, k) = Complex(0, -double(k));
      basis.push_back(e / std::sqrt(double(k) * (k + 1)));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Matrix e = Matrix::Zero(n, n);
      e(i, i) = Complex(0, 1);
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

Vector algebraCoordinates(const std::vector<Matrix>& basis, const Matrix& X) {
  Vector c(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    c(static_cast<Eigen::Index>(k)) = (X.array() * basis[k].conjugate().array()).sum();
  return c;
}

Matrix algebraFromCoordinates(const std::vector<Matrix>& basis,
                              const Eigen::Ref<const Vector>& coords) {
  Matrix X = Matrix::Zero(basis[0].rows(), basis[0].cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    X += coords(static_cast<Eigen::Index>(k)) * basis[k];
  return X;
}

GroupElement matExp(const AlgebraElement& X) {
  const double norm = X.m.norm();
  if (!(norm <= kExpNormBound))
    throw NumericsFailure("matExp: ||X|| = " + std::to_string(norm) +
                          " exceeds bound " + std::to_string(kExpNormBound));
  return GroupElement(X.spec, X.m.exp(), unchecked);
}

Matrix principalLog(const Matrix& w) {
  Eigen::ComplexEigenSolver<Matrix> es(w, /*computeEigenvectors=*/false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex lambda = es.eigenvalues()(i);
    const double distToCut =
        (lambda.real() >= 0.0) ? std::abs(lambda) : std::abs(lambda.imag());
    if (distToCut < kBranchCutGuard)
      throw ChartViolation("principal log: eigenvalue within " +
                           std::to_string(distToCut) + " of the branch cut");
  }
  return w.log();
}

AlgebraElement matLog(const GroupElement& g, const AlgebraElement& base) {
  // base must be central: scalar for GL, zero for SL.
  const int n = g.spec.n;
  const Matrix scalar = Matrix::Identity(n, n) * (base.m.trace() / double(n));
  if ((base.m - scalar).norm() > 1e-12)
    throw InvariantViolation("matLog: base point is not central");
  const Matrix shifted = (-base.m).exp() * g.m;
  return AlgebraElement(g.spec, base.m + principalLog(shifted), unchecked);
}

PolarDecomposition polar(const GroupElement& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.m.adjoint() * g.m);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw NumericsFailure("polar: decomposition failed (numerically singular input)");
  Eigen::VectorXd halfLog = es.eigenvalues().array().log() * 0.5;
  const Matrix iY = es.eigenvectors() * halfLog.asDiagonal() * es.eigenvectors().adjoint();
  const Matrix Y = Complex(0, -1) * iY;
  const Matrix expNegIY =
      es.eigenvectors() * (-halfLog).array().exp().matrix().asDiagonal() *
      es.eigenvectors().adjoint();
  Matrix k = g.m * expNegIY;
  return {GroupElement(g.spec, std::move(k), unchecked),
          CompactAlgebraElement(g.spec, Y, unchecked)};
}

Complex traceForm(const GroupSpec& spec, const Matrix& X, const Matrix& Y) {
  return spec.scaleOfForm * (X * Y).trace();
}

Complex traceForm(const AlgebraElement& X, const AlgebraElement& Y) {
  return traceForm(X.spec, X.m, Y.m);
}

double compactInner(const GroupSpec& spec, const Matrix& X, const Matrix& Y) {
  return -spec.scaleOfForm * (X * Y).trace().real();
}

Matrix dexpRaw(const GroupSpec& spec, const Matrix& X, const Matrix& V) {
  Matrix term = V;
  Matrix sum = V;
  for (int k = 1; k < 200; ++k) {
    term = -(X * term - term * X) / double(k + 1);
    sum += term;
    if (term.norm() < 1e-16) return X.exp() * sum;
  }
  throw NumericsFailure("dexp: series did not converge, ||ad_X|| too large");
}

Matrix dexp(const AlgebraElement& X, const Matrix& V) {
  return dexpRaw(X.spec, X.m, V);
}

Matrix dexpInverse(const GroupSpec& spec, const Matrix& V, const Matrix& T) {
  // Build the matrix of S -> sum (-ad_V)^k S/(k+1)! on the entry basis and
  // solve.  n <= 3 keeps this a <=9x9 complex system.
  const int n = static_cast<int>(V.rows());
  Matrix op(n * n, n * n);
  for (int col = 0; col < n * n; ++col) {
    Matrix e = Matrix::Zero(n, n);
    e(col % n, col / n) = 1.0;  // column-major, consistent with the Map below
    Matrix term = e;
    Matrix sum = e;
    for (int k = 1; k < 200 && term.norm() > 1e-18; ++k) {
      term = -(V * term - term * V) / double(k + 1);
      sum += term;
    }
    op.col(col) = Eigen::Map<const Vector>(sum.data(), n * n);
  }
  const Matrix rhs = (-V).exp() * T;
  Vector sol = op.partialPivLu().solve(Eigen::Map<const Vector>(rhs.data(), n * n));
  return Eigen::Map<const Matrix>(sol.data(), n, n);
}

Complex cartanThreeFormRaw(const GroupSpec& spec, const Matrix& g, const Matrix& u,
                           const Matrix& v, const Matrix& w) {
  const Matrix gi = g.inverse();
  const Matrix a = gi * u, b = gi * v, c = gi * w;
  return 0.5 * traceForm(spec, a * b - b * a, c);
}

Complex cartanThreeForm(const GroupElement& g, const Matrix& u, const Matrix& v,
                        const Matrix& w) {
  return cartanThreeFormRaw(g.spec, g.m, u, v, w);
}

Complex tripleProduct(const GroupSpec& spec, const Matrix& x, const Matrix& y,
                      const Matrix& z) {
  return 0.5 * traceForm(spec, x * y - y * x, z);
}

Complex equivariantOneForm(const CompactAlgebraElement& X, const GroupElement& g,
                           const Matrix& v) {
  const Matrix gi = g.inverse();
  return 0.5 * traceForm(g.spec, X.m, gi * v + v * gi);
}

namespace {

Matrix gaussianMatrix(const GroupSpec& spec, std::mt19937_64& rng, double spread) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix X(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      X(i, j) = spread * Complex(re, im);
    }
  return X;
}

}  // namespace

AlgebraElement randomAlgebraElement(const GroupSpec& spec, std::uint64_t seed,
                                    double spread) {
  std::mt19937_64 rng(seed);
  Matrix X = gaussianMatrix(spec, rng, spread);
  if (spec.isSpecial()) X -= Matrix::Identity(spec.n, spec.n) * (X.trace() / double(spec.n));
  return AlgebraElement(spec, std::move(X), unchecked);
}

CompactAlgebraElement randomCompactElement(const GroupSpec& spec, std::uint64_t seed,
                                           double spread) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  Matrix X = gaussianMatrix(spec, rng, spread);
  X = 0.5 * (X - X.adjoint()).eval();
  if (spec.isSpecial()) X -= Matrix::Identity(spec.n, spec.n) * (X.trace() / double(spec.n));
  return CompactAlgebraElement(spec, std::move(X), unchecked);
}

GroupElement randomGroupElement(const GroupSpec& spec, std::uint64_t seed,
                                double spread) {
  return matExp(randomAlgebraElement(spec, seed, spread));
}

}  // namespace repvar
