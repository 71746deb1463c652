#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "repvar/liegroup.hpp"

using namespace repvar;

namespace {

Matrix taylorExp(const Matrix& X, int terms) {
  Matrix acc = Matrix::Identity(X.rows(), X.cols());
  Matrix pow = acc;
  double fact = 1.0;
  for (int k = 1; k <= terms; ++k) {
    pow = pow * X;
    fact *= k;
    acc += pow / fact;
  }
  return acc;
}

}  // namespace

TEST_SUITE("liegroup") {

TEST_CASE("matExp basic values") {
  const GroupSpec gl2 = generalLinear(2);
  CHECK((matExp(AlgebraElement(gl2, Matrix::Zero(2, 2))).m -
         Matrix::Identity(2, 2)).norm() == 0.0);

  Matrix X(2, 2);
  X << Complex(0, M_PI), 0, 0, Complex(0, -M_PI);
  const GroupElement g = matExp(AlgebraElement(gl2, X));
  CHECK((g.m + Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("matExp matches an independent Taylor oracle") {
  const GroupSpec gl2 = generalLinear(2);
  for (int seed = 0; seed < 10; ++seed) {
    AlgebraElement X = randomAlgebraElement(gl2, seed, 0.1);
    X.m *= 0.3 / X.m.norm();
    const Matrix oracle = taylorExp(X.m, 30);
    CHECK((matExp(X).m - oracle).norm() < 1e-12);
  }
}

TEST_CASE("matExp determinant identity and overflow guard") {
  const GroupSpec gl3 = generalLinear(3);
  for (int seed = 0; seed < 20; ++seed) {
    const AlgebraElement X = randomAlgebraElement(gl3, seed, 0.4);
    const Complex det = matExp(X).m.determinant();
    CHECK(std::abs(det - std::exp(X.m.trace())) < 1e-10 * std::abs(det));
  }
  Matrix big = Matrix::Identity(2, 2) * 500.0;
  CHECK_THROWS_AS(matExp(AlgebraElement(generalLinear(2), big)),
                  NumericsFailure);
}

TEST_CASE("matLog round trips and central base") {
  const GroupSpec gl2 = generalLinear(2);
  const AlgebraElement zero(gl2, Matrix::Zero(2, 2));
  CHECK(matLog(GroupElement(gl2, Matrix::Identity(2, 2)), zero).m.norm() == 0.0);

  for (int seed = 0; seed < 20; ++seed) {
    AlgebraElement X = randomAlgebraElement(gl2, seed, 0.08);
    X.m *= 0.2 / X.m.norm();
    CHECK((matLog(matExp(X), zero).m - X.m).norm() < 1e-11);
  }

  // central case: g = -I recovered around base i pi I
  Matrix base = Matrix::Identity(2, 2) * Complex(0, M_PI);
  const AlgebraElement L =
      matLog(GroupElement(gl2, -Matrix::Identity(2, 2)), AlgebraElement(gl2, base));
  CHECK((L.m - base).norm() < 1e-12);
}

TEST_CASE("matLog branch cut guard") {
  const GroupSpec gl2 = generalLinear(2);
  Matrix g(2, 2);
  g << -1, 0, 0, 1;
  CHECK_THROWS_AS(matLog(GroupElement(gl2, g), AlgebraElement(gl2, Matrix::Zero(2, 2))),
                  ChartViolation);
  // non-central base rejected
  Matrix offc = Matrix::Zero(2, 2);
  offc(0, 1) = 0.5;
  CHECK_THROWS_AS(matLog(GroupElement(gl2, Matrix::Identity(2, 2)),
                         AlgebraElement(gl2, offc)),
                  InvariantViolation);
}

TEST_CASE("polar decomposition") {
  const GroupSpec gl2 = generalLinear(2);
  // unitary input: k = g, Y = 0
  const GroupElement u = matExp(randomCompactElement(gl2, 3, 0.7).asAlgebra());
  const PolarDecomposition pu = polar(u);
  CHECK(pu.Y.m.norm() < 1e-12);
  CHECK((pu.k.m - u.m).norm() < 1e-12);

  // positive-definite input forces k = I
  Matrix d(2, 2);
  d << std::exp(1.0), 0, 0, std::exp(-1.0);
  const PolarDecomposition pd = polar(GroupElement(gl2, d));
  CHECK((pd.k.m - Matrix::Identity(2, 2)).norm() < 1e-12);
  Matrix expectY(2, 2);
  expectY << Complex(0, -1), 0, 0, Complex(0, 1);
  CHECK((pd.Y.m - expectY).norm() < 1e-12);

  // round trip at n = 3
  const GroupSpec gl3 = generalLinear(3);
  for (int seed = 0; seed < 20; ++seed) {
    const GroupElement g = randomGroupElement(gl3, seed, 0.5);
    const PolarDecomposition p = polar(g);
    CHECK((p.k.m * matExp(AlgebraElement(gl3, Complex(0, 1) * p.Y.m)).m - g.m).norm() <
          1e-11 * g.m.norm());
    CHECK((p.k.m * p.k.m.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-12);
  }
  // unit determinant of the unitary factor in the SL case
  const GroupSpec sl2 = specialLinear(2);
  for (int seed = 0; seed < 5; ++seed) {
    const PolarDecomposition p = polar(randomGroupElement(sl2, seed, 0.5));
    CHECK(std::abs(p.k.m.determinant() - 1.0) < 1e-11);
    CHECK(std::abs(p.Y.m.trace()) < 1e-11);
  }
}

TEST_CASE("traceForm values and invariance") {
  const GroupSpec gl2 = generalLinear(2);
  Matrix D(2, 2);
  D << Complex(0, 1), 0, 0, Complex(0, -1);
  const AlgebraElement X(gl2, D);
  CHECK(std::abs(traceForm(X, X) - Complex(-2.0)) < 1e-15);

  for (int seed = 0; seed < 30; ++seed) {
    const Matrix A = randomAlgebraElement(gl2, 3 * seed, 1.0).m;
    const Matrix B = randomAlgebraElement(gl2, 3 * seed + 1, 1.0).m;
    const Matrix Z = randomAlgebraElement(gl2, 3 * seed + 2, 1.0).m;
    // symmetry
    CHECK(std::abs(traceForm(gl2, A, B) - traceForm(gl2, B, A)) < 1e-13);
    // infinitesimal invariance <[Z,A],B> + <A,[Z,B]> = 0
    CHECK(std::abs(traceForm(gl2, Z * A - A * Z, B) +
                   traceForm(gl2, A, Z * B - B * Z)) < 1e-12);
    // Ad-invariance
    const Matrix g = randomGroupElement(gl2, seed + 100, 0.5).m;
    const Matrix gi = g.inverse();
    CHECK(std::abs(traceForm(gl2, g * A * gi, g * B * gi) - traceForm(gl2, A, B)) <
          1e-11 * std::max(1.0, std::abs(traceForm(gl2, A, B))));
  }

  // negative definite on k at scale 1
  for (int seed = 0; seed < 20; ++seed) {
    const Matrix Y = randomCompactElement(gl2, seed, 1.0).m;
    if (Y.norm() < 1e-12) continue;
    CHECK(traceForm(gl2, Y, Y).real() < 0.0);
    CHECK(std::abs(traceForm(gl2, Y, Y).imag()) < 1e-13);
  }
}

TEST_CASE("formAdjoint pairing and nondegeneracy") {
  const GroupSpec sl2 = specialLinear(2);
  const AlgebraElement zero(sl2, Matrix::Zero(2, 2));
  for (int seed = 0; seed < 5; ++seed) {
    const AlgebraElement Y = randomAlgebraElement(sl2, seed, 1.0);
    CHECK(std::abs(formAdjoint(zero)(Y)) == 0.0);
    CHECK(std::abs(formAdjoint(Y)(Y) - traceForm(Y, Y)) == 0.0);
  }
  // Gram matrix of psi on an sl2 basis is nondegenerate
  const auto basis = orthonormalAlgebraBasis(sl2);
  Matrix gram(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      gram(i, j) = traceForm(sl2, basis[i], basis[j]);
  Eigen::JacobiSVD<Matrix> svd(gram);
  CHECK(svd.singularValues().minCoeff() > 0.1);
}

TEST_CASE("dexp special values and finite-difference oracle") {
  const GroupSpec gl2 = generalLinear(2);
  const Matrix V = randomAlgebraElement(gl2, 7, 1.0).m;
  CHECK((dexp(AlgebraElement(gl2, Matrix::Zero(2, 2)), V) - V).norm() < 1e-15);

  const AlgebraElement X = randomAlgebraElement(gl2, 8, 0.4);
  CHECK((dexp(X, X.m) - matExp(X).m * X.m).norm() < 1e-13);

  // d/dt exp(X + tV) at 0 by central differences, 200 random points
  const double h = 1e-5;
  for (int seed = 0; seed < 200; ++seed) {
    const Matrix Xm = randomAlgebraElement(gl2, 2 * seed, 0.5).m;
    const Matrix Vm = randomAlgebraElement(gl2, 2 * seed + 1, 1.0).m;
    const Matrix fd = ((Xm + h * Vm).exp() - (Xm - h * Vm).exp()) / (2 * h);
    const Matrix an = dexpRaw(gl2, Xm, Vm);
    CHECK((an - fd).norm() <= 1e-8 * std::max(1.0, an.norm()));
  }
}

TEST_CASE("dexpInverse inverts dexp") {
  const GroupSpec gl3 = generalLinear(3);
  for (int seed = 0; seed < 20; ++seed) {
    const Matrix V = randomAlgebraElement(gl3, seed, 0.4).m;
    const Matrix S = randomAlgebraElement(gl3, seed + 50, 1.0).m;
    const Matrix T = dexpRaw(gl3, V, S);
    CHECK((dexpInverse(gl3, V, T) - S).norm() < 1e-11 * std::max(1.0, S.norm()));
  }
}

TEST_CASE("cartanThreeForm antisymmetry, structure constants, invariance") {
  const GroupSpec gl2 = generalLinear(2);
  const GroupElement g = randomGroupElement(gl2, 11, 0.4);
  const Matrix u = randomAlgebraElement(gl2, 12, 1.0).m;
  const Matrix v = randomAlgebraElement(gl2, 13, 1.0).m;
  const Matrix w = randomAlgebraElement(gl2, 14, 1.0).m;
  CHECK(std::abs(cartanThreeForm(g, u, u, w)) == 0.0);

  // total antisymmetry under permutation-sign evaluation
  const Complex base = cartanThreeForm(g, u, v, w);
  CHECK(std::abs(cartanThreeForm(g, v, u, w) + base) < 1e-12 * std::abs(base));
  CHECK(std::abs(cartanThreeForm(g, v, w, u) - base) < 1e-12 * std::abs(base));
  CHECK(std::abs(cartanThreeForm(g, w, u, v) - base) < 1e-12 * std::abs(base));

  // su(2) structure-constant oracle at the identity
  Matrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  const Matrix e1 = Complex(0, 0.5) * s1, e2 = Complex(0, 0.5) * s2,
               e3 = Complex(0, 0.5) * s3;
  const GroupElement id(gl2, Matrix::Identity(2, 2));
  const Complex expected = 0.5 * ((e1 * e2 - e2 * e1) * e3).trace();
  CHECK(std::abs(cartanThreeForm(id, e1, e2, e3) - expected) < 1e-15);
  // at the identity the 3-form is the triple product
  CHECK(std::abs(tripleProduct(gl2, e1, e2, e3) - expected) < 1e-15);

  // bi-invariance: simultaneous left translation
  const Matrix h = randomGroupElement(gl2, 15, 0.5).m;
  const GroupElement hg(gl2, h * g.m, unchecked);
  CHECK(std::abs(cartanThreeForm(hg, h * u, h * v, h * w) - base) <
        1e-10 * std::max(1.0, std::abs(base)));
}

TEST_CASE("equivariantOneForm values and finite-difference oracle") {
  const GroupSpec gl2 = generalLinear(2);
  const GroupElement g = randomGroupElement(gl2, 21, 0.4);
  const Matrix v = g.m * randomAlgebraElement(gl2, 22, 1.0).m;
  const CompactAlgebraElement zero(gl2, Matrix::Zero(2, 2));
  CHECK(std::abs(equivariantOneForm(zero, g, v)) == 0.0);

  // at the identity both Maurer-Cartan forms agree
  const GroupElement id(gl2, Matrix::Identity(2, 2));
  const Matrix a = randomAlgebraElement(gl2, 23, 1.0).m;
  const CompactAlgebraElement X = randomCompactElement(gl2, 24, 1.0);
  CHECK(std::abs(equivariantOneForm(X, id, a) - traceForm(gl2, X.m, a)) < 1e-14);

  // Maurer-Cartan pullbacks by finite differences of translations
  const double h = 1e-5;
  const Matrix dir = g.inverse() * v;
  const Matrix left =
      (principalLog(g.inverse() * (g.m * (h * dir).exp())) -
       principalLog(g.inverse() * (g.m * (-h * dir).exp()))) /
      (2 * h);
  const Matrix rightCurve = (h * dir).exp();
  const Matrix right =
      (principalLog((g.m * rightCurve) * g.inverse()) -
       principalLog((g.m * (-h * dir).exp()) * g.inverse())) /
      (2 * h);
  const Complex oracle = 0.5 * traceForm(gl2, X.m, left + right);
  CHECK(std::abs(equivariantOneForm(X, g, v) - oracle) < 1e-10);
}

TEST_CASE("random elements: determinism and invariants") {
  const GroupSpec sl3 = specialLinear(3);
  const GroupElement a = randomGroupElement(sl3, 42, 0.5);
  const GroupElement b = randomGroupElement(sl3, 42, 0.5);
  CHECK((a.m - b.m).norm() == 0.0);
  CHECK(std::abs(a.m.determinant() - 1.0) <= 1e-10);
  CHECK(std::abs(randomAlgebraElement(sl3, 7, 0.5).m.trace()) < 1e-13);
  const Matrix Y = randomCompactElement(sl3, 7, 0.5).m;
  CHECK((Y + Y.adjoint()).norm() < 1e-13);

  CHECK((randomGroupElement(sl3, 1, 0.0).m - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK(randomAlgebraElement(sl3, 1, 0.0).m.norm() == 0.0);
}

TEST_CASE("element invariant checks") {
  const GroupSpec sl2 = specialLinear(2);
  Matrix notSl(2, 2);
  notSl << 2, 0, 0, 1;
  CHECK_THROWS_AS(GroupElement(sl2, notSl), InvariantViolation);
  Matrix traceful(2, 2);
  traceful << 1, 0, 0, 1;
  CHECK_THROWS_AS(AlgebraElement(sl2, traceful), InvariantViolation);
  Matrix notAnti(2, 2);
  notAnti << 1, 0, 0, -1;
  CHECK_THROWS_AS(CompactAlgebraElement(generalLinear(2), notAnti), InvariantViolation);
}

}  // TEST_SUITE
