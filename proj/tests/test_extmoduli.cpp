#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "repvar/extmoduli.hpp"

using namespace repvar;

namespace {

RepPoint randomPoint(const GroupSpec& spec, int genus, std::uint64_t seed,
                     double spread = 0.3) {
  std::vector<Matrix> tuple;
  for (int j = 0; j < 2 * genus; ++j)
    tuple.push_back(randomGroupElement(spec, seed * 100 + j, spread).m);
  return RepPoint(spec, genus, std::move(tuple));
}

RepPoint quaternionicPair(const GroupSpec& gl2) {
  Matrix A(2, 2), B(2, 2);
  A << Complex(0, 1), 0, 0, Complex(0, -1);
  B << 0, 1, -1, 0;
  return RepPoint(gl2, 1, {A, B});
}

}  // namespace

TEST_SUITE("extmoduli") {

TEST_CASE("relatorValue on structured tuples") {
  const GroupSpec gl2 = generalLinear(2);
  std::vector<Matrix> id(2, Matrix::Identity(2, 2));
  CHECK((relatorValue(RepPoint(gl2, 1, id)) - Matrix::Identity(2, 2)).norm() == 0.0);

  // quaternionic pair: [A, B] = -I by direct multiplication
  const RepPoint q = quaternionicPair(gl2);
  const Matrix direct = q.tuple[0] * q.tuple[1] * q.tuple[0].inverse() *
                        q.tuple[1].inverse();
  CHECK((relatorValue(q) - direct).norm() == 0.0);
  CHECK((relatorValue(q) + Matrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("complexMomentum values and equivariance") {
  const GroupSpec gl2 = generalLinear(2);
  const CentralTwist t0 = centralTwist(gl2, 0);
  std::vector<Matrix> id(2, Matrix::Identity(2, 2));
  CHECK(complexMomentum(RepPoint(gl2, 1, id), t0).m.norm() == 0.0);

  // central log forced at the quaternionic pair with twist 1
  const CentralTwist t1 = centralTwist(gl2, 1);
  const AlgebraElement mu = complexMomentum(quaternionicPair(gl2), t1);
  CHECK((mu.m - Matrix::Identity(2, 2) * Complex(0, M_PI)).norm() < 1e-12);

  for (int seed = 0; seed < 20; ++seed) {
    const RepPoint A = randomPoint(specialLinear(2), 2, seed);
    const CentralTwist ts = centralTwist(specialLinear(2), 0);
    const Matrix g = randomGroupElement(specialLinear(2), seed + 500, 0.4).m;
    const Matrix lhs = complexMomentum(conjugateTuple(A, g), ts).m;
    const Matrix rhs = g * complexMomentum(A, ts).m * g.inverse();
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("complexMomentumDifferential matches finite differences") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  const double h = 1e-6;
  for (int seed = 0; seed < 15; ++seed) {
    const RepPoint A = randomPoint(sl2, 1, seed);
    const TangentTuple v = randomTangent(A, seed + 40, 1.0);
    const Matrix an = complexMomentumDifferential(A, v, t);
    const Matrix fd = (complexMomentum(displace(A, v, h), t).m -
                       complexMomentum(displace(A, v, -h), t).m) /
                      (2 * h);
    CHECK((an - fd).norm() <= 1e-8 * std::max(1.0, an.norm()));
  }
}

TEST_CASE("primitiveB degenerate arguments") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  const AlgebraElement Z = randomAlgebraElement(sl2, 3, 0.25);
  const Matrix u = randomAlgebraElement(sl2, 4, 1.0).m;
  CHECK(std::abs(primitiveB(Z, u, u, t)) < 1e-15);  // antisymmetry of the 3-form
  const AlgebraElement atX(sl2, Matrix::Zero(2, 2));
  const Matrix v = randomAlgebraElement(sl2, 5, 1.0).m;
  CHECK(std::abs(primitiveB(atX, u, v, t)) == 0.0);  // zero-length radial path
}

TEST_CASE("primitiveB is a primitive of exp*lambda") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  const double h = 1e-5;
  for (int seed = 0; seed < 10; ++seed) {
    const Matrix Z = randomAlgebraElement(sl2, 3 * seed, 0.25).m;
    const Matrix a = randomAlgebraElement(sl2, 3 * seed + 1, 1.0).m;
    const Matrix b = randomAlgebraElement(sl2, 3 * seed + 2, 1.0).m;
    const Matrix c = randomAlgebraElement(sl2, 3 * seed + 7, 1.0).m;
    auto B = [&](const Matrix& P, const Matrix& x, const Matrix& y) {
      return primitiveB(AlgebraElement(sl2, P, unchecked), x, y, t);
    };
    const Complex dB = ((B(Z + h * a, b, c) - B(Z - h * a, b, c)) -
                        (B(Z + h * b, a, c) - B(Z - h * b, a, c)) +
                        (B(Z + h * c, a, b) - B(Z - h * c, a, b))) /
                       (2 * h);
    const Complex lam = expPullbackLambda(sl2, Z, a, b, c);
    CHECK(std::abs(dB - lam) <= 1e-6 * std::max(1.0, std::abs(lam)));
  }
}

TEST_CASE("omegaC antisymmetry and momentum property") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  const TwoChain chain = standardTwoChain(1);
  const RepPoint A = randomPoint(sl2, 1, 77);
  const TangentTuple u = randomTangent(A, 78, 1.0);
  CHECK(std::abs(omegaC(A, u, u, chain, t)) < 1e-14);

  const double h = 1e-5;
  for (int seed = 0; seed < 10; ++seed) {
    const RepPoint P = randomPoint(sl2, 1, 300 + seed);
    const Matrix xi = randomAlgebraElement(sl2, 400 + seed, 1.0).m;
    const TangentTuple v = randomTangent(P, 500 + seed, 1.0);
    const Complex lhs = omegaC(P, infinitesimalAction(P, xi), v, chain, t);
    const Complex rhs = centralDifferenceC(
        [&](const RepPoint& Q) { return traceForm(sl2, complexMomentum(Q, t).m, xi); },
        P, v, h);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("omegaC G-invariance") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  const TwoChain chain = standardTwoChain(2);
  for (int seed = 0; seed < 5; ++seed) {
    const RepPoint A = randomPoint(sl2, 2, 600 + seed);
    const TangentTuple u = randomTangent(A, 700 + seed, 1.0);
    const TangentTuple v = randomTangent(A, 800 + seed, 1.0);
    const Complex base = omegaC(A, u, v, chain, t);
    const Matrix g = randomGroupElement(sl2, 900 + seed, 0.4).m;
    TangentTuple gu, gv;
    const Matrix gi = g.inverse();
    for (int j = 0; j < A.size(); ++j) {
      gu.entries.push_back(g * u.entries[j] * gi);
      gv.entries.push_back(g * v.entries[j] * gi);
    }
    const Complex moved = omegaC(conjugateTuple(A, g), gu, gv, chain, t);
    CHECK(std::abs(moved - base) <= 1e-9 * std::max(1.0, std::abs(base)));
  }
}

TEST_CASE("realMomentum structured zeros and equivariance") {
  const GroupSpec gl2 = generalLinear(2);
  // unitary tuple
  std::vector<Matrix> uni;
  for (int j = 0; j < 4; ++j)
    uni.push_back(matExp(randomCompactElement(gl2, j, 0.6).asAlgebra()).m);
  CHECK(realMomentum(RepPoint(gl2, 2, uni)).m.norm() < 1e-13);

  // positive-definite Hermitian exponentials: k_j = I
  std::vector<Matrix> pos;
  for (int j = 0; j < 4; ++j) {
    const Matrix Y = randomCompactElement(gl2, 10 + j, 0.6).m;
    pos.push_back((Complex(0, 1) * Y).exp());
  }
  CHECK(realMomentum(RepPoint(gl2, 2, pos)).m.norm() < 1e-13);

  for (int seed = 0; seed < 10; ++seed) {
    const RepPoint A = randomPoint(gl2, 2, 2000 + seed, 0.5);
    const Matrix k = matExp(randomCompactElement(gl2, 3000 + seed, 0.7).asAlgebra()).m;
    const Matrix lhs = realMomentum(conjugateTuple(A, k)).m;
    const Matrix rhs = k * realMomentum(A).m * k.adjoint();
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
    // anti-Hermitian output
    CHECK((lhs + lhs.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("kahlerPotential values and invariance") {
  const GroupSpec gl2 = generalLinear(2);
  std::vector<Matrix> uni;
  for (int j = 0; j < 2; ++j)
    uni.push_back(matExp(randomCompactElement(gl2, j, 0.6).asAlgebra()).m);
  CHECK(kahlerPotential(RepPoint(gl2, 1, uni)) < 1e-14);

  // A1 = diag(e, 1/e), rest unitary: phi = 2
  Matrix d(2, 2);
  d << std::exp(1.0), 0, 0, std::exp(-1.0);
  CHECK(kahlerPotential(RepPoint(gl2, 1, {d, uni[1]})) == doctest::Approx(2.0).epsilon(1e-12));

  for (int seed = 0; seed < 10; ++seed) {
    const RepPoint A = randomPoint(gl2, 1, 4000 + seed, 0.5);
    CHECK(kahlerPotential(A) >= 0.0);
    const Matrix k = matExp(randomCompactElement(gl2, 5000 + seed, 0.7).asAlgebra()).m;
    CHECK(kahlerPotential(conjugateTuple(A, k)) ==
          doctest::Approx(kahlerPotential(A)).epsilon(1e-12));
  }
}

TEST_CASE("potential identity with the frozen constant") {
  const GroupSpec gl2 = generalLinear(2);
  const double h = 1e-5;
  for (int seed = 0; seed < 25; ++seed) {
    const RepPoint A = randomPoint(gl2, 2, 6000 + seed, 0.4);
    const Matrix xi = randomCompactElement(gl2, 7000 + seed, 1.0).m;
    const double num = compactInner(gl2, realMomentum(A).m, xi);
    const double den =
        0.5 * centralDifference(kahlerPotential, A, applyJ(infinitesimalAction(A, xi)), h);
    CHECK(std::abs(num - kPotentialConstant * den) <= 1e-6 * std::max(1.0, std::abs(den)));
  }
}

TEST_CASE("sampleFiberPoint structured and Newton modes") {
  const GroupSpec gl2 = generalLinear(2);
  const CentralTwist t1 = centralTwist(gl2, 1);
  FiberSampleConfig structured;
  structured.structured = true;

  // commuting pair at trivial twist
  const CentralTwist t0 = centralTwist(gl2, 0);
  const RepPoint comm = sampleFiberPoint(gl2, 1, t0, 5, structured);
  CHECK(fiberResidual(comm, t0) < 1e-12);
  CHECK((comm.tuple[0] * comm.tuple[1] - comm.tuple[1] * comm.tuple[0]).norm() < 1e-12);

  // anticommuting pair: [A,B] = -I essentially exactly
  const RepPoint anti = sampleFiberPoint(gl2, 1, t1, 5, structured);
  CHECK(fiberResidual(anti, t1) < 1e-13);
  CHECK((anti.tuple[0] * anti.tuple[1] + anti.tuple[1] * anti.tuple[0]).norm() < 1e-13);

  // Weyl pair at n = 3: clock and shift, commutator a cube root of unity
  const GroupSpec gl3 = generalLinear(3);
  const CentralTwist t31 = centralTwist(gl3, 1);
  const RepPoint weyl = sampleFiberPoint(gl3, 1, t31, 9, structured);
  CHECK(fiberResidual(weyl, t31) < 1e-13);
  CHECK((weyl.tuple[0] * weyl.tuple[1] -
         std::polar(1.0, 2.0 * M_PI / 3.0) * weyl.tuple[1] * weyl.tuple[0])
            .norm() < 1e-13);

  // Newton mode, genus 2 SL(2), many seeds
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist ts = centralTwist(sl2, 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RepPoint A = sampleFiberPoint(sl2, 2, ts, seed);
    CHECK(fiberResidual(A, ts) <= 1e-10);
  }
  // determinism
  const RepPoint a = sampleFiberPoint(sl2, 2, ts, 11);
  const RepPoint b = sampleFiberPoint(sl2, 2, ts, 11);
  for (int j = 0; j < 4; ++j) CHECK((a.tuple[j] - b.tuple[j]).norm() == 0.0);
}

}  // TEST_SUITE
