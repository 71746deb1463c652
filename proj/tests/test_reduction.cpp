#include <doctest.h>

#include <random>

#include "repvar/reduction.hpp"

using namespace repvar;

namespace {

RepPoint randomPoint(const GroupSpec& spec, int genus, std::uint64_t seed,
                     double spread = 0.3) {
  std::vector<Matrix> tuple;
  for (int j = 0; j < 2 * genus; ++j)
    tuple.push_back(randomGroupElement(spec, seed * 100 + j, spread).m);
  return RepPoint(spec, genus, std::move(tuple));
}

RepPoint unitaryFiberPoint(const GroupSpec& spec, int genus, std::uint64_t seed) {
  // commuting unitary tuple: on the fiber and on the zero set
  std::vector<Matrix> tuple;
  for (int j = 0; j < 2 * genus; ++j) {
    Matrix d = Matrix::Zero(spec.n, spec.n);
    std::mt19937_64 rng(seed * 31 + j);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    double total = 0;
    for (int i = 0; i + 1 < spec.n; ++i) {
      const double th = angle(rng);
      d(i, i) = std::polar(1.0, th);
      total += th;
    }
    d(spec.n - 1, spec.n - 1) =
        spec.isSpecial() ? std::polar(1.0, -total) : std::polar(1.0, angle(rng));
    tuple.push_back(d);
  }
  return RepPoint(spec, genus, std::move(tuple));
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("flow on a unitary fiber point terminates immediately") {
  const RepPoint A = unitaryFiberPoint(specialLinear(2), 2, 3);
  const FlowReport rep = flowToKempfNess(A, FlowConfig{});
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(rep.finalNorm <= 1e-8);
}

TEST_CASE("flow drives the anticommuting pair to zero traces") {
  const GroupSpec gl2 = generalLinear(2);
  const CentralTwist t1 = centralTwist(gl2, 1);
  FiberSampleConfig fs;
  fs.structured = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RepPoint A = sampleFiberPoint(gl2, 1, t1, seed, fs);
    A = conjugateTuple(A, randomGroupElement(gl2, seed + 50, 0.35).m);
    std::vector<FlowTraceRow> trace;
    const FlowReport rep = flowToKempfNess(A, FlowConfig{}, &trace);
    CHECK(rep.converged);
    CHECK(rep.finalNorm <= rep.initialNorm);
    for (std::size_t k = 1; k < trace.size(); ++k)
      CHECK(trace[k].norm <= trace[k - 1].norm);
    CHECK(rep.invariantDrift <= 1e-9);
    CHECK(rep.fiberDrift <= 1e-12);
    const RepPoint& F = rep.finalPoint;
    CHECK(std::abs(F.tuple[0].trace()) <= 1e-6);
    CHECK(std::abs(F.tuple[1].trace()) <= 1e-6);
    CHECK(std::abs((F.tuple[0] * F.tuple[1]).trace()) <= 1e-6);
    // conjugator actually maps start to end
    const RepPoint moved = conjugateTuple(A, rep.conjugator);
    for (int j = 0; j < 2; ++j)
      CHECK((moved.tuple[j] - F.tuple[j]).norm() < 1e-8);
  }
}

TEST_CASE("semistabilityTest on random genus-2 fiber samples") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RepPoint A = sampleFiberPoint(sl2, 2, t, seed);
    const SemistabilityResult res = semistabilityTest(A, FlowConfig{});
    if (res.semistable)
      ++good;
    else
      MESSAGE("stall at seed ", seed, ", floor ", res.floorNorm);
    CHECK(res.floorNorm == res.report.finalNorm);
  }
  // semistable points are dense; stalls are logged above, never impossible
  CHECK(good >= 99);
}

TEST_CASE("traceInvariants defaults and conjugation invariance") {
  const GroupSpec gl2 = generalLinear(2);
  std::vector<Matrix> id(4, Matrix::Identity(2, 2));
  const Vector inv = traceInvariants(RepPoint(gl2, 2, id));
  CHECK(inv.size() == 4 + 6 + 4);
  for (Eigen::Index k = 0; k < inv.size(); ++k) CHECK(inv(k) == Complex(2.0));

  for (int seed = 0; seed < 100; ++seed) {
    const RepPoint A = randomPoint(gl2, 2, 600 + seed);
    const Matrix g = randomGroupElement(gl2, 900 + seed, 0.4).m;
    const Vector a = traceInvariants(A);
    const Vector b = traceInvariants(conjugateTuple(A, g));
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("sameReducedPoint: conjugates, independents, semisimplification") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  FlowConfig cfg;
  const RepPoint p = projectToFiber(randomPoint(sl2, 2, 21), t);
  const Matrix g = randomGroupElement(sl2, 22, 0.4).m;
  CHECK(sameReducedPoint(p, conjugateTuple(p, g), cfg, 1e-6) ==
        ReducedComparison::Same);

  const RepPoint q = projectToFiber(randomPoint(sl2, 2, 23), t);
  CHECK(sameReducedPoint(p, q, cfg, 1e-6) == ReducedComparison::Different);

  // unipotent pair and its diagonal semisimplification define the same point
  Matrix U1(2, 2), U2(2, 2);
  U1 << 1, 1, 0, 1;
  U2 << 1, 0.5, 0, 1;
  const RepPoint uni(sl2, 1, {U1, U2});
  std::vector<Matrix> idt(2, Matrix::Identity(2, 2));
  const RepPoint semis(sl2, 1, idt);
  // all trace invariants agree exactly (everything unipotent has trace 2),
  // so this exercises the flow-convergence path of the comparison
  FlowConfig loose;
  loose.maxIter = 20000;
  loose.gradTol = 1e-4;
  CHECK(sameReducedPoint(uni, semis, loose, 1e-6) == ReducedComparison::Same);
}

TEST_CASE("orbitTypeLabel on the three strata") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  const FlowReport rep =
      flowToKempfNess(projectToFiber(randomPoint(sl2, 2, 31), t), FlowConfig{});
  const StratumLabel irr = orbitTypeLabel(rep.finalPoint);
  CHECK(irr.stabilizerDim == 0);
  CHECK(irr.centerDim == 0);
  CHECK(irr.tag == StratumTag::Irreducible);

  // unitary diagonal point: torus-reducible
  const RepPoint diag = unitaryFiberPoint(sl2, 2, 5);
  const StratumLabel red = orbitTypeLabel(diag);
  CHECK(red.stabilizerDim == 1);
  CHECK(red.tag == StratumTag::ReducibleProper);

  std::vector<Matrix> id(4, Matrix::Identity(2, 2));
  const StratumLabel cen = orbitTypeLabel(RepPoint(sl2, 2, id));
  CHECK(cen.stabilizerDim == 3);
  CHECK(cen.tag == StratumTag::Central);

  // labels are flow stable
  FlowConfig extra;
  extra.maxIter = 50;
  const StratumLabel again =
      orbitTypeLabel(flowToKempfNess(rep.finalPoint, extra).finalPoint);
  CHECK(again.tag == irr.tag);
  CHECK(again.stabilizerDim == irr.stabilizerDim);
}

TEST_CASE("unitaryMatch finds the KN2 conjugation") {
  const GroupSpec sl2 = specialLinear(2);
  const CentralTwist t = centralTwist(sl2, 0);
  FlowConfig cfg;
  const FlowReport fp =
      flowToKempfNess(projectToFiber(randomPoint(sl2, 2, 41), t), cfg);
  const Matrix g = randomGroupElement(sl2, 42, 0.35).m;
  const FlowReport fq = flowToKempfNess(conjugateTuple(fp.finalPoint, g), cfg);
  REQUIRE(fp.converged);
  REQUIRE(fq.converged);
  const Matrix warm = polar(GroupElement(sl2, fq.conjugator * g, unchecked)).k.m;
  const UnitaryMatchResult um = unitaryMatch(fp.finalPoint, fq.finalPoint, warm, 200);
  CHECK(um.distance <= 1e-5);
  CHECK((um.k * um.k.adjoint() - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("flow configuration validation") {
  FlowConfig bad;
  bad.backtrackFactor = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = FlowConfig{};
  bad.gradTol = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

}  // TEST_SUITE
