#include "repvar/cohomology.hpp"

#include <cmath>

namespace repvar {

namespace {

// rank split of a singular value spectrum at relative tolerance
int rankOf(const Eigen::VectorXd& sv, double svdTol, RankDiagnostics* diag) {
  const double largest = sv.size() ? sv(0) : 0.0;
  const double cut = svdTol * std::max(largest, 1e-300);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (diag) {
    diag->largestSingular = largest;
    diag->smallestKept = rank > 0 ? sv(rank - 1) : 0.0;
    diag->largestDropped = rank < sv.size() ? sv(rank) : 0.0;
    diag->flagged = diag->largestDropped > 0 && diag->gapRatio() < 10.0;
  }
  return rank;
}

Matrix adjointBy(const Matrix& g, const Matrix& Z) { return g * Z * g.inverse(); }

}  // namespace

std::vector<Matrix> stabilizerAlgebra(const RepPoint& A, RankDiagnostics* diag,
                                      double svdTol) {
  const auto basis = orthonormalAlgebraBasis(A.spec);
  const int d = static_cast<int>(basis.size());
  const int slots = A.size();

  Matrix M(slots * d, d);
  for (int bi = 0; bi < d; ++bi)
    for (int j = 0; j < slots; ++j) {
      const Matrix im = adjointBy(A.tuple[j], basis[bi]) - basis[bi];
      M.block(j * d, bi, d, 1) = algebraCoordinates(basis, im);
    }
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  RankDiagnostics local;
  const int rank = rankOf(svd.singularValues(), svdTol, &local);
  if (diag) *diag = local;

  std::vector<Matrix> out;
  for (int k = rank; k < d; ++k)
    out.push_back(algebraFromCoordinates(basis, svd.matrixV().col(k)));
  return out;
}

Matrix evaluateCocycleOnWord(const Cocycle& u, const FreeWord& w, const RepPoint& A) {
  const int n = A.spec.n;
  Matrix val = Matrix::Zero(n, n);
  Matrix prefix = Matrix::Identity(n, n);
  for (const Letter& l : w.letters) {
    Matrix term, g;
    if (l.exp == 1) {
      term = u.values[l.gen];
      g = A.tuple[l.gen];
    } else {
      const Matrix Ai = A.tuple[l.gen].inverse();
      term = -Ai * u.values[l.gen] * A.tuple[l.gen];
      g = Ai;
    }
    val += prefix * term * prefix.inverse();
    prefix = prefix * g;
  }
  return val;
}

Cocycle coboundary(const RepPoint& A, const Matrix& xi) {
  Cocycle u;
  u.values.reserve(A.size());
  for (const Matrix& Aj : A.tuple) u.values.push_back(xi - adjointBy(Aj, xi));
  return u;
}

CohomologyBases cohomologyBases(const RepPoint& A, const CentralTwist& t,
                                double svdTol, double fiberTol) {
  if (fiberResidual(A, t) > fiberTol)
    throw InvariantViolation("cohomologyBases: point is off the momentum fiber, residual " +
                             std::to_string(fiberResidual(A, t)));
  const auto basis = orthonormalAlgebraBasis(A.spec);
  const int d = static_cast<int>(basis.size());
  const int slots = A.size();
  const SurfacePresentation pres = buildPresentation(A.genus);

  CohomologyBases out;

  // Fox map g^{2l} -> g: u |-> u(relator), column per (slot, basis) pair.
  Matrix fox(d, slots * d);
  for (int slot = 0; slot < slots; ++slot)
    for (int bi = 0; bi < d; ++bi) {
      Cocycle u;
      u.values.assign(slots, Matrix::Zero(A.spec.n, A.spec.n));
      u.values[slot] = basis[bi];
      fox.col(slot * d + bi) =
          algebraCoordinates(basis, evaluateCocycleOnWord(u, pres.relator, A));
    }
  Eigen::JacobiSVD<Matrix> svd(fox, Eigen::ComputeFullV);
  const int rank = rankOf(svd.singularValues(), svdTol, &out.summary.cocycleMargins);

  auto unpack = [&](const Vector& coords) {
    Cocycle u;
    u.values.reserve(slots);
    for (int slot = 0; slot < slots; ++slot)
      u.values.push_back(algebraFromCoordinates(basis, coords.segment(slot * d, d)));
    return u;
  };

  Matrix kernel(slots * d, slots * d - rank);
  for (int k = rank; k < slots * d; ++k) kernel.col(k - rank) = svd.matrixV().col(k);
  for (int k = 0; k < kernel.cols(); ++k) out.z1.push_back(unpack(kernel.col(k)));

  // coboundaries and H0
  RankDiagnostics stabDiag;
  const auto stab = stabilizerAlgebra(A, &stabDiag, svdTol);
  out.summary.stabilizerMargins = stabDiag;
  Matrix cob(slots * d, d);
  for (int bi = 0; bi < d; ++bi) {
    const Cocycle cb = coboundary(A, basis[bi]);
    for (int slot = 0; slot < slots; ++slot)
      cob.block(slot * d, bi, d, 1) = algebraCoordinates(basis, cb.values[slot]);
  }
  Eigen::JacobiSVD<Matrix> cobSvd(cob, Eigen::ComputeFullU);
  const int rankB = rankOf(cobSvd.singularValues(), svdTol, nullptr);
  Matrix b1ortho(slots * d, rankB);
  for (int k = 0; k < rankB; ++k) {
    b1ortho.col(k) = cobSvd.matrixU().col(k);
    out.b1.push_back(unpack(cobSvd.matrixU().col(k)));
  }

  // harmonic complement: project B1 out of the Z1 frame, re-orthonormalize
  Matrix proj = kernel - b1ortho * (b1ortho.adjoint() * kernel);
  Eigen::JacobiSVD<Matrix> hsvd(proj, Eigen::ComputeFullU);
  const int rankH = rankOf(hsvd.singularValues(), svdTol, nullptr);
  for (int k = 0; k < rankH; ++k) out.harmonic.push_back(unpack(hsvd.matrixU().col(k)));

  out.summary.dimH0 = static_cast<int>(stab.size());
  out.summary.dimZ1 = static_cast<int>(out.z1.size());
  out.summary.dimB1 = rankB;
  out.summary.dimH1 = out.summary.dimZ1 - out.summary.dimB1;
  return out;
}

Complex slicePairing(const Cocycle& u, const Cocycle& v, const TwoChain& c,
                     const RepPoint& A) {
  if (u.values.size() != v.values.size() ||
      static_cast<int>(u.values.size()) != A.size())
    throw InvariantViolation("slicePairing: cocycles live at different bases");
  Complex total = 0;
  for (const ChainTerm& term : c.terms) {
    const Matrix ga = evaluateWord(term.a, A);
    const Matrix ua = evaluateCocycleOnWord(u, term.a, A);
    const Matrix va = evaluateCocycleOnWord(v, term.a, A);
    const Matrix ub = evaluateCocycleOnWord(u, term.b, A);
    const Matrix vb = evaluateCocycleOnWord(v, term.b, A);
    total += 0.5 * double(term.coeff) *
             (traceForm(A.spec, ua, adjointBy(ga, vb)) -
              traceForm(A.spec, va, adjointBy(ga, ub)));
  }
  return total;
}

PairingMatrix buildPairingMatrix(const RepPoint& A, const CentralTwist& t,
                                 const TwoChain& c, double svdTol) {
  CohomologyBases bases = cohomologyBases(A, t, svdTol);
  PairingMatrix pm;
  pm.summary = bases.summary;
  pm.basis = std::move(bases.harmonic);
  const int h = static_cast<int>(pm.basis.size());
  pm.gram = Matrix(h, h);
  for (int s = 0; s < h; ++s) {
    pm.gram(s, s) = 0;
    for (int r = s + 1; r < h; ++r) {
      const Complex val = slicePairing(pm.basis[s], pm.basis[r], c, A);
      pm.gram(s, r) = val;
      pm.gram(r, s) = -val;  // antisymmetric by construction
    }
  }
  if (h > 0) {
    Eigen::JacobiSVD<Matrix> svd(pm.gram);
    pm.smallestSingular = svd.singularValues().minCoeff();
  }
  return pm;
}

Cocycle stabilizerAction(const Matrix& xi, const Cocycle& u) {
  Cocycle out;
  out.values.reserve(u.values.size());
  for (const Matrix& uv : u.values) out.values.push_back(xi * uv - uv * xi);
  return out;
}

Complex quadraticMomentum(const Cocycle& u, const Matrix& xi, const TwoChain& c,
                          const RepPoint& A, double stabilizerTol) {
  double worst = 0;
  for (const Matrix& Aj : A.tuple)
    worst = std::max(worst, (adjointBy(Aj, xi) - xi).norm());
  if (worst > stabilizerTol)
    throw InvariantViolation("quadraticMomentum: xi is not in the stabilizer, residual " +
                             std::to_string(worst));
  Complex total = 0;
  for (const ChainTerm& term : c.terms) {
    const Matrix ga = evaluateWord(term.a, A);
    const Matrix ua = evaluateCocycleOnWord(u, term.a, A);
    const Matrix ub = evaluateCocycleOnWord(u, term.b, A);
    const Matrix adb = adjointBy(ga, ub);
    total += 0.5 * double(term.coeff) * traceForm(A.spec, xi, ua * adb - adb * ua);
  }
  return total;
}

Complex TraceFunction::operator()(const RepPoint& A) const {
  Complex val = 0;
  for (const auto& [coeff, word] : terms) val += coeff * evaluateWord(word, A).trace();
  return val;
}

Complex TraceFunction::differential(const RepPoint& A, const TangentTuple& v) const {
  Complex val = 0;
  for (const auto& [coeff, word] : terms)
    val += coeff * wordDifferential(word, A, v).trace();
  return val;
}

TangentTuple cocycleTangent(const Cocycle& u, const RepPoint& A) {
  TangentTuple v;
  v.entries.reserve(u.values.size());
  for (int j = 0; j < A.size(); ++j) v.entries.push_back(u.values[j] * A.tuple[j]);
  return v;
}

Complex reducedBracket(const TraceFunction& f, const TraceFunction& h,
                       const RepPoint& A, const CentralTwist& t, const TwoChain& c) {
  PairingMatrix pm = buildPairingMatrix(A, t, c);
  const int dim = static_cast<int>(pm.basis.size());
  if (dim == 0) throw InvariantViolation("reducedBracket: slice is zero-dimensional");
  if (pm.summary.dimH0 != A.spec.centerDim() ||
      pm.smallestSingular <= 1e-10 * std::max(1.0, pm.gram.norm()))
    throw InvariantViolation(
        "reducedBracket: not a smooth-stratum point (excess stabilizer or "
        "degenerate pairing); consult orbitTypeLabel");

  Vector df(dim), dh(dim);
  for (int s = 0; s < dim; ++s) {
    const TangentTuple dir = cocycleTangent(pm.basis[s], A);
    df(s) = f.differential(A, dir);
    dh(s) = h.differential(A, dir);
  }
  return df.transpose() * pm.gram.partialPivLu().solve(dh);
}

}  // namespace repvar
