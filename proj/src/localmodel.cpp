#include "repvar/localmodel.hpp"

#include <algorithm>
#include <cmath>

namespace repvar {

void LinearSympRep::validate() const {
  if (weights.rows() != torusRank || weights.cols() != dim)
    throw ConfigError("weight matrix must be torusRank x dim");
  std::vector<int> used(dim, 0);
  for (auto [i, j] : pairing) {
    if (i < 0 || j < 0 || i >= dim || j >= dim || i == j)
      throw ConfigError("invalid symplectic pairing indices");
    ++used[i];
    ++used[j];
    for (int r = 0; r < torusRank; ++r)
      if (weights(r, i) + weights(r, j) != 0)
        throw ConfigError("paired coordinates must have opposite weights");
  }
  for (int s = 0; s < dim; ++s)
    if (used[s] != 1)
      throw ConfigError("every coordinate must occur in exactly one pair");
}

Complex LinearSympRep::symplecticForm(const Vector& u, const Vector& w) const {
  Complex acc = 0;
  for (auto [i, j] : pairing) acc += u(i) * w(j) - u(j) * w(i);
  return acc;
}

Vector LinearSympRep::weightAction(int r, const Vector& v) const {
  Vector out(dim);
  for (int s = 0; s < dim; ++s) out(s) = double(weights(r, s)) * v(s);
  return out;
}

LinearSympRep a1Model() {
  LinearSympRep rep;
  rep.torusRank = 1;
  rep.dim = 4;
  rep.weights = Eigen::MatrixXi(1, 4);
  rep.weights << 1, 1, -1, -1;
  rep.pairing = {{0, 2}, {1, 3}};
  rep.validate();
  return rep;
}

Vector linearMomentum(const LinearSympRep& rep, const Vector& v) {
  Vector out(rep.torusRank);
  for (int r = 0; r < rep.torusRank; ++r)
    out(r) = 0.5 * rep.symplecticForm(rep.weightAction(r, v), v);
  return out;
}

Eigen::VectorXd realLinearMomentum(const LinearSympRep& rep, const Vector& v) {
  Eigen::VectorXd out(rep.torusRank);
  for (int r = 0; r < rep.torusRank; ++r) {
    double acc = 0;
    for (int s = 0; s < rep.dim; ++s) acc += rep.weights(r, s) * std::norm(v(s));
    out(r) = 0.5 * acc;
  }
  return out;
}

namespace {

// 4x4 block of right multiplication by a unit quaternion (0, bi, cj, dk)
// on coordinates (a, b, c, d) of q = a + bi + cj + dk.
Eigen::Matrix4d rightMultiplication(double bi, double cj, double dk) {
  // q * p for p = bi i + cj j + dk k, assembled from the multiplication table
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  // columns: image of each basis quaternion e under e * p
  auto setColumn = [&M](int col, double a, double b, double c, double d) {
    M(0, col) = a; M(1, col) = b; M(2, col) = c; M(3, col) = d;
  };
  // 1*p = bi i + cj j + dk k
  setColumn(0, 0, bi, cj, dk);
  // i*p = bi(ii) + cj(ij) + dk(ik) = -bi + cj k - dk j
  setColumn(1, -bi, 0, -dk, cj);
  // j*p = bi(ji) + cj(jj) + dk(jk) = -bi k - cj + dk i
  setColumn(2, -cj, dk, 0, -bi);
  // k*p = bi(ki) + cj(kj) + dk(kk) = bi j - cj i - dk
  setColumn(3, -dk, -cj, bi, 0);
  return M;
}

// 4x4 block of left multiplication by i.
Eigen::Matrix4d leftMultiplicationI() {
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  // i*1 = i, i*i = -1, i*j = k, i*k = -j
  M(1, 0) = 1;
  M(0, 1) = -1;
  M(3, 2) = 1;
  M(2, 3) = -1;
  return M;
}

}  // namespace

QuaternionicRep QuaternionicRep::make(const Eigen::VectorXi& weights) {
  QuaternionicRep rep;
  rep.quatDim = static_cast<int>(weights.size());
  rep.circleWeights = weights;
  const int N = 4 * rep.quatDim;
  rep.I = Eigen::MatrixXd::Zero(N, N);
  rep.J = Eigen::MatrixXd::Zero(N, N);
  rep.K = Eigen::MatrixXd::Zero(N, N);
  rep.circleGenerator = Eigen::MatrixXd::Zero(N, N);
  const Eigen::Matrix4d Ri = rightMultiplication(1, 0, 0);
  const Eigen::Matrix4d Rj = rightMultiplication(0, 1, 0);
  const Eigen::Matrix4d Rk = rightMultiplication(0, 0, 1);
  const Eigen::Matrix4d Li = leftMultiplicationI();
  for (int s = 0; s < rep.quatDim; ++s) {
    rep.I.block<4, 4>(4 * s, 4 * s) = Ri;
    rep.J.block<4, 4>(4 * s, 4 * s) = Rj;
    rep.K.block<4, 4>(4 * s, 4 * s) = -Rk;  // IJ = K with right multiplications
    rep.circleGenerator.block<4, 4>(4 * s, 4 * s) = double(weights(s)) * Li;
  }
  return rep;
}

double quaternionicForm(const Eigen::MatrixXd& structure, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& w) {
  return (structure * u).dot(w);
}

std::array<double, 3> hyperkahlerMomenta(const QuaternionicRep& rep,
                                         const Eigen::VectorXd& v) {
  const Eigen::VectorXd xv = rep.circleGenerator * v;
  return {0.5 * quaternionicForm(rep.I, xv, v), 0.5 * quaternionicForm(rep.J, xv, v),
          0.5 * quaternionicForm(rep.K, xv, v)};
}

void checkAnnihilator(const ModelBundlePoint& p, const TorusEmbedding& h, double tol) {
  for (const Matrix& t : h.generators)
    if (std::abs(traceForm(p.xi.spec, p.xi.m, t)) > tol)
      throw InvariantViolation("bundle point: xi is not in the h-annihilator");
}

AlgebraElement modelMomentum(const ModelBundlePoint& p, const TorusEmbedding& h,
                             const LinearSympRep& rep) {
  checkAnnihilator(p, h);
  const int k = static_cast<int>(h.generators.size());
  if (k != rep.torusRank) throw ConfigError("torus embedding rank mismatch");

  // dual basis inside span(t_r) w.r.t. the trace form
  Matrix gramT(k, k);
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s)
      gramT(r, s) = traceForm(p.xi.spec, h.generators[r], h.generators[s]);
  const Vector phi = linearMomentum(rep, p.v);
  const Vector dualCoeffs = gramT.partialPivLu().solve(phi);

  Matrix phiHat = Matrix::Zero(p.xi.spec.n, p.xi.spec.n);
  for (int r = 0; r < k; ++r) phiHat += dualCoeffs(r) * h.generators[r];

  const Matrix xi = p.x.m * (p.xi.m + phiHat) * p.x.inverse();
  return AlgebraElement(p.xi.spec, xi, unchecked);
}

Complex Polynomial::eval(const Vector& v) const {
  Complex acc = 0;
  for (const Monomial& m : monomials) {
    Complex term = m.coeff;
    for (int s = 0; s < dim; ++s)
      for (int e = 0; e < m.exponents[s]; ++e) term *= v(s);
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::partial(int coordinate) const {
  Polynomial out;
  out.dim = dim;
  for (const Monomial& m : monomials) {
    if (m.exponents[coordinate] == 0) continue;
    Monomial d = m;
    d.coeff *= double(m.exponents[coordinate]);
    d.exponents[coordinate] -= 1;
    out.monomials.push_back(std::move(d));
  }
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  out.dim = dim;
  for (const Monomial& a : monomials)
    for (const Monomial& b : o.monomials) {
      Monomial m;
      m.coeff = a.coeff * b.coeff;
      m.exponents.resize(dim);
      for (int s = 0; s < dim; ++s) m.exponents[s] = a.exponents[s] + b.exponents[s];
      out.monomials.push_back(std::move(m));
    }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  out.monomials.insert(out.monomials.end(), o.monomials.begin(), o.monomials.end());
  return out;
}

Polynomial Polynomial::scaled(Complex factor) const {
  Polynomial out = *this;
  for (Monomial& m : out.monomials) m.coeff *= factor;
  return out;
}

Polynomial Polynomial::coordinate(int dim, int index) {
  Polynomial p;
  p.dim = dim;
  Monomial m;
  m.coeff = 1.0;
  m.exponents.assign(dim, 0);
  m.exponents[index] = 1;
  p.monomials.push_back(std::move(m));
  return p;
}

Polynomial Polynomial::constant(int dim, Complex value) {
  Polynomial p;
  p.dim = dim;
  Monomial m;
  m.coeff = value;
  m.exponents.assign(dim, 0);
  p.monomials.push_back(std::move(m));
  return p;
}

bool isTorusInvariant(const LinearSympRep& rep, const Polynomial& f) {
  for (const Monomial& m : f.monomials) {
    if (std::abs(m.coeff) == 0.0) continue;
    for (int r = 0; r < rep.torusRank; ++r) {
      long w = 0;
      for (int s = 0; s < rep.dim; ++s) w += long(rep.weights(r, s)) * m.exponents[s];
      if (w != 0) return false;
    }
  }
  return true;
}

Complex rawBracket(const LinearSympRep& rep, const Polynomial& f,
                   const Polynomial& h, const Vector& v) {
  // constant-coefficient bracket: {v_i, v_j} = 1 on each pair (i, j)
  Complex acc = 0;
  for (auto [i, j] : rep.pairing)
    acc += f.partial(i).eval(v) * h.partial(j).eval(v) -
           f.partial(j).eval(v) * h.partial(i).eval(v);
  return acc;
}

Complex invariantBracket(const LinearSympRep& rep, const Polynomial& f,
                         const Polynomial& h, const Vector& v, double momentumTol) {
  if (!isTorusInvariant(rep, f) || !isTorusInvariant(rep, h))
    throw InvariantViolation("invariantBracket: input polynomial is not torus invariant");
  if (linearMomentum(rep, v).norm() > momentumTol)
    throw InvariantViolation("invariantBracket: point is off the momentum zero fiber");
  return rawBracket(rep, f, h, v);
}

std::vector<Polynomial> a1Invariants() {
  // x_ij = a_i b_j on coordinates (a1, a2, b1, b2)
  std::vector<Polynomial> inv;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      inv.push_back(Polynomial::coordinate(4, i) * Polynomial::coordinate(4, 2 + j));
  return inv;
}

QuotientPointReport classifyQuotientPoint(const LinearSympRep& rep,
                                          const std::vector<Polynomial>& invariants,
                                          const Vector& v, double momentumTol,
                                          double supportTol) {
  if (linearMomentum(rep, v).norm() > momentumTol ||
      realLinearMomentum(rep, v).norm() > momentumTol)
    throw InvariantViolation("classifyQuotientPoint: momenta do not vanish");

  QuotientPointReport rep0;
  rep0.invariants = Vector(invariants.size());
  for (std::size_t k = 0; k < invariants.size(); ++k)
    rep0.invariants(static_cast<Eigen::Index>(k)) = invariants[k].eval(v);

  // stabilizer inside the compact torus: kernel of the weight submatrix over
  // the support of v
  std::vector<int> support;
  for (int s = 0; s < rep.dim; ++s)
    if (std::abs(v(s)) > supportTol) support.push_back(s);
  Eigen::MatrixXd W(rep.torusRank, support.size());
  for (int r = 0; r < rep.torusRank; ++r)
    for (std::size_t c = 0; c < support.size(); ++c)
      W(r, static_cast<Eigen::Index>(c)) = rep.weights(r, support[c]);
  const int rank =
      support.empty() ? 0
                      : Eigen::FullPivLU<Eigen::MatrixXd>(W).setThreshold(1e-10).rank();
  rep0.stabilizerDim = rep.torusRank - rank;
  rep0.tag = rep0.stabilizerDim == 0
                 ? StratumTag::Irreducible
                 : (rep0.stabilizerDim == rep.torusRank ? StratumTag::Central
                                                        : StratumTag::ReducibleProper);
  return rep0;
}

}  // namespace repvar
