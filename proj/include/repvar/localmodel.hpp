#pragma once

#include <array>

#include "repvar/reduction.hpp"

namespace repvar {

// Linear local models: symplectic torus representations with their algebraic
// and real momenta, the associated-bundle momentum, quaternionic linear data,
// and pointwise Poisson brackets of invariants on the zero fiber.

/// Diagonal torus H = (C*)^k acting on V = C^m with an integer weight matrix;
/// omega_V is the constant form with omega_V(e_i, e_j) = 1 on each listed
/// pair (i, j).
struct LinearSympRep {
  int torusRank = 1;
  int dim = 2;
  Eigen::MatrixXi weights;                    // k x m
  std::vector<std::pair<int, int>> pairing;   // omega_V(e_i, e_j) = 1

  void validate() const;
  /// omega_V(u, w).
  Complex symplecticForm(const Vector& u, const Vector& w) const;
  /// Torus generator r acting on v: diag(weights row r) v.
  Vector weightAction(int r, const Vector& v) const;
};

/// The A1 model: weights (1,1,-1,-1), pairs (0,2) and (1,3).
LinearSympRep a1Model();

/// Phi_V component r: (1/2) omega_V(W_r v, v).  Quadratic, torus invariant.
Vector linearMomentum(const LinearSympRep& rep, const Vector& v);

/// Real momentum of the standard Kaehler form:
/// component r = (1/2) sum_s weights(r,s) |v_s|^2.
Eigen::VectorXd realLinearMomentum(const LinearSympRep& rep, const Vector& v);

// ---------------------------------------------------------------------------
// Quaternionic linear data
// ---------------------------------------------------------------------------

/// H^n as R^{4n}; I, J, K are right multiplications by i, j, -k, which obey
/// I^2 = J^2 = K^2 = -1, IJ = K exactly as integer matrices and commute with
/// the left diagonal U(1) action with the given integer weights.
struct QuaternionicRep {
  int quatDim = 1;
  Eigen::VectorXi circleWeights;  // length n
  Eigen::MatrixXd I, J, K;        // 4n x 4n
  Eigen::MatrixXd circleGenerator;

  static QuaternionicRep make(const Eigen::VectorXi& weights);
};

/// (Phi_I, Phi_J, Phi_K)(v) with x o Phi_.(v) = (1/2) omega_.(xv, v).
std::array<double, 3> hyperkahlerMomenta(const QuaternionicRep& rep,
                                         const Eigen::VectorXd& v);

/// omega_. = <(.)u, w> for . in {I, J, K}.
double quaternionicForm(const Eigen::MatrixXd& structure, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& w);

// ---------------------------------------------------------------------------
// Bundle momentum on G x_H (h-annihilator x V)
// ---------------------------------------------------------------------------

/// Embedding data of the torus H into G: the images of its generators in g.
struct TorusEmbedding {
  GroupSpec spec;
  std::vector<Matrix> generators;  // t_1, ..., t_k
};

struct ModelBundlePoint {
  GroupElement x;
  AlgebraElement xi;  // constrained to the traceForm-annihilator of h
  Vector v;
};

/// Check traceForm(xi, t_r) = 0 for all torus generators.
void checkAnnihilator(const ModelBundlePoint& p, const TorusEmbedding& h,
                      double tol = 1e-10);

/// kappa[x, xi, v] = x (xi + Phi-hat(v)) x^-1, with Phi-hat the embedding of
/// Phi_V(v) into g through the trace-form dual basis of the h-span.
AlgebraElement modelMomentum(const ModelBundlePoint& p, const TorusEmbedding& h,
                             const LinearSympRep& rep);

// ---------------------------------------------------------------------------
// Polynomial invariants and brackets
// ---------------------------------------------------------------------------

struct Monomial {
  Complex coeff;
  std::vector<int> exponents;  // one per coordinate of V
};

struct Polynomial {
  int dim = 0;
  std::vector<Monomial> monomials;

  Complex eval(const Vector& v) const;
  Polynomial partial(int coordinate) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial scaled(Complex factor) const;

  static Polynomial coordinate(int dim, int index);
  static Polynomial constant(int dim, Complex value);
};

/// True when every monomial has total torus weight zero in all rows.
bool isTorusInvariant(const LinearSympRep& rep, const Polynomial& f);

/// Constant-coefficient symplectic bracket of the polynomial extensions,
/// evaluated at a zero-fiber point.  Throws when f or h fails the invariance
/// check or ||Phi_V(v)|| exceeds momentumTol.
Complex invariantBracket(const LinearSympRep& rep, const Polynomial& f,
                         const Polynomial& h, const Vector& v,
                         double momentumTol = 1e-8);

/// Bracket of the raw polynomials at a point (no invariance or fiber check);
/// used to verify extension independence on the fiber.
Complex rawBracket(const LinearSympRep& rep, const Polynomial& f,
                   const Polynomial& h, const Vector& v);

// ---------------------------------------------------------------------------
// Quotient classification
// ---------------------------------------------------------------------------

struct QuotientPointReport {
  Vector invariants;
  int stabilizerDim = 0;  // inside L = U(1)^k
  StratumTag tag = StratumTag::Irreducible;
};

/// The generating invariants of the A1 model: x_ij = a_i b_j.
std::vector<Polynomial> a1Invariants();

/// Evaluate a configured generating set at a common zero of both momenta and
/// label the stratum by the torus stabilizer dimension.
QuotientPointReport classifyQuotientPoint(const LinearSympRep& rep,
                                          const std::vector<Polynomial>& invariants,
                                          const Vector& v, double momentumTol = 1e-8,
                                          double supportTol = 1e-10);

}  // namespace repvar
