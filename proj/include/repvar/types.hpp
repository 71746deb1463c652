#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace repvar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input left the principal-branch chart of the logarithm.
struct ChartViolation : Error {
  using Error::Error;
};

/// Series or quadrature failed to reach its tolerance.
struct NumericsFailure : Error {
  using Error::Error;
};

/// Iterative method exhausted its budget.
struct ConvergenceFailure : Error {
  using Error::Error;
};

/// A domain-type invariant does not hold for the given data.
struct InvariantViolation : Error {
  using Error::Error;
};

/// Bad run configuration (unsupported twist, unknown group, ...).
struct ConfigError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Group specification
// ---------------------------------------------------------------------------

enum class Family { GeneralLinear, SpecialLinear };

struct GroupSpec {
  Family family = Family::GeneralLinear;
  int n = 2;
  double scaleOfForm = 1.0;

  bool isSpecial() const { return family == Family::SpecialLinear; }
  /// Complex dimension of g.
  int algebraDim() const { return isSpecial() ? n * n - 1 : n * n; }
  /// Complex dimension of the center z of g (= real dim of z(k)).
  int centerDim() const { return isSpecial() ? 0 : 1; }
  std::string name() const {
    return (isSpecial() ? "sl" : "gl") + std::to_string(n);
  }

  bool operator==(const GroupSpec& o) const {
    return family == o.family && n == o.n && scaleOfForm == o.scaleOfForm;
  }
};

inline GroupSpec generalLinear(int n, double scale = 1.0) {
  if (n < 1) throw ConfigError("matrix size must be >= 1");
  return {Family::GeneralLinear, n, scale};
}

inline GroupSpec specialLinear(int n, double scale = 1.0) {
  if (n < 1) throw ConfigError("matrix size must be >= 1");
  return {Family::SpecialLinear, n, scale};
}

// ---------------------------------------------------------------------------
// Elements
//
// All three carriers hold an n-by-n complex matrix together with the spec it
// belongs to. Construction validates the membership invariant at the stated
// tolerance; hot loops that build elements from operations known to preserve
// the invariants use the unchecked tag.
// ---------------------------------------------------------------------------

struct Unchecked {};
inline constexpr Unchecked unchecked{};

constexpr double kDetTol = 1e-10;       // |det - 1| for SL group elements
constexpr double kTraceTol = 1e-12;     // |tr| for sl algebra elements
constexpr double kAntiHermTol = 1e-12;  // ||X + X^*|| for compact elements

struct GroupElement {
  GroupSpec spec;
  Matrix m;

  GroupElement(const GroupSpec& s, Matrix entries) : spec(s), m(std::move(entries)) {
    if (m.rows() != spec.n || m.cols() != spec.n)
      throw InvariantViolation("group element has wrong dimensions");
    if (!m.allFinite()) throw InvariantViolation("group element has non-finite entries");
    const Complex det = m.determinant();
    if (std::abs(det) <= 0.0 || !std::isfinite(std::abs(det)))
      throw InvariantViolation("group element is singular");
    if (spec.isSpecial() && std::abs(det - 1.0) > kDetTol)
      throw InvariantViolation("special linear element has |det - 1| = " +
                               std::to_string(std::abs(det - 1.0)));
  }
  GroupElement(const GroupSpec& s, Matrix entries, Unchecked) : spec(s), m(std::move(entries)) {}

  Matrix inverse() const { return m.inverse(); }
};

struct AlgebraElement {
  GroupSpec spec;
  Matrix m;

  AlgebraElement(const GroupSpec& s, Matrix entries) : spec(s), m(std::move(entries)) {
    if (m.rows() != spec.n || m.cols() != spec.n)
      throw InvariantViolation("algebra element has wrong dimensions");
    if (!m.allFinite()) throw InvariantViolation("algebra element has non-finite entries");
    if (spec.isSpecial() && std::abs(m.trace()) > kTraceTol)
      throw InvariantViolation("special linear algebra element has nonzero trace");
  }
  AlgebraElement(const GroupSpec& s, Matrix entries, Unchecked) : spec(s), m(std::move(entries)) {}
};

/// Element of k: anti-Hermitian, traceless in the special linear case.
struct CompactAlgebraElement {
  GroupSpec spec;
  Matrix m;

  CompactAlgebraElement(const GroupSpec& s, Matrix entries) : spec(s), m(std::move(entries)) {
    if (m.rows() != spec.n || m.cols() != spec.n)
      throw InvariantViolation("compact algebra element has wrong dimensions");
    if ((m + m.adjoint()).norm() > kAntiHermTol)
      throw InvariantViolation("compact algebra element is not anti-Hermitian");
    if (spec.isSpecial() && std::abs(m.trace()) > kTraceTol)
      throw InvariantViolation("special linear compact element has nonzero trace");
  }
  CompactAlgebraElement(const GroupSpec& s, Matrix entries, Unchecked)
      : spec(s), m(std::move(entries)) {}

  AlgebraElement asAlgebra() const { return AlgebraElement(spec, m, unchecked); }
};

// ---------------------------------------------------------------------------
// Orthonormal bases
// ---------------------------------------------------------------------------

/// Basis of g, orthonormal for the Hermitian form <X,Y> = tr(X Y^*).
/// gl(n): the matrix units. sl(n): off-diagonal units plus an orthonormalized
/// traceless diagonal family.
std::vector<Matrix> orthonormalAlgebraBasis(const GroupSpec& spec);

/// Real orthonormal basis of k = u(n) (or su(n)) for <X,Y> = Re tr(X Y^*).
std::vector<Matrix> orthonormalCompactBasis(const GroupSpec& spec);

/// Coordinates of X in an orthonormal basis: c_k = tr(X b_k^*).
Vector algebraCoordinates(const std::vector<Matrix>& basis, const Matrix& X);

Matrix algebraFromCoordinates(const std::vector<Matrix>& basis,
                              const Eigen::Ref<const Vector>& coords);

}  // namespace repvar
