#pragma once

#include <vector>

#include "repvar/liegroup.hpp"

namespace repvar {

// Symbolic layer: free-group words on x1,y1,...,xl,yl, the surface relator,
// the fundamental 2-chain, and central twists.

struct Letter {
  int gen = 0;   // 0-based generator index in 0..2l-1
  int exp = 1;   // +1 or -1

  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

struct FreeWord {
  std::vector<Letter> letters;

  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  FreeWord inverse() const;
  /// Freely reduced form: no adjacent (g,+1)(g,-1) pairs remain.
  FreeWord reduced() const;

  bool operator==(const FreeWord&) const = default;
  auto operator<=>(const FreeWord&) const = default;
};

FreeWord concat(const FreeWord& u, const FreeWord& v);
inline FreeWord generator(int idx, int e = 1) { return FreeWord({{idx, e}}); }

struct SurfacePresentation {
  int genus = 1;
  FreeWord relator;  // product of commutators [x_j, y_j]

  int generatorCount() const { return 2 * genus; }
};

/// Standard presentation <x1,y1,...,xl,yl ; prod [x_j,y_j]>.
SurfacePresentation buildPresentation(int genus);

struct ChainTerm {
  int coeff = 1;
  FreeWord a;
  FreeWord b;
};

/// Integer combination of pairs of words; carries the fundamental class.
struct TwoChain {
  std::vector<ChainTerm> terms;
};

/// Prefix-sum chain with inverse-letter corrections.  Its bar boundary is
/// -[relator] + 2*genus*[empty]; the orientation is fixed here once and the
/// momentum-property tests depend on it.
TwoChain standardTwoChain(int genus);

struct ChainBoundaryReport {
  bool valid = false;     // boundary is eps*[relator] + m*[empty], rest cancels
  int epsilon = 0;        // +1 or -1 when valid
  int emptyMultiple = 0;  // m when valid
};

ChainBoundaryReport analyzeTwoChain(const TwoChain& c, const SurfacePresentation& p);

/// True iff the bar boundary of c equals eps*[relator] + m*[empty] exactly.
bool verifyTwoChain(const TwoChain& c, const SurfacePresentation& p);

// ---------------------------------------------------------------------------
// Central twists
// ---------------------------------------------------------------------------

struct CentralTwist {
  GroupSpec spec;
  int degree = 0;                // X = (2 pi d / n) i I
  CompactAlgebraElement X;
  Matrix expX;                   // e^{2 pi i d / n} I

  bool isTrivial() const { return degree == 0; }
};

/// Twist by degree d.  SL(n) admits only d = 0 (z(su(n)) = 0).
CentralTwist centralTwist(const GroupSpec& spec, int degree);

// ---------------------------------------------------------------------------
// Evaluation on tuples of group elements
// ---------------------------------------------------------------------------

/// Point of G^{2l}: (A1, B1, ..., Al, Bl).
struct RepPoint {
  GroupSpec spec;
  int genus = 1;
  std::vector<Matrix> tuple;  // size 2*genus

  RepPoint(GroupSpec s, int g, std::vector<Matrix> t)
      : spec(std::move(s)), genus(g), tuple(std::move(t)) {
    if (static_cast<int>(tuple.size()) != 2 * genus)
      throw InvariantViolation("rep point needs 2*genus entries");
  }
  int size() const { return 2 * genus; }
};

/// Tangent 2l-tuple at a RepPoint; entry j is an ambient matrix at tuple_j.
struct TangentTuple {
  std::vector<Matrix> entries;

  TangentTuple() = default;
  explicit TangentTuple(std::vector<Matrix> e) : entries(std::move(e)) {}
  static TangentTuple zero(const RepPoint& base);
};

/// Product of A_j^{+-1} along the word.  Homomorphism in the exact sense that
/// evaluateWord(uv) multiplies the two evaluations in the same fp order.
Matrix evaluateWord(const FreeWord& w, const RepPoint& A);

/// Chain-rule differential of the word map:
/// D(uw) = (Du) W + U (Dw), D(x_j) = v_j, D(x_j^-1) = -A_j^-1 v_j A_j^-1.
Matrix wordDifferential(const FreeWord& w, const RepPoint& A, const TangentTuple& v);

}  // namespace repvar
