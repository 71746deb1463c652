#include "repvar/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace repvar {

FreeWord FreeWord::inverse() const {
  FreeWord out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    out.letters.push_back({it->gen, -it->exp});
  return out;
}

FreeWord FreeWord::reduced() const {
  FreeWord out;
  for (const Letter& l : letters) {
    if (!out.letters.empty() && out.letters.back().gen == l.gen &&
        out.letters.back().exp == -l.exp)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

FreeWord concat(const FreeWord& u, const FreeWord& v) {
  FreeWord out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

SurfacePresentation buildPresentation(int genus) {
  if (genus < 1) throw ConfigError("genus must be >= 1");
  FreeWord r;
  for (int j = 0; j < genus; ++j) {
    const int x = 2 * j, y = 2 * j + 1;
    r.letters.push_back({x, 1});
    r.letters.push_back({y, 1});
    r.letters.push_back({x, -1});
    r.letters.push_back({y, -1});
  }
  return {genus, std::move(r)};
}

TwoChain standardTwoChain(int genus) {
  const SurfacePresentation pres = buildPresentation(genus);
  const auto& r = pres.relator.letters;
  TwoChain c;
  for (std::size_t k = 1; k < r.size(); ++k) {
    FreeWord prefix(std::vector<Letter>(r.begin(), r.begin() + k));
    c.terms.push_back({1, std::move(prefix), FreeWord({r[k]})});
  }
  // every generator occurs with exponent -1 exactly once in the relator
  for (int g = 0; g < pres.generatorCount(); ++g)
    c.terms.push_back({-1, generator(g, -1), generator(g, 1)});
  return c;
}

ChainBoundaryReport analyzeTwoChain(const TwoChain& c, const SurfacePresentation& p) {
  // bar boundary: del(a,b) = [b] - [ab] + [a], over freely reduced words
  std::map<FreeWord, long long> acc;
  auto add = [&acc](const FreeWord& w, long long coeff) {
    FreeWord red = w.reduced();
    auto [it, inserted] = acc.try_emplace(std::move(red), 0);
    it->second += coeff;
    if (it->second == 0) acc.erase(it);
  };
  for (const ChainTerm& t : c.terms) {
    add(t.b, t.coeff);
    add(concat(t.a, t.b), -t.coeff);
    add(t.a, t.coeff);
  }
  const FreeWord relator = p.relator.reduced();
  ChainBoundaryReport rep;
  long long eps = 0, m = 0;
  for (const auto& [word, coeff] : acc) {
    if (word.empty())
      m = coeff;
    else if (word == relator)
      eps = coeff;
    else
      return rep;  // stray term: not a valid fundamental chain
  }
  if (eps != 1 && eps != -1) return rep;
  rep.valid = true;
  rep.epsilon = static_cast<int>(eps);
  rep.emptyMultiple = static_cast<int>(m);
  return rep;
}

bool verifyTwoChain(const TwoChain& c, const SurfacePresentation& p) {
  return analyzeTwoChain(c, p).valid;
}

CentralTwist centralTwist(const GroupSpec& spec, int degree) {
  if (spec.isSpecial() && degree != 0)
    throw ConfigError("nonzero twist requires a center: z(su(n)) = 0, use gl" +
                      std::to_string(spec.n));
  const double theta = 2.0 * std::numbers::pi * degree / spec.n;
  const int n = spec.n;
  Matrix X = Matrix::Identity(n, n) * Complex(0, theta);
  Matrix expX = Matrix::Identity(n, n) * std::polar(1.0, theta);
  return CentralTwist{spec, degree, CompactAlgebraElement(spec, std::move(X), unchecked),
                      std::move(expX)};
}

TangentTuple TangentTuple::zero(const RepPoint& base) {
  TangentTuple t;
  t.entries.assign(base.size(), Matrix::Zero(base.spec.n, base.spec.n));
  return t;
}

Matrix evaluateWord(const FreeWord& w, const RepPoint& A) {
  Matrix M = Matrix::Identity(A.spec.n, A.spec.n);
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= A.size())
      throw InvariantViolation("word references generator outside the tuple");
    M = (l.exp == 1) ? Matrix(M * A.tuple[l.gen]) : Matrix(M * A.tuple[l.gen].inverse());
  }
  return M;
}

Matrix wordDifferential(const FreeWord& w, const RepPoint& A, const TangentTuple& v) {
  const int n = A.spec.n;
  const std::size_t len = w.letters.size();
  if (len == 0) return Matrix::Zero(n, n);

  // suffix products S_k = U_k U_{k+1} ... U_{end}
  std::vector<Matrix> factors(len), suffix(len + 1);
  for (std::size_t k = 0; k < len; ++k) {
    const Letter& l = w.letters[k];
    factors[k] = (l.exp == 1) ? A.tuple[l.gen] : Matrix(A.tuple[l.gen].inverse());
  }
  suffix[len] = Matrix::Identity(n, n);
  for (std::size_t k = len; k-- > 0;) suffix[k] = factors[k] * suffix[k + 1];

  Matrix prefix = Matrix::Identity(n, n);
  Matrix D = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < len; ++k) {
    const Letter& l = w.letters[k];
    Matrix dU;
    if (l.exp == 1) {
      dU = v.entries[l.gen];
    } else {
      const Matrix Ai = A.tuple[l.gen].inverse();
      dU = -Ai * v.entries[l.gen] * Ai;
    }
    D += prefix * dU * suffix[k + 1];
    prefix = prefix * factors[k];
  }
  return D;
}

}  // namespace repvar
