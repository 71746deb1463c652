#include "repvar/serialization.hpp"

#include <fstream>

namespace repvar {

Json matrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back({m(i, j).real(), m(i, j).imag()});
  return rows;
}

Matrix matrixFromJson(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    throw ConfigError("matrix entry list has wrong length");
  Matrix m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c, ++k)
      m(i, c) = Complex(j[k][0].get<double>(), j[k][1].get<double>());
  return m;
}

Json toJson(const RepPoint& A) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["family"] = A.spec.isSpecial() ? "sl" : "gl";
  j["n"] = A.spec.n;
  j["scale"] = A.spec.scaleOfForm;
  j["genus"] = A.genus;
  Json entries = Json::array();
  for (const Matrix& m : A.tuple) entries.push_back(matrixToJson(m));
  j["entries"] = std::move(entries);
  return j;
}

RepPoint repPointFromJson(const Json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam != "gl" && fam != "sl") throw ConfigError("family must be gl or sl");
  GroupSpec spec{fam == "sl" ? Family::SpecialLinear : Family::GeneralLinear,
                 j.at("n").get<int>(), j.value("scale", 1.0)};
  const int genus = j.at("genus").get<int>();
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != 2 * genus)
    throw ConfigError("rep point needs 2*genus matrices");
  std::vector<Matrix> tuple;
  tuple.reserve(entries.size());
  for (const auto& e : entries) tuple.push_back(matrixFromJson(e, spec.n, spec.n));
  return RepPoint(spec, genus, std::move(tuple));
}

Json toJson(const TangentTuple& v) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json entries = Json::array();
  for (const Matrix& m : v.entries) entries.push_back(matrixToJson(m));
  j["entries"] = std::move(entries);
  return j;
}

TangentTuple tangentTupleFromJson(const Json& j, const RepPoint& base) {
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != base.size())
    throw ConfigError("tangent tuple size does not match the base point");
  TangentTuple v;
  for (const auto& e : entries)
    v.entries.push_back(matrixFromJson(e, base.spec.n, base.spec.n));
  return v;
}

Json toJson(const FreeWord& w) {
  Json arr = Json::array();
  for (const Letter& l : w.letters) arr.push_back(l.exp * (l.gen + 1));
  return arr;
}

FreeWord freeWordFromJson(const Json& j) {
  FreeWord w;
  for (const auto& v : j) {
    const int s = v.get<int>();
    if (s == 0) throw ConfigError("word letters are nonzero signed indices");
    w.letters.push_back({std::abs(s) - 1, s > 0 ? 1 : -1});
  }
  return w;
}

Json toJson(const TwoChain& c) {
  Json arr = Json::array();
  for (const ChainTerm& t : c.terms) arr.push_back({t.coeff, toJson(t.a), toJson(t.b)});
  return arr;
}

TwoChain twoChainFromJson(const Json& j) {
  TwoChain c;
  for (const auto& t : j)
    c.terms.push_back({t[0].get<int>(), freeWordFromJson(t[1]), freeWordFromJson(t[2])});
  return c;
}

Json toJson(const RankDiagnostics& d) {
  return Json{{"largestSingular", d.largestSingular},
              {"smallestKept", d.smallestKept},
              {"largestDropped", d.largestDropped},
              {"flagged", d.flagged}};
}

Json toJson(const FlowReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["initialNorm"] = r.initialNorm;
  j["finalNorm"] = r.finalNorm;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["invariantDrift"] = r.invariantDrift;
  j["fiberDrift"] = r.fiberDrift;
  j["finalPoint"] = toJson(r.finalPoint);
  j["conjugator"] = matrixToJson(r.conjugator);
  return j;
}

Json toJson(const CohomologySummary& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["dimH0"] = s.dimH0;
  j["dimZ1"] = s.dimZ1;
  j["dimB1"] = s.dimB1;
  j["dimH1"] = s.dimH1;
  j["stabilizerMargins"] = toJson(s.stabilizerMargins);
  j["cocycleMargins"] = toJson(s.cocycleMargins);
  return j;
}

Json toJson(const PairingMatrix& p) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["dim"] = p.basis.size();
  j["gram"] = matrixToJson(p.gram);
  j["smallestSingular"] = p.smallestSingular;
  return j;
}

Json toJson(const StratumLabel& l) {
  Json j;
  j["stabilizerDim"] = l.stabilizerDim;
  j["centerDim"] = l.centerDim;
  j["tag"] = stratumTagName(l.tag);
  j["diagnostics"] = toJson(l.diagnostics);
  return j;
}

void writeJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace repvar
