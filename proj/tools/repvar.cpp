// Command-line front end: samplers, flows, cohomology reports, pairings,
// strata, the A1 local model, reduced-point comparison, and the verification
// suite.  JSON reports for machines, a text summary for humans.

#include <filesystem>
#include <fstream>
#include <random>
#include <iostream>

#include <CLI11.hpp>

#include "repvar/serialization.hpp"
#include "repvar/verification.hpp"

namespace {

using namespace repvar;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitConfig = 3;

struct RunConfig {
  std::string group = "sl2";
  int genus = 2;
  int twistDegree = 0;
  std::uint64_t seed = 1;
  int samples = 20;
  double scaleOfForm = 1.0;
  double gradTol = 1e-8;
  double svdTol = 1e-8;
  double fdStep = 1e-5;
  int flowMaxIter = 5000;
  double flowInitialStep = 0.25;
  std::string outDir = ".";

  GroupSpec spec() const {
    if (group.size() != 3 || (group.substr(0, 2) != "gl" && group.substr(0, 2) != "sl"))
      throw ConfigError("group must be one of gl2, sl2, gl3, sl3");
    const int n = group[2] - '0';
    if (n < 2 || n > 3) throw ConfigError("group must be one of gl2, sl2, gl3, sl3");
    return group[0] == 's' ? specialLinear(n, scaleOfForm)
                           : generalLinear(n, scaleOfForm);
  }

  CentralTwist twist() const { return centralTwist(spec(), twistDegree); }

  FlowConfig flow() const {
    FlowConfig f;
    f.gradTol = gradTol;
    f.maxIter = flowMaxIter;
    f.initialStep = flowInitialStep;
    return f;
  }

  Json echo() const {
    return Json{{"group", group},       {"genus", genus},
                {"twistDegree", twistDegree}, {"seed", seed},
                {"samples", samples},   {"scaleOfForm", scaleOfForm},
                {"gradTol", gradTol},   {"svdTol", svdTol},
                {"fdStep", fdStep},     {"flowMaxIter", flowMaxIter},
                {"flowInitialStep", flowInitialStep}, {"outDir", outDir}};
  }
};

void loadConfigFile(RunConfig& cfg, const std::string& path) {
  const Json j = readJsonFile(path);
  auto pick = [&j](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  pick("group", cfg.group);
  pick("genus", cfg.genus);
  pick("twistDegree", cfg.twistDegree);
  pick("seed", cfg.seed);
  pick("samples", cfg.samples);
  pick("scaleOfForm", cfg.scaleOfForm);
  pick("gradTol", cfg.gradTol);
  pick("svdTol", cfg.svdTol);
  pick("fdStep", cfg.fdStep);
  pick("flowMaxIter", cfg.flowMaxIter);
  pick("flowInitialStep", cfg.flowInitialStep);
  pick("outDir", cfg.outDir);
}

std::string outPath(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.outDir);
  return (std::filesystem::path(cfg.outDir) / name).string();
}

void writeReport(const RunConfig& cfg, const std::string& name, Json body,
                 const std::string& summary) {
  body["schemaVersion"] = kSchemaVersion;
  body["config"] = cfg.echo();
  writeJsonFile(outPath(cfg, name + ".json"), body);
  std::ofstream txt(outPath(cfg, name + ".txt"));
  txt << summary;
  std::cout << summary;
}

int cmdVerify(const RunConfig& cfg, int only) {
  VerifyOptions opts;
  opts.seed = cfg.seed;
  const auto results = runAcceptanceSuite(opts, only);
  Json arr = Json::array();
  std::ostringstream txt;
  for (const auto& r : results) {
    arr.push_back({{"index", r.index},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"detail", r.detail}});
    txt << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.index << ": "
        << r.name << "\n       " << r.detail << "\n";
  }
  const bool ok = allPassed(results);
  txt << (ok ? "all criteria passed\n" : "SOME CRITERIA FAILED\n");
  writeReport(cfg, "verify", Json{{"results", arr}, {"allPassed", ok}}, txt.str());
  return ok ? kExitOk : kExitAssertion;
}

int cmdSample(const RunConfig& cfg, bool structured) {
  const CentralTwist t = cfg.twist();
  FiberSampleConfig fs;
  fs.structured = structured;
  std::ofstream jsonl(outPath(cfg, "samples.jsonl"));
  std::ostringstream txt;
  double worst = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const RepPoint A = sampleFiberPoint(cfg.spec(), cfg.genus, t, cfg.seed + i, fs);
    const double res = fiberResidual(A, t);
    worst = std::max(worst, res);
    Json row = toJson(A);
    row["seed"] = cfg.seed + i;
    row["residual"] = res;
    jsonl << row.dump() << "\n";
  }
  txt << "sampled " << cfg.samples << " fiber points (" << cfg.spec().name()
      << ", genus " << cfg.genus << ", twist " << cfg.twistDegree
      << "), worst residual " << worst << "\n";
  writeReport(cfg, "sample", Json{{"count", cfg.samples}, {"worstResidual", worst}},
              txt.str());
  return kExitOk;
}

int cmdFlow(const RunConfig& cfg, const std::string& pointFile, bool traceCsv) {
  RepPoint A = pointFile.empty()
                   ? sampleFiberPoint(cfg.spec(), cfg.genus, cfg.twist(), cfg.seed)
                   : repPointFromJson(readJsonFile(pointFile));
  std::vector<FlowTraceRow> trace;
  const FlowReport rep = flowToKempfNess(A, cfg.flow(), &trace);
  if (traceCsv) {
    std::ofstream csv(outPath(cfg, "flow_trace.csv"));
    csv << "iteration,norm,step\n";
    for (const auto& row : trace)
      csv << row.iteration << "," << row.norm << "," << row.step << "\n";
  }
  std::ostringstream txt;
  txt << "flow: " << rep.iterations << " iterations, |mu_R| " << rep.initialNorm
      << " -> " << rep.finalNorm << (rep.converged ? " (converged)" : " (stalled)")
      << ", invariant drift " << rep.invariantDrift << ", fiber drift "
      << rep.fiberDrift << "\n";
  writeReport(cfg, "flow", toJson(rep), txt.str());
  return rep.converged ? kExitOk : kExitAssertion;
}

int cmdCohomology(const RunConfig& cfg, const std::string& pointFile) {
  const CentralTwist t = cfg.twist();
  RepPoint A = pointFile.empty()
                   ? sampleFiberPoint(cfg.spec(), cfg.genus, t, cfg.seed)
                   : repPointFromJson(readJsonFile(pointFile));
  const CohomologyBases cb = cohomologyBases(A, t, cfg.svdTol);
  std::ostringstream txt;
  txt << "H0 " << cb.summary.dimH0 << ", Z1 " << cb.summary.dimZ1 << ", B1 "
      << cb.summary.dimB1 << ", H1 " << cb.summary.dimH1 << "\n";
  writeReport(cfg, "cohomology", toJson(cb.summary), txt.str());
  return kExitOk;
}

int cmdPairing(const RunConfig& cfg, const std::string& pointFile) {
  const CentralTwist t = cfg.twist();
  RepPoint A = pointFile.empty()
                   ? sampleFiberPoint(cfg.spec(), cfg.genus, t, cfg.seed)
                   : repPointFromJson(readJsonFile(pointFile));
  const PairingMatrix pm = buildPairingMatrix(A, t, standardTwoChain(cfg.genus),
                                              cfg.svdTol);
  std::ostringstream txt;
  txt << "slice dimension " << pm.basis.size() << ", smallest singular value "
      << pm.smallestSingular << "\n";
  writeReport(cfg, "pairing", toJson(pm), txt.str());
  return kExitOk;
}

int cmdStratify(const RunConfig& cfg) {
  const CentralTwist t = cfg.twist();
  std::ofstream csv(outPath(cfg, "strata.csv"));
  csv << "seed,stabilizerDim,tag,flowIterations,finalNorm\n";
  Json rows = Json::array();
  std::map<std::string, int> histogram;
  for (int i = 0; i < cfg.samples; ++i) {
    const RepPoint A = sampleFiberPoint(cfg.spec(), cfg.genus, t, cfg.seed + i);
    const FlowReport rep = flowToKempfNess(A, cfg.flow());
    const StratumLabel label = orbitTypeLabel(rep.finalPoint, cfg.svdTol);
    csv << (cfg.seed + i) << "," << label.stabilizerDim << ","
        << stratumTagName(label.tag) << "," << rep.iterations << "," << rep.finalNorm
        << "\n";
    Json row = toJson(label);
    row["seed"] = cfg.seed + i;
    rows.push_back(row);
    ++histogram[stratumTagName(label.tag)];
  }
  std::ostringstream txt;
  txt << "stratified " << cfg.samples << " reduced points:";
  for (const auto& [tag, count] : histogram) txt << " " << tag << " x" << count;
  txt << "\n";
  writeReport(cfg, "stratify", Json{{"labels", rows}}, txt.str());
  return kExitOk;
}

int cmdLocalModel(const RunConfig& cfg, const std::string& modelFile) {
  LinearSympRep rep = a1Model();
  std::vector<Polynomial> invs = a1Invariants();
  if (!modelFile.empty()) {
    const Json j = readJsonFile(modelFile);
    rep.torusRank = j.at("torusRank").get<int>();
    rep.dim = j.at("dim").get<int>();
    rep.weights = Eigen::MatrixXi(rep.torusRank, rep.dim);
    for (int r = 0; r < rep.torusRank; ++r)
      for (int s = 0; s < rep.dim; ++s) rep.weights(r, s) = j.at("weights")[r][s];
    rep.pairing.clear();
    for (const auto& p : j.at("pairing"))
      rep.pairing.push_back({p[0].get<int>(), p[1].get<int>()});
    rep.validate();
    invs.clear();
    for (const auto& jp : j.at("invariants")) {
      Polynomial poly;
      poly.dim = rep.dim;
      for (const auto& jm : jp) {
        Monomial m;
        m.coeff = Complex(jm.at("re").get<double>(), jm.value("im", 0.0));
        m.exponents = jm.at("exponents").get<std::vector<int>>();
        poly.monomials.push_back(std::move(m));
      }
      invs.push_back(std::move(poly));
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::ofstream csv(outPath(cfg, "localmodel.csv"));
  csv << "sample";
  for (std::size_t k = 0; k < invs.size(); ++k) csv << ",inv" << k << "_re,inv" << k << "_im";
  csv << ",stabilizerDim\n";
  std::map<int, int> strata;
  // zero-fiber sampler is model specific; only the A1 family is built in
  for (int i = 0; i < cfg.samples; ++i) {
    Vector v(4);
    const Complex a1(gauss(rng), gauss(rng)), a2(gauss(rng), gauss(rng));
    const Complex phase = std::polar(1.0, gauss(rng));
    v << a1, a2, phase * a2, -phase * a1;
    const auto rp = classifyQuotientPoint(rep, invs, v);
    csv << i;
    for (Eigen::Index k = 0; k < rp.invariants.size(); ++k)
      csv << "," << rp.invariants(k).real() << "," << rp.invariants(k).imag();
    csv << "," << rp.stabilizerDim << "\n";
    ++strata[rp.stabilizerDim];
  }
  std::ostringstream txt;
  txt << "classified " << cfg.samples << " zero-fiber points; stabilizer dims:";
  for (const auto& [d, c] : strata) txt << " " << d << " x" << c;
  txt << "\n";
  writeReport(cfg, "localmodel", Json{{"strata", Json(strata)}}, txt.str());
  return kExitOk;
}

int cmdCompare(const RunConfig& cfg, const std::string& fileP, const std::string& fileQ) {
  const RepPoint p = repPointFromJson(readJsonFile(fileP));
  const RepPoint q = repPointFromJson(readJsonFile(fileQ));
  const ReducedComparison res = sameReducedPoint(p, q, cfg.flow(), 1e-6);
  const char* verdict = res == ReducedComparison::Same
                            ? "true"
                            : (res == ReducedComparison::Different ? "false"
                                                                   : "indeterminate");
  std::ostringstream txt;
  txt << "same reduced point: " << verdict << "\n";
  writeReport(cfg, "compare", Json{{"sameReducedPoint", verdict}}, txt.str());
  return res == ReducedComparison::Indeterminate ? kExitAssertion : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical twisted representation varieties of surface groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string configPath;
  app.add_option("--config", configPath, "JSON config file; flags override it");
  // flag overrides are applied after the file is read, so define them through
  // a second pass
  std::map<std::string, std::string> flagValues;
  auto addOverride = [&](const char* name, const char* help) {
    app.add_option_function<std::string>(
        name, [&flagValues, name](const std::string& v) { flagValues[name] = v; }, help);
  };
  addOverride("--group", "gl2|sl2|gl3|sl3");
  addOverride("--genus", "surface genus");
  addOverride("--twist", "central twist degree");
  addOverride("--seed", "base RNG seed");
  addOverride("--samples", "batch size");
  addOverride("--out", "output directory");
  addOverride("--tol-grad", "flow gradient tolerance");
  addOverride("--tol-svd", "rank decision tolerance");
  addOverride("--fd-step", "finite difference step");

  int only = 0;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--criterion", only, "restrict to one criterion (1..13)");

  bool structured = false;
  auto* sample = app.add_subcommand("sample", "sample momentum-fiber points");
  sample->add_flag("--structured", structured, "use the structured seed families");

  std::string pointFile, pointFileQ;
  bool traceCsv = false;
  auto* flow = app.add_subcommand("flow", "Kempf-Ness flow to a polystable point");
  flow->add_option("point", pointFile, "RepPoint JSON file (default: sampled)");
  flow->add_flag("--trace", traceCsv, "write flow_trace.csv");

  auto* coh = app.add_subcommand("cohomology", "H^*(pi, g_phi) dimension report");
  coh->add_option("point", pointFile, "RepPoint JSON file (default: sampled)");

  auto* pair = app.add_subcommand("pairing", "cup-product pairing matrix");
  pair->add_option("point", pointFile, "RepPoint JSON file (default: sampled)");

  app.add_subcommand("stratify", "sample, flow, and label orbit types");

  std::string modelFile;
  auto* local = app.add_subcommand("localmodel", "A1 local model classification");
  local->add_option("--model", modelFile, "model config JSON (weights, pairing, invariants)");

  auto* compare = app.add_subcommand("compare", "reduced-point equality of two points");
  compare->add_option("p", pointFile, "first RepPoint JSON")->required();
  compare->add_option("q", pointFileQ, "second RepPoint JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!configPath.empty()) loadConfigFile(cfg, configPath);
    // flag overrides
    if (flagValues.count("--group")) cfg.group = flagValues["--group"];
    if (flagValues.count("--genus")) cfg.genus = std::stoi(flagValues["--genus"]);
    if (flagValues.count("--twist")) cfg.twistDegree = std::stoi(flagValues["--twist"]);
    if (flagValues.count("--seed")) cfg.seed = std::stoull(flagValues["--seed"]);
    if (flagValues.count("--samples")) cfg.samples = std::stoi(flagValues["--samples"]);
    if (flagValues.count("--out")) cfg.outDir = flagValues["--out"];
    if (flagValues.count("--tol-grad")) cfg.gradTol = std::stod(flagValues["--tol-grad"]);
    if (flagValues.count("--tol-svd")) cfg.svdTol = std::stod(flagValues["--tol-svd"]);
    if (flagValues.count("--fd-step")) cfg.fdStep = std::stod(flagValues["--fd-step"]);
    cfg.twist();  // validate group/twist admissibility before any computation

    if (verify->parsed()) return cmdVerify(cfg, only);
    if (sample->parsed()) return cmdSample(cfg, structured);
    if (flow->parsed()) return cmdFlow(cfg, pointFile, traceCsv);
    if (coh->parsed()) return cmdCohomology(cfg, pointFile);
    if (pair->parsed()) return cmdPairing(cfg, pointFile);
    if (app.get_subcommand("stratify")->parsed()) return cmdStratify(cfg);
    if (local->parsed()) return cmdLocalModel(cfg, modelFile);
    if (compare->parsed()) return cmdCompare(cfg, pointFile, pointFileQ);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitConfig;
}
