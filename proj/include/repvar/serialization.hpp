#pragma once

#include <string>

#include <json.hpp>

#include "repvar/localmodel.hpp"

namespace repvar {

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

// RepPoint files: {"schema":1, "family":"gl|sl", "n":..., "scale":...,
// "genus":..., "entries": [matrix...]} with each matrix a row-major list of
// [re, im] pairs.
Json toJson(const RepPoint& A);
RepPoint repPointFromJson(const Json& j);

Json toJson(const TangentTuple& v);
TangentTuple tangentTupleFromJson(const Json& j, const RepPoint& base);

// TwoChain files: list of [coeff, wordA, wordB] with words as signed 1-based
// generator arrays (sign = exponent).
Json toJson(const TwoChain& c);
TwoChain twoChainFromJson(const Json& j);

Json toJson(const FreeWord& w);
FreeWord freeWordFromJson(const Json& j);

Json toJson(const FlowReport& r);
Json toJson(const CohomologySummary& s);
Json toJson(const PairingMatrix& p);
Json toJson(const StratumLabel& l);
Json toJson(const RankDiagnostics& d);

Json matrixToJson(const Matrix& m);
Matrix matrixFromJson(const Json& j, int rows, int cols);

void writeJsonFile(const std::string& path, const Json& j);
Json readJsonFile(const std::string& path);

}  // namespace repvar
