#pragma once

#include <string>

#include <json.hpp>

#include "ssco/codesign.hpp"
#include "ssco/oracle.hpp"
#include "ssco/pattern.hpp"
#include "ssco/placement.hpp"
#include "ssco/stair.hpp"

// Every index written to or read from JSON is 1-based.
namespace ssco {

using Json = nlohmann::ordered_json;

Json to_json(const Pattern& p);
/// Accepts {"rows", "cols", "cells"}; throws ParseError on malformed input.
Pattern pattern_from_json(const Json& j);

Json to_json(const StairForm& form);
Json to_json(const DedicatedSolution& s);
Json to_json(const CodesignResult& r);
/// Reads the indices, k and channels of a design; pivots and forms are not restored.
CodesignResult design_from_json(const Json& j);

Json to_json(const Counterexample& cx);
Counterexample counterexample_from_json(const Json& j);
Json to_json(const OracleVerdict& v);

Json to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);

/// Loads a cost matrix from CSV (optional header row) or JSON (array of rows, or
/// {"weights": [...]}). The literal "uniform" gives the uniform unit cost.
CostMatrix load_cost(const std::string& path_or_uniform);

/// Digraph with one sensor -> actuator edge per channel, labelled with its cost.
std::string to_dot(const InformationPattern& info);

/// Reads a whole file; throws Error naming the path when it cannot be opened.
std::string read_file(const std::string& path);

} // namespace ssco
