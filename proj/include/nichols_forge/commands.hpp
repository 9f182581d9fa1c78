#pragma once

// Batch commands behind the nichols-forge executable.  Each takes the raw text
// of its input file, so the digest covers exactly the bytes read.
//
// Input errors (unparsable or malformed files, bad options) are thrown.  A
// structure that parses but fails a mathematical check is reported with
// status 1, including preconditions such as ccc-ness.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nichols_forge/filtration.hpp"
#include "nichols_forge/io.hpp"

namespace nf {

struct RunReport {
  std::string command;
  std::string input_digest;  // sha256 of the input bytes
  int status = 0;            // 0 pass, 1 mathematical failure
  json results = json::object();
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timing;  // phase, seconds
  std::optional<json> emitted;  // structure or fusion file produced by the command
  std::string table;            // human-readable summary

  // Timing is left out unless asked for, so reports are reproducible.
  json to_json(bool with_timing = false) const;
};

std::string sha256_hex(const std::string& bytes);

struct NicholsOptions {
  std::size_t max_degree = 8;
  std::optional<std::size_t> oracle_degree;  // defaults to max_degree
};

RunReport cmd_nichols(const std::string& braiding_text, const NicholsOptions& o = {});
RunReport cmd_verify(const std::string& hopf_text);
RunReport cmd_gr(const std::string& hopf_text, FiltrationKind kind);
RunReport cmd_degenerate(const std::string& hopf_text, FiltrationKind kind, const std::vector<Scalar>& lambdas);
RunReport cmd_is_nichols(const std::string& hopf_text);
RunReport cmd_fusion_verify(const std::string& fusion_text);
RunReport cmd_fusion_gen(const std::vector<int>& group);

FiltrationKind parse_filtration_kind(const std::string& s);  // radical | coradical
json axioms_to_json(const AxiomReport& r);
json fusion_report_to_json(const FusionReport& r);

}  // namespace nf
