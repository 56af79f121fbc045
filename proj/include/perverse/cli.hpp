#pragma once

// Scenario files and verification reports.
//
// A scenario is a JSON object {kind, meta: {name, description, expect?},
// payload}. Rationals are strings "p/q" or integers; a matrix is an array of
// rows or {rows, cols, entries}. Reports are deterministic functions of the
// scenario bytes except for timing_ms, which the canonical hash excludes.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "perverse/germ.hpp"
#include "perverse/lefschetz.hpp"
#include "perverse/localsys.hpp"
#include "perverse/motive.hpp"

namespace perverse::cli {

using Json = nlohmann::json;

enum class Kind {
  grauert,
  zariski,
  fibration,
  ic_stalk,
  gysin,
  germ_decompose,
  germ_truncate,
  koszul,
  hl_check,
  perverse_filtration,
  limit_primitives,
  etal_decomposition,
  motive,
  check_all,
};

std::string_view to_string(Kind kind);
/// Accepts the snake_case name or the subcommand spelling (dashes).
std::optional<Kind> kind_from_string(std::string_view name);

struct Scenario {
  Kind kind = Kind::grauert;
  std::string name;
  std::string description;
  std::optional<std::string> expect;  // "fail" marks a scenario that must fail
  Json payload;
  std::filesystem::path directory;    // base for relative paths in the payload
};

/// Throws Error(parse) with "line L, column C" for malformed JSON and
/// Error(schema) for a missing or mistyped envelope field.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

struct Verdict {
  std::string check_id;
  Status status = Status::pass;
  std::string details;
};

struct Report {
  std::string scenario;
  std::string kind;
  std::vector<Verdict> verdicts;
  Json tables = Json::object();
  double timing_ms = 0;

  /// fail if any verdict fails, else hypothesis_not_met if any is, else pass.
  Status status() const;
  /// Includes hash and timing_ms.
  Json to_json() const;
  /// Everything but hash and timing_ms, keys sorted, no whitespace.
  std::string canonical() const;
  /// SHA-256 of canonical(), lowercase hex.
  std::string hash() const;
};

/// 0 pass, 2 fail, 3 hypothesis-not-met only. expect_fail swaps 0 and 2.
int exit_code(const Report& r, bool expect_fail = false);

/// Dispatches on the scenario kind. Payload errors (missing fields, bad
/// shapes, inputs rejected by the library) throw Error(schema); unmet
/// hypotheses become hypothesis-not-met verdicts.
Report run_scenario(const Scenario& s);

/// Runs every *.json file of the directory in filename order, up to
/// `threads` at a time. Each file contributes one verdict: its report status,
/// inverted when meta.expect is "fail"; per-file errors become fail verdicts.
Report check_all(const std::filesystem::path& directory, int threads = 1);

/// Human-readable summary of a report.
std::string render(const Report& r);

// Payload decoders, shared with the tests.
RationalMatrix matrix_from_json(const Json& j, const std::string& where);
GradedPackage graded_package_from_json(const Json& j, const std::string& where);
ResolutionPackage3 resolution3_from_json(const Json& j, const std::string& where);
ResolutionPackage4 resolution4_from_json(const Json& j, const std::string& where);
BigradedPackage bigraded_package_from_json(const Json& j, const std::string& where);

Json to_json(const RationalMatrix& m);

}  // namespace perverse::cli
