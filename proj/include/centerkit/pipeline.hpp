#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerkit/problem.hpp"

namespace centerkit {

inline constexpr int report_schema_version = 1;
inline constexpr char const *centerkit_version = "0.1.0";

namespace stage {
inline constexpr unsigned lyapunov = 1u << 0;
inline constexpr unsigned returnmap = 1u << 1;
inline constexpr unsigned blowup = 1u << 2;
inline constexpr unsigned slice = 1u << 3;
inline constexpr unsigned germ = 1u << 4;
inline constexpr unsigned all = lyapunov | returnmap | blowup | slice | germ;
} // namespace stage

struct PipelineOptions
{
  unsigned stages = stage::all;
  std::optional<int> truncation;
  std::optional<double> tol;
  std::optional<std::vector<double>> radii;
  std::optional<std::string> dump_dir;   // CSV orbit dumps for the return maps
};

struct Report
{
  nlohmann::ordered_json json;
  bool numeric_failure = false;   // some stage raised a NumericError

  std::string dump() const { return json.dump(2) + "\n"; }
};

// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Runs the stages selected in options that apply to spec.kind. Stage failures
// are recorded in the report; later independent stages still run. The
// "timestamp" field is left empty for the caller to fill.
Report run_pipeline(ProblemSpec const &spec, PipelineOptions const &options = {});

} // namespace centerkit
