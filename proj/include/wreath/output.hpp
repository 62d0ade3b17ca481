#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "wreath/config.hpp"
#include "wreath/growth.hpp"
#include "wreath/report.hpp"
#include "wreath/wreath.hpp"

namespace wreath {

inline constexpr const char* kToolVersion = "0.1.0";

// Identification only (collision-tolerant): ties outputs to config bytes.
uint64_t fnv1a64(std::string_view bytes);
std::string hex64(uint64_t v);

// Embedded in every output file: enough to reproduce the run.
struct OutputMeta {
  std::string digest;  // hex64(fnv1a64(config bytes))
  uint64_t seed = 0;
  std::string mode;
  std::string version = kToolVersion;
};

OutputMeta make_meta(const RunConfig& rc);

nlohmann::json meta_json(const OutputMeta& m);
nlohmann::json report_json(const Report& r);
nlohmann::json series_json(const GrowthSeries& s);

// Canonical element form for golden tests: sorted keys, string values.
nlohmann::json wreath_json(const WreathContext& ctx, const WreathElement& x);

// Series CSV: one '#' meta line, then "n,quantity,value" rows.
std::string series_csv(const OutputMeta& m,
                       const std::vector<std::pair<std::string,
                                                   const GrowthSeries*>>& cols);

std::string json_text(const nlohmann::json& j, const OutputMeta& m);

// Write-temp-then-rename; never leaves a partial file at `path`.
void write_file_atomic(const std::string& path, const std::string& bytes);

} // namespace wreath
