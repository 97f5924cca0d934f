#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "sturmlab/paramgeo.hpp"

namespace sturmlab::cli {

void write_file(const std::string& path, const std::string& content);

// {"schema": "sturmlab/1", "command", "config", "result"}
nlohmann::json envelope(const std::string& command, const RunConfig& cfg, nlohmann::json result);

// "# key=value" lines, one per setting.
std::string config_comment(const RunConfig& cfg, const std::string& prefix = "# ");

// Fixed-point text for emitted numbers.
std::string fmt(double v, int digits = 6);

// Combined graph: P_1, P_2, P_3 as solid lines, samples as points, gray intervals shaded.
std::string combined_svg(const SystemBreakpoints& P, const std::vector<MinimaSample>& samples,
                         const RunConfig& cfg);

}  // namespace sturmlab::cli
