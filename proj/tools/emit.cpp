#include "emit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sturmlab::cli {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

nlohmann::json envelope(const std::string& command, const RunConfig& cfg, nlohmann::json result) {
  nlohmann::json j;
  j["schema"] = "sturmlab/1";
  j["command"] = command;
  j["config"] = nlohmann::json(cfg.kv);
  j["result"] = std::move(result);
  return j;
}

std::string config_comment(const RunConfig& cfg, const std::string& prefix) {
  std::string out;
  for (const auto& [k, v] : cfg.kv) out += prefix + k + "=" + v + "\n";
  return out;
}

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string combined_svg(const SystemBreakpoints& P, const std::vector<MinimaSample>& samples,
                         const RunConfig& cfg) {
  const double W = 960, H = 600, left = 60, right = 20, top = 30, bottom = 50;
  const double q0 = P.span_lo().to_double(), q1 = P.span_hi().to_double();
  double vmax = 0;
  for (const auto& pc : P.pieces) vmax = std::max(vmax, pc.comp[2].at(P.basis, pc.q1).to_double());
  for (const auto& s : samples) vmax = std::max(vmax, s.L[2].to_double());
  vmax = vmax > 0 ? vmax * 1.05 : 1;
  auto X = [&](double q) { return left + (q - q0) / (q1 - q0) * (W - left - right); };
  auto Y = [&](double v) { return H - bottom - v / vmax * (H - top - bottom); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << " " << H << "\">\n";
  o << "<metadata>\n" << xml_escape(config_comment(cfg, "")) << "</metadata>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" style=\"fill:#ffffff\"/>\n";
  for (const auto& [j, g] : P.gray) {
    double a = std::max(q0, g.first.to_double()), b = std::min(q1, g.second.to_double());
    if (b <= a) continue;
    o << "<rect x=\"" << fmt(X(a), 3) << "\" y=\"" << top << "\" width=\"" << fmt(X(b) - X(a), 3) << "\" height=\""
      << H - top - bottom << "\" style=\"fill:#d9d9d9;stroke:none\"/>\n";
  }
  o << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
    << "\" style=\"stroke:#000000;stroke-width:1\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
    << "\" style=\"stroke:#000000;stroke-width:1\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" style=\"font:12px sans-serif;text-anchor:middle\">q ("
    << fmt(q0, 2) << " .. " << fmt(q1, 2) << ")</text>\n";
  o << "<text x=\"15\" y=\"" << top + 10 << "\" style=\"font:12px sans-serif\">max " << fmt(vmax, 2) << "</text>\n";

  const char* colors[3] = {"#1f3a93", "#1e8449", "#a93226"};
  for (int j = 0; j < 3; ++j) {
    o << "<polyline style=\"fill:none;stroke:" << colors[j] << ";stroke-width:1.2\" points=\"";
    for (const auto& pc : P.pieces) {
      o << fmt(X(pc.q0.to_double()), 3) << "," << fmt(Y(pc.comp[j].at(P.basis, pc.q0).to_double()), 3) << " ";
      o << fmt(X(pc.q1.to_double()), 3) << "," << fmt(Y(pc.comp[j].at(P.basis, pc.q1).to_double()), 3) << " ";
    }
    o << "\"/>\n";
  }
  for (const auto& s : samples)
    for (int j = 0; j < 3; ++j)
      o << "<circle cx=\"" << fmt(X(s.q.to_double()), 3) << "\" cy=\"" << fmt(Y(s.L[j].to_double()), 3)
        << "\" r=\"1.6\" style=\"fill:" << colors[j] << ";fill-opacity:0.6\"/>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace sturmlab::cli
