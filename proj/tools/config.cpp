#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sturmlab::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

Int json_int(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw UsageError("bad integer " + j.dump());
    return v;
  }
  throw UsageError("expected an integer, got " + j.dump());
}

IntMat2 json_mat(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2)
    throw UsageError("expected a 2x2 matrix, got " + j.dump());
  return {json_int(j[0][0]), json_int(j[0][1]), json_int(j[1][0]), json_int(j[1][1])};
}

std::string join(const nlohmann::json& arr) {
  std::string out;
  for (const auto& v : arr) out += (out.empty() ? "" : ",") + v.dump();
  return out;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.kv = {
      {"program", "prefix=[-1,1];period=[1]"},
      {"family", "bl"},
      {"abc", "2,1,2"},
      {"ab", "1,2"},
      {"s1", "1"},
      {"precision", "256"},
      {"k", "3:14"},
      {"up_to", "14"},
      {"grid", "400"},
      {"radius_cap", "10000"},
      {"bf_q_max", "12"},
      {"tol", "1e-9"},
      {"out_dir", "."},
      {"digits", "50"},
      {"delta_depth", "18"},
  };
  return c;
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  long n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
    // program specs contain '=' themselves, so only the first one splits
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
}

bool RunConfig::has(const std::string& key) const {
  auto it = kv.find(key);
  return it != kv.end() && !it->second.empty();
}

std::string RunConfig::str(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end()) throw UsageError("missing setting " + key);
  return it->second;
}

std::optional<std::string> RunConfig::opt(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return kv.at(key);
}

long RunConfig::integer(const std::string& key) const {
  std::string s = str(key);
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(key + ": expected an integer, got '" + s + "'");
  }
}

double RunConfig::real(const std::string& key) const {
  std::string s = str(key);
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(key + ": expected a number, got '" + s + "'");
  }
}

bool RunConfig::flag(const std::string& key) const {
  auto v = opt(key);
  return v && (*v == "1" || *v == "true" || *v == "yes");
}

std::pair<long, long> RunConfig::window(const std::string& key) const {
  std::string s = str(key);
  size_t colon = s.find(':');
  if (colon == std::string::npos) throw UsageError(key + ": expected lo:hi, got '" + s + "'");
  auto v = parse_ints(s.substr(0, colon) + "," + s.substr(colon + 1), 2, key);
  if (v[0] > v[1]) throw UsageError(key + ": empty window " + s);
  return {v[0], v[1]};
}

SturmianProgram RunConfig::program() const {
  try {
    return SturmianProgram::parse(str("program"));
  } catch (const Error& e) {
    throw UsageError(std::string("program: ") + e.what());
  }
}

MatrixSeed RunConfig::seed() const {
  RunConfig c = *this;
  if (auto path = opt("seed_file")) {
    std::ifstream in(*path);
    if (!in) throw IoError("cannot read " + *path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(*path + ": " + e.what());
    }
    if (j.contains("w0") || j.contains("w1")) {
      if (!j.contains("w0") || !j.contains("w1")) throw UsageError(*path + ": custom seeds need w0 and w1");
      try {
        return custom_seed(json_mat(j["w0"]), json_mat(j["w1"]));
      } catch (const Error& e) {
        throw UsageError(*path + ": " + e.what());
      }
    }
    if (j.contains("family")) c.kv["family"] = j["family"].get<std::string>();
    if (j.contains("abc")) c.kv["abc"] = join(j["abc"]);
    if (j.contains("ab")) c.kv["ab"] = join(j["ab"]);
    if (j.contains("s1")) c.kv["s1"] = j["s1"].dump();
  }
  std::string fam = c.str("family");
  try {
    if (fam == "roy") {
      auto v = parse_ints(c.str("abc"), 3, "abc");
      return roy_family(v[0], v[1], v[2]);
    }
    if (fam == "bl") {
      auto v = parse_ints(c.str("ab"), 2, "ab");
      return bl_family(v[0], v[1], c.integer("s1"));
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  throw UsageError("family must be roy or bl (custom seeds come from --seed-file)");
}

std::string RunConfig::output(const std::string& key) const {
  auto v = opt(key);
  if (!v) return {};
  if (!v->empty() && (*v)[0] == '/') return *v;
  return str("out_dir") + "/" + *v;
}

std::vector<long> parse_ints(const std::string& s, size_t n, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(what + ": expected " + std::to_string(n) + " comma-separated nonnegative integers, got '" +
                       s + "'");
    out.push_back(std::stol(tok));
  }
  if (out.size() != n)
    throw UsageError(what + ": expected " + std::to_string(n) + " comma-separated integers, got '" + s + "'");
  return out;
}

}  // namespace sturmlab::cli
