#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sturmlab/matseq.hpp"
#include "sturmlab/sturm.hpp"

namespace sturmlab::cli {

// Thrown for malformed user input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Unreadable or unwritable files; exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every run setting as key=value. Defaults, then the config file, then flags.
struct RunConfig {
  std::map<std::string, std::string> kv;

  static RunConfig defaults();
  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value) { kv[key] = value; }
  bool has(const std::string& key) const;

  std::string str(const std::string& key) const;
  long integer(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::optional<std::string> opt(const std::string& key) const;

  // "4:14"
  std::pair<long, long> window(const std::string& key) const;
  SturmianProgram program() const;
  // From family/abc/ab/s1, or the JSON seed file when seed_file is set.
  MatrixSeed seed() const;
  // Output path under out_dir; empty when the key is unset.
  std::string output(const std::string& key) const;
};

// "2,1,2" -> {2,1,2}; exactly n positive integers.
std::vector<long> parse_ints(const std::string& s, size_t n, const std::string& what);

}  // namespace sturmlab::cli
