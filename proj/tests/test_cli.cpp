#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = STURMLAB_CLI;
const std::string kTmp = STURMLAB_TMP;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>&1";
  Run r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("verify --family roy --abc 2,x,2").code == 2);
  CHECK(run("three-system --family bl --ab 1,2 --k 5:3").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("three-system --family bl --ab 1,2 --k 3:6 --delta abc --no-samples").code == 2);
}

TEST_CASE("verify warns about seeds that are not proper-capable") {
  Run r = run("verify --family roy --abc 2,1,1 --up-to 6");
  CHECK(r.out.find("not proper-capable (Tr(JN)=0)") != std::string::npos);
}

TEST_CASE("three-system verdicts") {
  Run ok = run("three-system --family bl --ab 1,2 --s1 1 --k 4:12 --grid 40 --out-dir " + kTmp + " --svg ts.svg --csv ts.csv");
  CHECK(ok.code == 0);
  std::string svg = slurp(kTmp + "/ts.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<metadata>") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  std::string csv = slurp(kTmp + "/ts.csv");
  CHECK(csv.find("q,L1,L2,L3,P1,P2,P3,gray") != std::string::npos);
  CHECK(csv.find("# family=bl") != std::string::npos);

  Run bad = run("three-system --family bl --ab 1,2 --k 3:14 --delta 0.5 --no-samples");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("not a 3-system") != std::string::npos);
}

TEST_CASE("gray needs the all-ones program") {
  Run r = run("gray --i 5 --family roy --abc 2,1,2 --program 'prefix=[-1,1];period=[2]'");
  CHECK(r.code == 1);
  CHECK(r.out.find("FibonacciOnly") != std::string::npos);
}

TEST_CASE("xi digits with the continued fraction cross-check") {
  Run r = run("xi --digits 50 --family bl --ab 1,2");
  CHECK(r.code == 0);
  CHECK(r.out.find("agrees to 1e-50") != std::string::npos);
}

TEST_CASE("spectrum endpoints and deterministic JSON") {
  Run r = run("spectrum --endpoints --sweep 6 --out-dir " + kTmp + " --json s1.json");
  CHECK(r.code == 0);
  CHECK(r.out.find("(3+1*sqrt(13))/1") != std::string::npos);
  run("spectrum --endpoints --sweep 6 --out-dir " + kTmp + " --json s2.json");
  std::string a = slurp(kTmp + "/s1.json"), b = slurp(kTmp + "/s2.json");
  CHECK(a.find("\"schema\": \"sturmlab/1\"") != std::string::npos);
  auto strip = [](std::string s) {
    size_t p = s.find("s1.json");
    if (p == std::string::npos) p = s.find("s2.json");
    if (p != std::string::npos) s.replace(p, 7, "sX.json");
    return s;
  };
  CHECK(strip(a) == strip(b));
}

TEST_CASE("config files are overridden by flags") {
  std::string cfg = kTmp + "/run.cfg";
  std::ofstream(cfg) << "# exponents run\nfamily=roy\nabc=2,1,2\ndelta=0.1\n";
  Run r = run("--config " + cfg + " exponents --delta 0.2");
  CHECK(r.code == 0);
  CHECK(r.out.find("delta 0.2000000000 (forced)") != std::string::npos);
  Run m = run("--config " + kTmp + "/missing.cfg exponents");
  CHECK(m.code == 3);
}

TEST_CASE("unwritable outputs exit with 3") {
  CHECK(run("spectrum --endpoints --json /nonexistent-dir/x.json").code == 3);
}
