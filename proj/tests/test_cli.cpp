// Drives the installed CLI binary end to end. Usage: cli_tests <path-to-ncann>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

#define EXPECT(cond, msg)                                         \
  do {                                                            \
    if (!(cond)) {                                                \
      std::cerr << "FAIL: " << msg << " (" << #cond << ")\n";     \
      ++g_failures;                                               \
    }                                                             \
  } while (0)

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <ncann binary>\n";
    return 1;
  }
  const std::string bin = argv[1];

  {
    RunResult r = run(bin + " nf --ring armendariz_3_3 \"a[2]*b[0]\"");
    EXPECT(r.code == 0, "nf exit code");
    EXPECT(contains(r.out, "a[1]*b[1] + a[0]*b[2]"), "nf result");
  }
  {
    RunResult r = run(bin + " mul --ring section4 \"b[1]\" \"a[0]\"");
    EXPECT(r.code == 0, "mul exit code");
    EXPECT(contains(r.out, "0"), "mul result is zero");
  }
  {
    RunResult r = run(bin +
                      " ann --ring section4 --side left --idx 3 --deg 2 "
                      "--elems \"a[0];a[1]\"");
    EXPECT(r.code == 0, "ann exit code");
    EXPECT(contains(r.out, "dim: 3"), "ann dimension");
    EXPECT(contains(r.out, "b[1]"), "ann basis rendering");
  }
  {
    RunResult r = run(bin + " basis --ring section4 --idx 2 --deg 2 --claim");
    EXPECT(r.code == 0, "basis exit code");
    EXPECT(contains(r.out, "count: 19"), "basis count");
    EXPECT(contains(r.out, "claim: pass"), "basis claim verdict");
  }
  {
    RunResult r = run(bin + " zip --ring section4 --side right --idx 3 --deg 2 " +
                      "--elems \"1 + b[0]; a[0]\"");
    EXPECT(r.code == 0, "zip exit code");
    EXPECT(contains(r.out, "witness subset of size 1"), "zip witness size");
  }
  {
    RunResult r = run(bin + " armendariz --ring armendariz_3_3 \"a[0]\" \"b[0]\"");
    EXPECT(r.code == 0, "armendariz exit code");
    EXPECT(contains(r.out, "no violation"), "armendariz verdict");
  }
  {
    // the truncated series family admits no finite subset with zero annihilator
    RunResult r = run(bin +
                      " zip --ring cedo_3_1 --side right --series --order 4 --idx 2 "
                      "--deg 1 --elems \"a[0,0] - a[1,0]*x; a[0,1] - a[1,1]*x; "
                      "a[0,2] - a[1,2]*x\"");
    EXPECT(r.code == 0, "series zip exit code");
    EXPECT(contains(r.out, "none (full-set annihilator dim"), "series zip obstruction");
  }
  {
    // precondition violation is a usage error
    RunResult r = run(bin + " armendariz --ring section4 \"b[0]\" \"a[1]\"");
    EXPECT(r.code == 2, "armendariz precondition exit code");
  }
  {
    // degree overflow maps to exit 3
    RunResult r = run(bin + " mul --ring section4 --deg 1 \"a[0]\" \"a[1]\"");
    EXPECT(r.code == 3, "overflow exit code");
  }
  {
    RunResult r = run(bin + " definitely-not-a-command");
    EXPECT(r.code == 2, "usage error exit code");
  }
  {
    // determinism: equal configs give byte-identical reports
    RunResult r1 = run(bin + " check section4 --idx 2 --deg 2 --batch 3 --out /tmp/ncann_r1.json");
    RunResult r2 = run(bin + " check section4 --idx 2 --deg 2 --batch 3 --out /tmp/ncann_r2.json");
    EXPECT(r1.code == 0, "check exit code");
    EXPECT(r2.code == 0, "check exit code (rerun)");
    std::string a = slurp("/tmp/ncann_r1.json"), b = slurp("/tmp/ncann_r2.json");
    EXPECT(!a.empty() && a == b, "check reports are byte-identical");
    EXPECT(contains(r1.out, "all checks consistent"), "check summary");
  }
  {
    // nf output re-parses to an equal element
    RunResult r = run(bin + " nf --ring armendariz_3_3 \"a[3]*b[0] + a[1]\"");
    EXPECT(r.code == 0, "nf exit code");
    std::string line = r.out.substr(0, r.out.find('\n'));
    RunResult r2 = run(bin + " nf --ring armendariz_3_3 \"" + line + "\"");
    EXPECT(r2.code == 0, "round-trip exit code");
    EXPECT(contains(r2.out, line), "round-trip fixed point");
  }
  {
    // user-defined presentation from a file
    std::ofstream f("/tmp/ncann_ring.dsl");
    f << "field 3;\nfamily g(1);\nrule g[i]*g[j] -> 0 when i == j;\n";
    f.close();
    RunResult r = run(bin + " nf --ring /tmp/ncann_ring.dsl \"g[1]*g[1] + 2*g[0]\"");
    EXPECT(r.code == 0, "custom ring exit code");
    EXPECT(contains(r.out, "2*g[0]"), "custom ring result");
  }
  {
    // endomorphism table from a file
    std::ofstream f("/tmp/ncann_shift.alpha");
    f << "kind endomorphism;\ngen a[i] -> a[i+1];\ngen b[j] -> b[j+1];\n";
    f.close();
    RunResult r = run(bin +
                      " armendariz --ring section4 --alpha /tmp/ncann_shift.alpha "
                      "\"b[0]\" \"b[1]\"");
    EXPECT(r.code == 0, "alpha-file exit code");
    EXPECT(contains(r.out, "no violation"), "alpha-file verdict");
  }

  if (g_failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_tests: " << g_failures << " failures\n";
  return 1;
}
