#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "boxarith/cli.hpp"
#include "golden.hpp"

namespace fs = std::filesystem;
using boxarith::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("boxarith_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& n) const { return (path / n).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string run_suite(const std::string& store) {
  std::string all;
  for (auto& a : boxarith::golden::suite()) {
    std::vector<std::string> args = {"--format", "machine", "--store", store};
    args.insert(args.end(), a.begin(), a.end());
    auto r = call(args);
    EXPECT_EQ(r.code, 0) << a[0] << ": " << r.err;
    all += "# " + a[0] + "\n" + r.out;
  }
  return all;
}

}  // namespace

TEST(Cli, DocumentedExamples) {
  auto t = call({"translate", "--mode", "beta", "box bot"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out, "0=0\n");
  EXPECT_EQ(call({"classify", "box bot"}).out, "B,DeltaB,SigmaB\n");
  EXPECT_EQ(call({"normalize", "--rule", "boxes", "0=S(0)"}).out, "bot\n");
}

TEST(Cli, MachineFormat) {
  auto r = call({"--format", "machine", "normalize", "--rule", "boxes", "(box 0=0 & box bot)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("formula=box (0=0 & bot)\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("k=1\n"), std::string::npos);
  std::istringstream lines(r.out);
  for (std::string l; std::getline(lines, l);) EXPECT_NE(l.find('='), std::string::npos) << l;
  EXPECT_EQ(call({"--format", "machine", "classify", "box bot"}).out, "class=B,DeltaB,SigmaB\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"normalize", "--rule", "nope", "0=0"}).code, 2);
  EXPECT_EQ(call({"--theory", "s5", "classify", "0=0"}).code, 2);
  auto bad = call({"classify", "(0=0"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error: ", 0), 0u) << bad.err;
  EXPECT_EQ(bad.out, "");
  EXPECT_EQ(call({"normalize", "--rule", "s2d", "~box bot"}).code, 1);
  EXPECT_EQ(call({"store", "list"}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, CheckAndProveText) {
  auto ok = call({"check", "ax EQR @ 0=0 ; nec 0 @ box 0=0"});
  EXPECT_EQ(ok.out, "accepted\n");
  auto bad = call({"check", "ax EQR @ 0=0 ; ax T @ (box 0=0 -> 0=0)"});
  EXPECT_EQ(bad.code, 0);
  EXPECT_EQ(bad.out.rfind("rejected\nline: 1\n", 0), 0u) << bad.out;
  EXPECT_EQ(call({"prove", "0=S(0)"}).out, "none\n");
  EXPECT_EQ(call({"prove", "exists y (S(0)+S(y))=#3"}).out.rfind("proved\n", 0), 0u);
}

TEST(Cli, DecideAndScan) {
  auto gl = call({"decide", "--logic", "gl", "box (box p -> p) -> box p"});
  EXPECT_EQ(gl.out.rfind("provable\nverified: true\n", 0), 0u) << gl.out;
  auto k = call({"--format", "machine", "decide", "--logic", "k", "box p -> p"});
  EXPECT_NE(k.out.find("result=unprovable\n"), std::string::npos);
  EXPECT_NE(k.out.find("verified=true\n"), std::string::npos);
  EXPECT_NE(k.out.find("w0="), std::string::npos);
  auto s = call({"--format", "machine", "scan-mdp", "--logic", "ver", "--size", "3", "--vars", "1"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out.find("violations=0\n"), std::string::npos) << s.out;
}

TEST(Cli, StoreRoundTrip) {
  TempDir d("store");
  auto store = d.file("s.store");
  auto rec = call({"--store", store, "store", "record", "ax EQR @ 0=0 ; nec 0 @ box 0=0"});
  ASSERT_EQ(rec.code, 0) << rec.err;
  EXPECT_TRUE(fs::exists(store));
  EXPECT_TRUE(fs::exists(store + ".journal"));
  EXPECT_EQ(slurp(store).rfind("boxarithstore v1\n", 0), 0u);
  EXPECT_EQ(call({"--store", store, "store", "nec-close", "--horizon", "3"}).code, 0);
  auto audit = call({"--format", "machine", "--store", store, "store", "audit"});
  EXPECT_NE(audit.out.find("box_elim_closed=false\n"), std::string::npos) << audit.out;
  auto list = call({"--store", store, "store", "list"});
  EXPECT_NE(list.out.find("box box box 0=0"), std::string::npos) << list.out;
  auto ev = call({"--store", store, "eval", "--model", "prov", "box box 0=0"});
  EXPECT_EQ(ev.out, "true\n");
  EXPECT_EQ(call({"--store", store, "audit-dc", "box 0=0"}).out.rfind("left\n", 0), 0u);
  EXPECT_EQ(call({"--store", store, "store", "box-elim-close"}).code, 1);
}

TEST(Cli, EnvironmentStore) {
  TempDir d("env");
  auto store = d.file("e.store");
  ::setenv("BOXARITH_STORE", store.c_str(), 1);
  auto r = call({"store", "record", "ax EQR @ 0=0"});
  ::unsetenv("BOXARITH_STORE");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(store));
}

TEST(Cli, GoldenSuiteIsDeterministic) {
  TempDir a("ga"), b("gb");
  auto out_a = run_suite(a.file("s.store"));
  auto out_b = run_suite(b.file("s.store"));
  EXPECT_EQ(out_a, out_b);
  EXPECT_EQ(slurp(a.file("s.store.journal")), slurp(b.file("s.store.journal")));
  EXPECT_EQ(slurp(a.file("s.store")), slurp(b.file("s.store")));
}

TEST(Cli, RealBinaryExitCodes) {
  std::string bin = BOXARITH_CLI_PATH;
  auto status = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("classify 'box bot'"), 0);
  EXPECT_EQ(status("classify '(0=0'"), 1);
  EXPECT_EQ(status("nosuchcommand"), 2);
  TempDir d("bin");
  auto out = d.file("o.txt");
  std::system((bin + " translate --mode beta 'box bot' > " + out).c_str());
  EXPECT_EQ(slurp(out), "0=0\n");
}
