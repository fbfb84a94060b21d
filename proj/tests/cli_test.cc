#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_support.h"

namespace hypermachine {
namespace {

namespace fs = std::filesystem;
using testing::corpus_path;
using testing::read_text;

struct Result {
  int code = -1;
  std::string out;
};

Result Cli(const std::string& args) {
  const std::string command = std::string(HM_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    out.push_back(text.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hm_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string Spec(const std::string& name) { return corpus_path(name); }

  fs::path dir_;
};

TEST_F(CliTest, RunExitCodes) {
  const Result flip = Cli("run " + Spec("flip") + " --input 0 --budget 10");
  EXPECT_EQ(flip.code, 0);
  EXPECT_EQ(flip.out, "halted result=1 steps=1\n");
  EXPECT_EQ(Cli("run " + Spec("loop") + " --budget 10").code, 3);
  EXPECT_EQ(Cli("run " + Spec("flip") + " --input 2 --budget 10").code, 1);
  EXPECT_EQ(Cli("run " + Spec("flip") + " --input 0 --budget 0").code, 1);
  const std::string bad = Write("bad.tm", "machine m\nalphabet: 0 1\n");
  EXPECT_EQ(Cli("run " + bad + " --budget 10").code, 2);
  EXPECT_EQ(Cli("run " + (dir_ / "missing.tm").string() + " --budget 10").code, 1);
  EXPECT_EQ(Cli("run --no-such-flag").code, 2);
  EXPECT_EQ(Cli("").code, 2);
}

TEST_F(CliTest, TraceIsByteIdenticalAcrossRuns) {
  const std::string a = (dir_ / "a.trace").string(), b = (dir_ / "b.trace").string();
  for (const std::string& path : {a, b}) {
    ASSERT_EQ(Cli("run " + Spec("bb2") + " --budget 100 --trace " + path).code, 0);
  }
  const std::string first = read_text(a);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, read_text(b));
  EXPECT_EQ(Lines(first).size(), 7u);  // steps 0..6
}

TEST_F(CliTest, FlipTraceGolden) {
  const std::string path = (dir_ / "flip.trace").string();
  ASSERT_EQ(Cli("run " + Spec("flip") + " --input 0 --budget 10 --trace " + path).code, 0);
  EXPECT_EQ(read_text(path),
            "step=0\tstate=q0\thead=0\ttape=^0\n"
            "step=1\tstate=qf\thead=0\ttape=^1\n");
}

TEST_F(CliTest, InductiveRunAndReflexiveEdits) {
  const Result s = Cli("run " + Spec("stabilizer") + " --budget 100 --inductive");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("out=1\tlast_change=6"), std::string::npos) << s.out;
  EXPECT_EQ(Cli("run " + Spec("idle_writer") + " --budget 100 --inductive").code, 3);
  const Result e = Cli("run " + Spec("edit_once") + " --budget 10");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "edit\tstep=1\tinstall(q1,_ -> qf,1,S)\nhalted result=1 steps=2\n");
}

TEST_F(CliTest, WatchSnapshotsEveryInterval) {
  const Result r = Cli("watch " + Spec("idle_writer") + " --interval 100 --budget 500");
  EXPECT_EQ(r.code, 3);
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 6u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(lines[i], "step=" + std::to_string(100 * i) + "\tout=\tstatus=provisional");
  }
  EXPECT_EQ(lines[5].rfind("summary\tsteps=500\t", 0), 0u);
}

TEST_F(CliTest, WatchWithBudgetBelowInterval) {
  const Result r = Cli("watch " + Spec("idle_writer") + " --interval 100 --budget 50");
  std::size_t summaries = 0;
  for (const std::string& line : Lines(r.out)) summaries += line.rfind("summary", 0) == 0;
  EXPECT_EQ(summaries, 1u);
  EXPECT_EQ(Lines(r.out).back().rfind("summary\tsteps=50\t", 0), 0u);
}

TEST_F(CliTest, WatchHaltingDecider) {
  const std::string desc = Write("flip.desc", Cli("encode " + Spec("flip")).out);
  const Result r = Cli("watch " + desc + " --input 0 --interval 10 --budget 100");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "step=0\tout=0\tstatus=provisional\n"
            "summary\tsteps=1\tout=1\tlast_change=1\tstatus=certified-stable halted\n");
}

TEST_F(CliTest, EncodeDecodeEnumerate) {
  EXPECT_EQ(Cli("encode " + Spec("flip")).out, "011001001101001001000100011010001001001000\n");
  EXPECT_EQ(Cli("enumerate --count 3").out, "11\n01101011\n011001011\n");
  const std::string desc = Write("d.desc", "011001001101001001000100011010001001001000\n");
  const Result d = Cli("decode " + desc);
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("rule q1 0 -> q2 1 S"), std::string::npos);
  EXPECT_EQ(Cli("decode " + Write("bad.desc", "110\n")).code, 2);
  EXPECT_EQ(Cli("encode " + Spec("halt4")).code, 1);
}

TEST_F(CliTest, HaltsDiagonalAudit) {
  const std::string desc = Write("loop.desc", Cli("encode " + Spec("loop")).out);
  const Result h = Cli("halts " + desc + " --budget 100");
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.out.rfind("summary\tsteps=0\tout=0\t", 0), 0u) << h.out;
  const Result d = Cli("diagonal --index 0 --decider budget:5 --budget 10");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "1\n");  // T_0 halts resultless at once
  EXPECT_EQ(Cli("diagonal --index 0 --decider nonsense").code, 1);
  const Result a = Cli("audit --machines 5 --decider budget:5 --truth-budget 100");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(Lines(a.out).size(), 6u);
  EXPECT_EQ(Cli("audit --machines 5 --decider budget:5 --truth-budget 5 --sim-budget 10").code,
            1);
}

TEST_F(CliTest, LimitEval) {
  const Result c = Cli("limit-eval --fn constant --x 0 --stages 10 --window 3");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(Lines(c.out).back(), "final=1\tchanges=0\tstages=11\tconverged=yes");
  const Result o = Cli("limit-eval --fn oscillator --x 0 --stages 10 --window 1");
  EXPECT_EQ(o.code, 3);
  EXPECT_EQ(Lines(o.out).back(), "final=0\tchanges=10\tstages=11\tconverged=no");
  EXPECT_EQ(Cli("limit-eval --fn nope --stages 10 --window 1").code, 1);
}

TEST_F(CliTest, EquivSeparateBench) {
  const Result same = Cli("equiv " + Spec("identity") + " " + Spec("identity") + " --max-len 3");
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out.rfind("equivalent", 0), 0u);
  const Result diff = Cli("equiv " + Spec("flip") + " " + Spec("eraser") + " --max-len 3");
  EXPECT_EQ(diff.out.rfind("counterexample\tword=\t", 0), 0u) << diff.out;
  const Result sep = Cli("separate --lang anbn --max-states 3 --max-len 6");
  EXPECT_EQ(sep.code, 0);
  ASSERT_EQ(Lines(sep.out).size(), 2u);
  EXPECT_EQ(Lines(sep.out)[1].substr(0, 11), "anbn\t3\t6\t12");
  EXPECT_NE(Lines(sep.out)[1].find("\tnone"), std::string::npos);
  const Result bench = Cli("bench --steps 1000");
  EXPECT_EQ(bench.code, 0);
  EXPECT_EQ(bench.out.rfind("steps=1000\t", 0), 0u);
}

}  // namespace
}  // namespace hypermachine
