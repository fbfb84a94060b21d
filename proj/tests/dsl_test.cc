#include <gtest/gtest.h>

#include "hypermachine/codec.h"
#include "hypermachine/dsl.h"
#include "hypermachine/error.h"
#include "test_support.h"

namespace hypermachine {
namespace {

using testing::corpus_doc;
using testing::corpus_machine;
using testing::corpus_names;
using testing::corpus_path;
using testing::read_text;

ParseError ExpectParseError(const std::string& text) {
  try {
    parse_machine_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError(0, 0, "");
}

TEST(ParseTest, FlipSpec) {
  const SpecDocument doc = parse_machine_spec(
      "machine flip\n"
      "alphabet: 0 1\n"
      "start: q0\n"
      "final: qf*\n"
      "rule q0 0 -> qf 1 S\n"
      "rule q0 1 -> qf 0 S\n");
  EXPECT_EQ(doc.machine, corpus_machine("flip"));
  EXPECT_FALSE(doc.reflexive);
  EXPECT_EQ(doc.name_position.line, 1);
  EXPECT_EQ(doc.start_position.line, 3);
  ASSERT_EQ(doc.rule_positions.size(), 2u);
  EXPECT_EQ(doc.rule_positions[1].line, 6);
  EXPECT_EQ(doc.rule_positions[1].column, 1);
}

TEST(ParseTest, CommentsBlankLinesAndDefaults) {
  const SpecDocument doc = parse_machine_spec(
      "# leading comment\n"
      "\n"
      "machine m   # trailing comment\n"
      "alphabet: 0 1\n"
      "start: a\n"
      "final: b\n"
      "rule a _ -> b _ R\n");
  EXPECT_EQ(doc.machine.tape_count(), 1);
  EXPECT_FALSE(doc.machine.is_result_bearing(*doc.machine.find_state("b")));
  // Without a states line: start, then finals, then rule order.
  EXPECT_EQ(doc.machine.state_name(0), "a");
  EXPECT_EQ(doc.machine.state_name(1), "b");
}

TEST(ParseTest, StatesLineFixesOrder) {
  const SpecDocument doc = parse_machine_spec(
      "machine m\n"
      "alphabet: 0 1\n"
      "states: z a\n"
      "start: a\n"
      "rule a _ -> z _ R\n");
  EXPECT_EQ(doc.machine.state_name(0), "z");
  EXPECT_EQ(doc.machine.start(), 1u);
}

TEST(ParseErrorTest, MissingStartReportsMachineLine) {
  const ParseError e = ExpectParseError(
      "\n"
      "machine m\n"
      "alphabet: 0 1\n"
      "rule q 0 -> q 0 R\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.detail(), "missing start state");
  EXPECT_EQ(std::string(e.what()).rfind("2:", 0), 0u);
}

TEST(ParseErrorTest, NondeterministicRule) {
  const ParseError e = ExpectParseError(
      "machine m\n"
      "alphabet: 0 1\n"
      "start: q0\n"
      "rule q0 0 -> q0 0 R\n"
      "rule q0 0 -> q0 1 L\n");
  EXPECT_EQ(e.line(), 5);
  EXPECT_EQ(e.column(), 1);
  EXPECT_EQ(e.detail(), "nondeterministic rule for (q0, 0), first defined on line 4");
}

TEST(ParseErrorTest, UnknownSymbolPointsAtToken) {
  const std::string line = "rule q0 2 -> q0 0 R";
  const ParseError e = ExpectParseError("machine m\nalphabet: 0 1\nstart: q0\n" + line + "\n");
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), static_cast<int>(line.find('2')) + 1);
  EXPECT_NE(e.detail().find("unknown symbol"), std::string::npos);
}

TEST(ParseErrorTest, UnknownStateWithStatesLine) {
  const ParseError e = ExpectParseError(
      "machine m\nalphabet: 0 1\nstates: a\nstart: a\nrule a 0 -> b 0 R\n");
  EXPECT_EQ(e.line(), 5);
  EXPECT_NE(e.detail().find("unknown state"), std::string::npos);
}

TEST(ParseErrorTest, MalformedEditClause) {
  const ParseError e = ExpectParseError(
      "machine m\nalphabet: 0 1\nstart: a\nrule a 0 -> a 0 R ! install(a,1 -> a)\n");
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.detail().rfind("malformed edit clause", 0), 0u);
  EXPECT_GT(e.column(), 18);
}

TEST(ParseErrorTest, RuleFromFinalState) {
  const ParseError e = ExpectParseError(
      "machine m\nalphabet: 0 1\nstart: a\nfinal: a\nrule a 0 -> a 0 R\n");
  EXPECT_EQ(e.line(), 5);
  EXPECT_NE(e.detail().find("rule fires from final state"), std::string::npos);
}

TEST(ParseErrorTest, OtherProblemsCarryPositions) {
  const std::vector<std::string> bad = {
      "",
      "alphabet: 0 1\n",
      "machine m\nmachine n\n",
      "machine m\ntapes: 9\nalphabet: 0\nstart: a\n",
      "machine m\nalphabet: 0 0\nstart: a\n",
      "machine m\nalphabet: 0 1\nstart: a\nstates: a\n",
      "machine m\nalphabet: 0 1\nstart: a\nrule a 0 -> a 0 X\n",
      "machine m\nalphabet: 0 1\nstart: a\nrule a 0 a 0 R\n",
      "machine m\nalphabet: 0 1\nstart: a\nbogus: 1\n",
      "machine m\ntapes: 2\nalphabet: 0 1\nstart: a\nrule a 0 -> a 0 R\n",
  };
  for (const std::string& text : bad) {
    const ParseError e = ExpectParseError(text);
    EXPECT_GE(e.line(), 1) << text;
    EXPECT_GE(e.column(), 1) << text;
  }
}

TEST(ParseTest, ReflexiveSpec) {
  const SpecDocument doc = corpus_doc("edit_once");
  ASSERT_TRUE(doc.reflexive);
  EXPECT_EQ(doc.reflexive->edits().size(), 1u);
  // An edit over a rule that exists is rejected by the reflexive checks.
  const ParseError e = ExpectParseError(
      "machine m\nalphabet: 0 1\nstart: a\nrule a 0 -> a 0 R ! install(a,0 -> a,1,S)\n");
  EXPECT_EQ(e.line(), 4);
}

TEST(UnparseTest, CorpusRoundTripIsAFixedPoint) {
  for (const std::string& name : corpus_names()) {
    const SpecDocument doc = corpus_doc(name);
    const std::string text = doc.reflexive ? unparse(*doc.reflexive) : unparse(doc.machine);
    const SpecDocument again = parse_machine_spec(text);
    EXPECT_EQ(again.machine, doc.machine) << name;
    EXPECT_EQ(again.reflexive.has_value(), doc.reflexive.has_value()) << name;
    const std::string text2 = again.reflexive ? unparse(*again.reflexive) : unparse(again.machine);
    EXPECT_EQ(text2, text) << name;
  }
}

TEST(UnparseTest, FlipText) {
  EXPECT_EQ(unparse(corpus_machine("flip")),
            "machine flip\n"
            "tapes: 1\n"
            "alphabet: 0 1\n"
            "states: q0 qf\n"
            "start: q0\n"
            "final: qf*\n"
            "rule q0 0 -> qf 1 S\n"
            "rule q0 1 -> qf 0 S\n");
}

TEST(PipelineTest, EncodeDecodeUnparseParseKeepsBehaviour) {
  for (const std::string& name : testing::encodable_corpus_names()) {
    const Machine m = corpus_machine(name);
    const Machine back = parse_machine_spec(unparse(decode(encode(m)))).machine;
    EXPECT_TRUE(std::holds_alternative<EquivalentUpTo>(observational_equiv(m, back, 4, 1000)))
        << name;
  }
}

TEST(TraceTest, FlipGolden) {
  const Machine m = corpus_machine("flip");
  std::vector<Configuration> stream;
  run_observed(m, "0", 10, [&](const Configuration& c) { stream.push_back(c); });
  EXPECT_EQ(emit_trace(m, stream),
            "step=0\tstate=q0\thead=0\ttape=^0\n"
            "step=1\tstate=qf\thead=0\ttape=^1\n");
  EXPECT_EQ(emit_trace(m, {}), "");
}

TEST(TraceTest, LoopHeadsAdvance) {
  const Machine m = corpus_machine("loop");
  std::vector<Configuration> stream;
  run_observed(m, "", 3, [&](const Configuration& c) { stream.push_back(c); });
  ASSERT_EQ(stream.size(), 4u);
  const std::string trace = emit_trace(m, stream);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NE(trace.find("step=" + std::to_string(i) + "\tstate=q0\thead=" + std::to_string(i) +
                         "\ttape=^_\n"),
              std::string::npos);
  }
}

TEST(TraceTest, WindowCoversContentAndHead) {
  const Machine walker = MachineBuilder("walker")
                             .alphabet("01")
                             .start("q")
                             .rule("q", "0", "q", "0", "R")
                             .rule("q", "1", "q", "1", "R")
                             .rule("q", "_", "q", "_", "R")
                             .build();
  std::vector<Configuration> stream;
  run_observed(walker, "01", 3, [&](const Configuration& c) { stream.push_back(c); });
  EXPECT_EQ(tape_window(walker.alphabet(), stream[0].tapes[0], stream[0].heads[0]), "^01");
  EXPECT_EQ(tape_window(walker.alphabet(), stream[1].tapes[0], stream[1].heads[0]), "0^1");
  EXPECT_EQ(tape_window(walker.alphabet(), stream[3].tapes[0], stream[3].heads[0]), "01_^_");
  std::vector<Configuration> left;
  run_observed(corpus_machine("loop_left"), "", 2, [&](const Configuration& c) {
    left.push_back(c);
  });
  EXPECT_EQ(trace_record(corpus_machine("loop_left"), left[2]),
            "step=2\tstate=q0\thead=-2\ttape=^_");
}

TEST(TraceTest, MultiTapeAndOutputFields) {
  const Machine m = corpus_machine("halt4");
  std::vector<Configuration> stream;
  run_observed(m, "", 10, [&](const Configuration& c) { stream.push_back(c); });
  const std::string out = "10";
  EXPECT_EQ(trace_record(m, stream.back(), &out),
            "step=4\tstate=h\thead=0\ttape=^_\thead2=1\ttape2=1^_\thead3=1\ttape3=1^0\tout=10");
}

}  // namespace
}  // namespace hypermachine
