#include <gtest/gtest.h>

#include <sstream>

#include "hypermachine/certify.h"
#include "hypermachine/diagonal.h"
#include "hypermachine/error.h"
#include "test_support.h"

namespace hypermachine {
namespace {

using testing::corpus_machine;

CandidateDecider Always(bool claim) {
  return [claim](const Description&, std::string_view) { return claim; };
}

std::optional<std::string> ResultWord(const RunOutcome& o) {
  if (const auto* r = std::get_if<HaltedWithResult>(&o)) return r->result;
  return std::nullopt;
}

TEST(DiagonalValueTest, NoHaltClaimGivesZero) {
  const DiagonalValue v = diagonal_value(Always(false), encode(corpus_machine("flip")), "0", 10);
  EXPECT_EQ(v.value, "0");
  EXPECT_FALSE(v.claims_halt);
  EXPECT_FALSE(v.inner);
}

TEST(DiagonalValueTest, ResultOneGivesZero) {
  const DiagonalValue v = diagonal_value(Always(true), encode(corpus_machine("flip")), "0", 10);
  EXPECT_EQ(v.value, "0");
  EXPECT_TRUE(v.claims_halt);
  EXPECT_FALSE(v.tie_break);
}

TEST(DiagonalValueTest, OtherResultsGiveOne) {
  // flip on "1" yields "0"; anbn rejects "0" in a resultless state.
  EXPECT_EQ(diagonal_value(Always(true), encode(corpus_machine("flip")), "1", 10).value, "1");
  const DiagonalValue resultless =
      diagonal_value(Always(true), encode(corpus_machine("anbn")), "0", 100);
  EXPECT_EQ(resultless.value, "1");
  EXPECT_TRUE(std::holds_alternative<HaltedResultless>(*resultless.inner));
  EXPECT_FALSE(resultless.tie_break);
  // A word other than "1", e.g. "11".
  EXPECT_EQ(diagonal_value(Always(true), encode(corpus_machine("identity")), "11", 10).value,
            "1");
}

TEST(DiagonalValueTest, ExhaustedSimulationTakesTheTieBreak) {
  const DiagonalValue v = diagonal_value(Always(true), encode(corpus_machine("loop")), "", 20);
  EXPECT_EQ(v.value, "1");
  EXPECT_TRUE(v.tie_break);
  EXPECT_EQ(steps_of(*v.inner), 20u);
}

TEST(DiagonalizeTest, IndexSelectsEnumeratedMachine) {
  const std::vector<Description> d = enumerate_machines(40);
  for (std::uint64_t n = 0; n < d.size(); ++n) {
    const std::string u = index_word(n);
    // Hand application of the case split.
    const RunOutcome o = universal_run(d[n], u, 50);
    const std::string expected = ResultWord(o) == std::optional<std::string>("1") ? "0" : "1";
    EXPECT_EQ(diagonalize(Always(true), u, 50), expected) << n;
    EXPECT_EQ(diagonalize(Always(false), u, 50), "0") << n;
  }
}

TEST(DeciderTest, ParseSpecs) {
  const Description flip = encode(corpus_machine("flip"));
  const Description loop = encode(corpus_machine("loop"));
  EXPECT_TRUE(parse_decider("budget:5")(flip, "0"));
  EXPECT_FALSE(parse_decider("budget:5")(loop, ""));
  EXPECT_TRUE(parse_decider("certified:5")(flip, "0"));
  EXPECT_FALSE(parse_decider("certified:5")(loop, ""));
  for (const char* bad : {"", "budget", "budget:", "budget:x", "oracle:5", "budget:0"}) {
    EXPECT_THROW(parse_decider(bad), Error) << bad;
  }
}

TEST(DeciderTest, BudgetDeciderBoundary) {
  // countdown on 1^n halts at step n + 1.
  const Description d = encode(corpus_machine("countdown"));
  EXPECT_TRUE(budget_decider(5)(d, "1111"));
  EXPECT_FALSE(budget_decider(5)(d, "11111"));
}

TEST(AuditTest, ExactDeciderOnFirstFiftyIndices) {
  const std::uint64_t truth = 10000;
  const std::vector<Description> d = enumerate_machines(50);
  // The certified decider is exact here exactly when every index is decided.
  for (std::uint64_t n = 0; n < 50; ++n) {
    ASSERT_FALSE(std::holds_alternative<Unknown>(certify_nonhalting(d[n], index_word(n), truth)))
        << n;
  }
  const AuditReport report = audit_decider(certified_decider(truth), 50, truth, truth);
  ASSERT_EQ(report.rows.size(), 50u);
  EXPECT_EQ(report.contradictions(), 0u);
  std::size_t completed = 0;
  for (const AuditRow& row : report.rows) {
    EXPECT_EQ(row.description, d[row.index]);
    EXPECT_EQ(row.input, index_word(row.index));
    EXPECT_EQ(row.claims_halt, halted(row.observed)) << row.index;
    if (!row.completed) continue;
    ++completed;
    EXPECT_NE(std::optional<std::string>(row.diagonal.value), ResultWord(row.observed))
        << row.index;
  }
  EXPECT_EQ(completed, 50u);
}

TEST(AuditTest, ShortBudgetDeciderIsConvictedOnSlowHalter) {
  std::vector<AuditCase> cases;
  for (const char* name : {"flip", "loop", "bb2", "eraser"}) {
    cases.push_back({encode(corpus_machine(name)), name == std::string("flip") ? "0" : ""});
  }
  cases.push_back({encode(corpus_machine("countdown")), std::string(8, '1')});
  ASSERT_EQ(steps_of(run_bounded(corpus_machine("countdown"), std::string(8, '1'), 100)), 9u);
  const AuditReport report = audit_cases(budget_decider(5), cases, 100, 5);
  ASSERT_EQ(report.rows.size(), 5u);
  EXPECT_TRUE(report.rows[4].contradiction);
  EXPECT_FALSE(report.rows[4].claims_halt);
  EXPECT_FALSE(report.rows[0].contradiction);
  EXPECT_FALSE(report.rows[1].contradiction);
}

TEST(AuditTest, HaltClaimAgainstCertifiedLoopIsConvicted) {
  const AuditReport report =
      audit_cases(Always(true), {{encode(corpus_machine("loop")), ""}}, 100, 10);
  EXPECT_TRUE(report.rows[0].contradiction);
  EXPECT_TRUE(report.rows[0].diagonal.tie_break);
  EXPECT_FALSE(report.rows[0].completed);
}

TEST(AuditTest, EmptyAndInvalidAudits) {
  const AuditReport empty = audit_decider(budget_decider(5), 0, 10, 5);
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_EQ(empty.contradictions(), 0u);
  try {
    audit_decider(budget_decider(5), 3, 5, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInput);
  }
}

TEST(AuditTest, TsvHasHeaderAndOneLinePerRow) {
  const AuditReport report = audit_decider(budget_decider(5), 7, 50, 5);
  const std::string tsv = to_tsv(report);
  std::istringstream in(tsv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 8u);
  EXPECT_EQ(lines[0].rfind("index\t", 0), 0u);
  EXPECT_EQ(lines[1].rfind("0\t\t11\t", 0), 0u);
  EXPECT_EQ(to_tsv(report), tsv);
}

}  // namespace
}  // namespace hypermachine
