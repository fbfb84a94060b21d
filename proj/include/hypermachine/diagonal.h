#pragma once

// The diagonal machine built from a candidate halting decider, and an audit
// that convicts deciders on the indices where they are wrong.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypermachine/codec.h"
#include "hypermachine/engine.h"

namespace hypermachine {

// Claims whether the described machine halts on the word. Must be safe to
// call from several threads.
using CandidateDecider = std::function<bool(const Description&, std::string_view)>;

// Claims "halts" iff the run halts within `budget` steps.
CandidateDecider budget_decider(std::uint64_t budget);
// Claims "halts" iff certify_nonhalting within `budget` steps reports a halt;
// Unknown counts as a no-halt claim.
CandidateDecider certified_decider(std::uint64_t budget);

// Parses "budget:<B>" or "certified:<B>". Throws Error(kInput) otherwise.
CandidateDecider parse_decider(std::string_view spec);

struct DiagonalValue {
  std::string value;  // "0" or "1"
  bool claims_halt = false;
  // The inner simulation ran (claims_halt) and did not halt within budget;
  // the value "1" then comes from the tie-break.
  bool tie_break = false;
  std::optional<RunOutcome> inner;  // set when claims_halt
};

// Diagonal value for an explicit machine and input.
DiagonalValue diagonal_value(const CandidateDecider& decider,
                             const Description& description, std::string_view input,
                             std::uint64_t budget);

// n = word_index(input), T_n = the n-th enumerated machine.
std::string diagonalize(const CandidateDecider& decider, std::string_view input,
                        std::uint64_t budget);

struct AuditRow {
  std::uint64_t index = 0;
  std::string input;
  Description description;
  bool claims_halt = false;
  RunOutcome observed;  // run at truth_budget
  DiagonalValue diagonal;
  // All inner runs finished: the claim was no-halt, or the simulation halted.
  bool completed = false;
  bool contradiction = false;
};

struct AuditReport {
  std::uint64_t truth_budget = 0;
  std::uint64_t sim_budget = 0;
  std::vector<AuditRow> rows;

  std::size_t contradictions() const;
};

struct AuditCase {
  Description description;
  std::string input;
};

// Rows for the first `machine_count` enumerated machines, T_n run on
// index_word(n). A row is a contradiction when the diagonal value equals
// T_n's observed result word, when the decider claims no-halt but T_n halts
// within truth_budget, or when it claims halt but a non-halting certificate
// exists within truth_budget. Throws Error(kInput) if truth_budget <
// sim_budget.
AuditReport audit_decider(const CandidateDecider& decider, std::uint64_t machine_count,
                          std::uint64_t truth_budget, std::uint64_t sim_budget);

// Same checks over explicit (machine, input) cases; row indices are positions
// in `cases`.
AuditReport audit_cases(const CandidateDecider& decider,
                        const std::vector<AuditCase>& cases, std::uint64_t truth_budget,
                        std::uint64_t sim_budget);

// Tab-separated, one header line.
std::string to_tsv(const AuditReport& report);

}  // namespace hypermachine
