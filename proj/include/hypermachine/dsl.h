#pragma once

// Line-oriented machine description language.
//
//   machine flip
//   tapes: 1                  # optional, default 1
//   alphabet: 0 1             # blank '_' is implicit
//   states: q0 qf             # optional; fixes the state order
//   start: q0
//   final: qf*                # '*' marks a result-bearing final state
//   rule q0 0 -> qf 1 S
//   rule q0 1 -> qf 0 S ! replace(q0,0 -> qf,0,S)
//
// Multi-tape rules list one symbol per tape and one move per tape, separated
// by spaces. A rule may carry one edit clause, install(...) or replace(...),
// which makes the document a reflexive machine.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypermachine/engine.h"
#include "hypermachine/machine.h"
#include "hypermachine/reflexive.h"

namespace hypermachine {

struct SourcePosition {
  int line = 0;
  int column = 0;
};

struct SpecDocument {
  std::string source;
  Machine machine;
  std::optional<ReflexiveMachine> reflexive;  // set when edit clauses appear
  SourcePosition name_position;
  SourcePosition start_position;
  std::vector<SourcePosition> rule_positions;  // parallel to machine.rules()
};

// Throws ParseError with the line and column of the first problem.
SpecDocument parse_machine_spec(std::string_view text);

std::string unparse(const Machine& machine);
std::string unparse(const ReflexiveMachine& rm);

// One trace line for a configuration:
//   step=<n>\tstate=<q>\thead=<i>\ttape=<w>[\thead2=<i>\ttape2=<w>...][\tout=<w>]
// The tape window runs from the leftmost non-blank cell or the head, whichever
// is further left, to the rightmost non-blank cell or the head, whichever is
// further right; '^' precedes the scanned cell.
std::string trace_record(const Machine& machine, const Configuration& config,
                         const std::string* output = nullptr);
std::string tape_window(const Alphabet& alphabet, const Tape& tape, std::int64_t head);

// Newline-terminated records, one per configuration.
std::string emit_trace(const Machine& machine, const std::vector<Configuration>& stream);

}  // namespace hypermachine
