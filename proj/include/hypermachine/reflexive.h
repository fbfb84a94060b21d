#pragma once

// Machines that rewrite their own rule table while running. Each edit is
// attached to a rule and applied right after that rule's write, move, and
// state change.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypermachine/engine.h"
#include "hypermachine/machine.h"

namespace hypermachine {

// Adds a rule for a (state, symbols) pair that has none in the base machine.
struct InstallRule {
  StateId state = 0;
  SymbolTuple read{};
  Transition action;

  bool operator==(const InstallRule&) const = default;
};

// Overwrites the right-hand side of an existing base rule.
struct ReplaceRule {
  StateId state = 0;
  SymbolTuple read{};
  Transition action;

  bool operator==(const ReplaceRule&) const = default;
};

using EditAction = std::variant<InstallRule, ReplaceRule>;

struct AttachedEdit {
  StateId state = 0;  // the rule that triggers the edit
  SymbolTuple read{};
  EditAction action;
};

struct EditLogEntry {
  std::uint64_t step = 0;  // step count right after the triggering transition
  EditAction action;
};
using EditLog = std::vector<EditLogEntry>;

class ReflexiveMachine {
 public:
  // Throws Error(kStructural) when an edit hangs off a missing rule, installs
  // over an existing rule or into a final state, replaces a missing rule, or
  // installs into a pair another edit also targets. Any edit sequence is then
  // deterministic by construction.
  ReflexiveMachine(Machine base, std::vector<AttachedEdit> edits);

  const Machine& base() const { return base_; }
  const std::vector<AttachedEdit>& edits() const { return edits_; }
  // Edit attached to the rule with this table key, if any.
  const EditAction* edit_for(std::size_t rule_key) const;

 private:
  Machine base_;
  std::vector<AttachedEdit> edits_;
  std::map<std::size_t, std::size_t> by_key_;  // rule key -> index into edits_
};

struct ReflexiveRun {
  RunOutcome outcome;
  EditLog log;
};

// Each run edits a private copy of the rule table.
ReflexiveRun reflexive_run(const ReflexiveMachine& rm, std::string_view input,
                           std::uint64_t budget,
                           const std::function<void(const Configuration&)>& on_config = {});

struct EfficiencyRow {
  std::string input;
  std::uint64_t static_steps = 0;
  std::uint64_t reflexive_steps = 0;
  bool same_result = false;  // same result word, or both without one
};

std::vector<EfficiencyRow> compare_efficiency(const Machine& static_machine,
                                              const ReflexiveMachine& rm,
                                              const std::vector<std::string>& inputs,
                                              std::uint64_t budget);

std::string describe(const Machine& machine, const EditAction& action);

}  // namespace hypermachine
