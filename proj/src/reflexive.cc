#include "hypermachine/reflexive.h"

#include <set>
#include <tuple>
#include <type_traits>

#include "hypermachine/error.h"

namespace hypermachine {

namespace {

[[noreturn]] void structural(const std::string& message) {
  throw Error(ErrorKind::kStructural, message);
}

std::string pair_string(const Machine& m, StateId state, const SymbolTuple& read) {
  return "(" + m.state_name(state) + ", " + tuple_string(m.alphabet(), read, m.tape_count()) +
         ")";
}

std::optional<std::string> result_of(const RunOutcome& outcome) {
  if (const auto* h = std::get_if<HaltedWithResult>(&outcome)) return h->result;
  return std::nullopt;
}

}  // namespace

ReflexiveMachine::ReflexiveMachine(Machine base, std::vector<AttachedEdit> edits)
    : base_(std::move(base)), edits_(std::move(edits)) {
  const int k = base_.tape_count();
  auto check_tuple = [&](const SymbolTuple& symbols) {
    for (int t = 0; t < kMaxTapes; ++t) {
      if (t >= k ? symbols[t] != 0 : symbols[t] >= base_.alphabet().size()) {
        structural("edit references a symbol outside the alphabet of " + base_.name());
      }
    }
  };
  std::set<std::size_t> install_targets;
  for (std::size_t i = 0; i < edits_.size(); ++i) {
    const AttachedEdit& e = edits_[i];
    if (e.state >= base_.state_count()) structural("edit attached to an undeclared state");
    check_tuple(e.read);
    const std::size_t key = base_.rule_key(e.state, e.read);
    if (base_.find_rule(e.state, e.read) == nullptr) {
      structural("edit attached to missing rule " + pair_string(base_, e.state, e.read));
    }
    if (!by_key_.emplace(key, i).second) {
      structural("two edits attached to rule " + pair_string(base_, e.state, e.read));
    }

    const bool install = std::holds_alternative<InstallRule>(e.action);
    const auto [state, read, action] = std::visit(
        [](const auto& a) { return std::tuple(a.state, a.read, a.action); }, e.action);
    if (state >= base_.state_count() || action.next >= base_.state_count()) {
      structural("edit references an undeclared state");
    }
    check_tuple(read);
    check_tuple(action.write);
    const std::string target = pair_string(base_, state, read);
    if (base_.is_final(state)) structural("edit adds a rule to final state in " + target);
    const bool exists = base_.find_rule(state, read) != nullptr;
    if (install) {
      if (exists) structural("install over existing rule " + target);
      if (!install_targets.insert(base_.rule_key(state, read)).second) {
        structural("two installs target " + target);
      }
    } else if (!exists) {
      structural("replace of missing rule " + target);
    }
  }
}

const EditAction* ReflexiveMachine::edit_for(std::size_t rule_key) const {
  auto it = by_key_.find(rule_key);
  return it == by_key_.end() ? nullptr : &edits_[it->second].action;
}

ReflexiveRun reflexive_run(const ReflexiveMachine& rm, std::string_view input,
                           std::uint64_t budget,
                           const std::function<void(const Configuration&)>& on_config) {
  if (budget == 0) throw Error(ErrorKind::kInput, "step budget must be at least 1");
  const Machine& m = rm.base();
  std::vector<Transition> table(m.table().begin(), m.table().end());
  ReflexiveRun run;
  auto observe = [&](const Configuration& c) {
    if (on_config) on_config(c);
  };
  auto after_step = [&](std::size_t key, const Configuration& c) {
    const EditAction* edit = rm.edit_for(key);
    if (edit == nullptr) return;
    std::visit([&](const auto& a) { table[m.rule_key(a.state, a.read)] = a.action; }, *edit);
    run.log.push_back({c.step, *edit});
  };
  run.outcome = run_table(m, table, initial_configuration(m, input), budget, observe,
                          after_step);
  return run;
}

std::vector<EfficiencyRow> compare_efficiency(const Machine& static_machine,
                                              const ReflexiveMachine& rm,
                                              const std::vector<std::string>& inputs,
                                              std::uint64_t budget) {
  std::vector<EfficiencyRow> rows;
  for (const std::string& input : inputs) {
    const RunOutcome a = run_bounded(static_machine, input, budget);
    const RunOutcome b = reflexive_run(rm, input, budget).outcome;
    rows.push_back({input, steps_of(a), steps_of(b), result_of(a) == result_of(b)});
  }
  return rows;
}

std::string describe(const Machine& machine, const EditAction& action) {
  return std::visit(
      [&](const auto& a) {
        const int k = machine.tape_count();
        const char* verb = std::is_same_v<std::decay_t<decltype(a)>, InstallRule>
                               ? "install"
                               : "replace";
        return std::string(verb) + "(" + machine.state_name(a.state) + "," +
               tuple_string(machine.alphabet(), a.read, k) + " -> " +
               machine.state_name(a.action.next) + "," +
               tuple_string(machine.alphabet(), a.action.write, k) + "," +
               moves_string(a.action.move, k) + ")";
      },
      action);
}

}  // namespace hypermachine
