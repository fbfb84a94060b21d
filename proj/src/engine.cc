#include "hypermachine/engine.h"

#include <algorithm>
#include <set>

#include "hypermachine/error.h"

namespace hypermachine {

bool same_instant(const Configuration& a, const Configuration& b) {
  return a.state == b.state && a.heads == b.heads && a.tapes == b.tapes;
}

Configuration initial_configuration(const Machine& machine, std::string_view input) {
  Configuration c;
  c.state = machine.start();
  c.tapes.resize(static_cast<std::size_t>(machine.tape_count()));
  c.heads.assign(static_cast<std::size_t>(machine.tape_count()), 0);
  for (std::size_t i = 0; i < input.size(); ++i) {
    auto id = machine.alphabet().find(input[i]);
    if (!id || *id == kBlank) {
      throw Error(ErrorKind::kInput, std::string("input symbol '") + input[i] +
                                         "' is not in the input alphabet of " +
                                         machine.name());
    }
    c.tapes[0].write(static_cast<std::int64_t>(i), *id);
  }
  return c;
}

void validate_configuration(const Machine& machine, const Configuration& config) {
  const auto k = static_cast<std::size_t>(machine.tape_count());
  if (config.tapes.size() != k || config.heads.size() != k) {
    throw Error(ErrorKind::kStructural,
                "configuration has " + std::to_string(config.heads.size()) +
                    " heads on " + std::to_string(config.tapes.size()) +
                    " tapes; machine " + machine.name() + " has " +
                    std::to_string(k) + " tapes");
  }
  if (config.state >= machine.state_count()) {
    throw Error(ErrorKind::kStructural, "configuration state out of range");
  }
  for (std::size_t t = 0; t < k; ++t) {
    const Tape& tape = config.tapes[t];
    for (auto pos = tape.stored_begin(); pos < tape.stored_end(); ++pos) {
      if (tape.read(pos) >= machine.alphabet().size()) {
        throw Error(ErrorKind::kStructural, "tape symbol outside the alphabet");
      }
    }
  }
}

StepResult step(const Machine& machine, const Configuration& config) {
  validate_configuration(machine, config);
  if (machine.is_final(config.state)) return AtFinal{};
  const Transition* t = machine.find_rule(config.state, config.scanned());
  if (t == nullptr) return NoRule{};
  NextConfig next{config};
  detail::apply(*t, next.config, machine.tape_count());
  return next;
}

std::uint64_t steps_of(const RunOutcome& outcome) {
  return std::visit([](const auto& o) { return o.steps; }, outcome);
}

bool halted(const RunOutcome& outcome) {
  return !std::holds_alternative<BudgetExhausted>(outcome);
}

bool same_observation(const RunOutcome& a, const RunOutcome& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ha = std::get_if<HaltedWithResult>(&a)) {
    return ha->result == std::get<HaltedWithResult>(b).result;
  }
  return true;
}

bool same_outcome(const RunOutcome& a, const RunOutcome& b) {
  return same_observation(a, b) && steps_of(a) == steps_of(b);
}

std::string describe(const RunOutcome& outcome) {
  if (const auto* h = std::get_if<HaltedWithResult>(&outcome)) {
    return "halted result=" + h->result + " steps=" + std::to_string(h->steps);
  }
  if (const auto* r = std::get_if<HaltedResultless>(&outcome)) {
    return "resultless steps=" + std::to_string(r->steps);
  }
  return "budget-exhausted steps=" + std::to_string(steps_of(outcome));
}

std::string tape_word(const Alphabet& alphabet, const Tape& tape) {
  std::string out;
  auto span = tape.extent();
  if (!span) return out;
  out.reserve(static_cast<std::size_t>(span->second - span->first + 1));
  for (auto pos = span->first; pos <= span->second; ++pos) {
    out.push_back(alphabet.symbol(tape.read(pos)));
  }
  return out;
}

std::string result_word(const Machine& machine, const Configuration& config) {
  return tape_word(machine.alphabet(),
                   config.tapes[static_cast<std::size_t>(machine.result_tape())]);
}

namespace detail {

RunOutcome halt_outcome(const Machine& machine, const Configuration& config) {
  if (machine.is_result_bearing(config.state)) {
    return HaltedWithResult{result_word(machine, config), config.step};
  }
  return HaltedResultless{config.step};
}

}  // namespace detail

RunOutcome run_bounded(const Machine& machine, std::string_view input,
                       std::uint64_t budget) {
  return run_observed(machine, input, budget, nullptr);
}

RunOutcome run_observed(const Machine& machine, std::string_view input,
                        std::uint64_t budget,
                        const std::function<void(const Configuration&)>& on_config) {
  if (budget == 0) throw Error(ErrorKind::kInput, "step budget must be at least 1");
  Configuration start = initial_configuration(machine, input);
  auto no_step = [](std::size_t, const Configuration&) {};
  if (on_config) {
    return run_table(machine, machine.table(), std::move(start), budget, on_config,
                     no_step);
  }
  return run_table(machine, machine.table(), std::move(start), budget,
                   [](const Configuration&) {}, no_step);
}

std::vector<std::string> words_up_to(std::string_view symbols, std::size_t max_length) {
  std::vector<std::string> out{""};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_length && !symbols.empty(); ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (char c : symbols) out.push_back(out[i] + c);
    }
    level_begin = level_end;
  }
  return out;
}

EquivalenceVerdict observational_equiv(std::string_view input_symbols,
                                       const Runner& first, const Runner& second,
                                       std::size_t max_input_length,
                                       std::uint64_t budget) {
  for (const std::string& word : words_up_to(input_symbols, max_input_length)) {
    RunOutcome a = first(word);
    RunOutcome b = second(word);
    if (!same_observation(a, b)) return Counterexample{word, std::move(a), std::move(b)};
  }
  return EquivalentUpTo{max_input_length, budget};
}

EquivalenceVerdict observational_equiv(const Machine& first, const Machine& second,
                                       std::size_t max_input_length,
                                       std::uint64_t budget) {
  const std::string_view a = first.alphabet().input_symbols();
  const std::string_view b = second.alphabet().input_symbols();
  if (std::set<char>(a.begin(), a.end()) != std::set<char>(b.begin(), b.end())) {
    throw Error(ErrorKind::kInput, "machines " + first.name() + " and " +
                                       second.name() + " have different input alphabets");
  }
  return observational_equiv(
      a, [&](std::string_view w) { return run_bounded(first, w, budget); },
      [&](std::string_view w) { return run_bounded(second, w, budget); },
      max_input_length, budget);
}

}  // namespace hypermachine
