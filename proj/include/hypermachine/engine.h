#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypermachine/machine.h"
#include "hypermachine/tape.h"

namespace hypermachine {

// Instantaneous description of a run. Head coordinates are absolute, with the
// first input cell at 0; heads move over a fixed tape.
struct Configuration {
  StateId state = 0;
  std::vector<Tape> tapes;
  std::vector<std::int64_t> heads;
  std::uint64_t step = 0;

  SymbolTuple scanned() const {
    SymbolTuple out{};
    for (std::size_t t = 0; t < tapes.size(); ++t) out[t] = tapes[t].read(heads[t]);
    return out;
  }

  bool operator==(const Configuration&) const = default;
};

// Equal as machine instants: same state, heads, and tape contents. The step
// counter is ignored.
bool same_instant(const Configuration& a, const Configuration& b);

// Input goes on tape 0 starting at cell 0. Throws Error(kInput) when the word
// uses a symbol outside the machine's input alphabet.
Configuration initial_configuration(const Machine& machine, std::string_view input);

// Throws Error(kStructural) when the configuration does not fit the machine.
void validate_configuration(const Machine& machine, const Configuration& config);

struct NextConfig {
  Configuration config;
};
struct NoRule {};
struct AtFinal {};
using StepResult = std::variant<NextConfig, NoRule, AtFinal>;

StepResult step(const Machine& machine, const Configuration& config);

struct HaltedWithResult {
  std::string result;
  std::uint64_t steps = 0;
};
struct HaltedResultless {
  std::uint64_t steps = 0;
};
struct BudgetExhausted {
  std::uint64_t steps = 0;
  Configuration final_config;
};
using RunOutcome = std::variant<HaltedWithResult, HaltedResultless, BudgetExhausted>;

std::uint64_t steps_of(const RunOutcome& outcome);
bool halted(const RunOutcome& outcome);
// Same variant and same result word; step counts ignored.
bool same_observation(const RunOutcome& a, const RunOutcome& b);
// Same variant, result word and step count.
bool same_outcome(const RunOutcome& a, const RunOutcome& b);
std::string describe(const RunOutcome& outcome);

// Trimmed non-blank content of a tape; an all-blank tape gives "".
std::string tape_word(const Alphabet& alphabet, const Tape& tape);
std::string result_word(const Machine& machine, const Configuration& config);

namespace detail {

// Applies one transition in place: write, move, change state.
inline void apply(const Transition& t, Configuration& c, int tape_count) {
  for (int i = 0; i < tape_count; ++i) {
    c.tapes[i].write(c.heads[i], t.write[i]);
    c.heads[i] += static_cast<int>(t.move[i]);
  }
  c.state = t.next;
  ++c.step;
}

RunOutcome halt_outcome(const Machine& machine, const Configuration& config);

}  // namespace detail

// Runs at most `budget` steps over an explicit transition table (the
// machine's own, or a live copy that a reflexive run edits). `on_config` sees
// every configuration visited, starting with step 0. `after_step` runs after
// each applied transition with the key of the rule that fired.
template <class OnConfig, class AfterStep>
RunOutcome run_table(const Machine& machine, std::span<const Transition> table,
                     Configuration config, std::uint64_t budget,
                     OnConfig&& on_config, AfterStep&& after_step) {
  const int k = machine.tape_count();
  for (;;) {
    on_config(static_cast<const Configuration&>(config));
    if (machine.is_final(config.state)) return detail::halt_outcome(machine, config);
    const std::size_t key = machine.rule_key(config.state, config.scanned());
    const Transition& t = table[key];
    if (!t.defined()) return HaltedResultless{config.step};
    if (config.step >= budget) {
      const std::uint64_t steps = config.step;
      return BudgetExhausted{steps, std::move(config)};
    }
    detail::apply(t, config, k);
    after_step(key, static_cast<const Configuration&>(config));
  }
}

// Throws Error(kInput) for budget 0 or a bad input word.
RunOutcome run_bounded(const Machine& machine, std::string_view input,
                       std::uint64_t budget);

RunOutcome run_observed(const Machine& machine, std::string_view input,
                        std::uint64_t budget,
                        const std::function<void(const Configuration&)>& on_config);

struct EquivalentUpTo {
  std::size_t max_input_length = 0;
  std::uint64_t budget = 0;
};
struct Counterexample {
  std::string word;
  RunOutcome first;
  RunOutcome second;
};
using EquivalenceVerdict = std::variant<EquivalentUpTo, Counterexample>;

// All words over `symbols` of length <= max_length in length-lexicographic
// order, with the symbol order as given.
std::vector<std::string> words_up_to(std::string_view symbols, std::size_t max_length);

using Runner = std::function<RunOutcome(std::string_view input)>;

// Compares two runners on every word up to max_input_length; the first
// disagreement in length-lex order is the counterexample.
EquivalenceVerdict observational_equiv(std::string_view input_symbols,
                                       const Runner& first, const Runner& second,
                                       std::size_t max_input_length,
                                       std::uint64_t budget);

// Throws Error(kInput) when the input alphabets differ as sets.
EquivalenceVerdict observational_equiv(const Machine& first, const Machine& second,
                                       std::size_t max_input_length,
                                       std::uint64_t budget);

}  // namespace hypermachine
