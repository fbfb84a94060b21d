#pragma once

// Limit-computable functions: f(x) is the eventual value of a total guess
// sequence g(x, 0), g(x, 1), ...

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypermachine/codec.h"

namespace hypermachine {

struct LimitFunction {
  std::string name;
  std::function<std::string(std::uint64_t x, std::uint64_t stage)> guess;
  std::string tag;  // descriptive hierarchy label such as "Σ1"; never checked
};

struct StageGuess {
  std::uint64_t stage = 0;
  std::string guess;

  bool operator==(const StageGuess&) const = default;
};

struct LimitReport {
  std::uint64_t x = 0;
  std::uint64_t stages_evaluated = 0;
  std::vector<StageGuess> guesses_log;  // change points, starting at stage 0
  std::string final_guess;
  std::uint64_t changes = 0;
  // The guess did not change over the last `window` stage transitions. An
  // observation about this budget, not a claim about the limit.
  bool converged_within_budget = false;
};

// Evaluates stages 0..stage_budget. Throws Error(kInput) unless
// stage_budget >= window >= 1, and Error(kEvaluation) naming (x, t) when a
// guess throws.
LimitReport limit_eval(const LimitFunction& f, std::uint64_t x,
                       std::uint64_t stage_budget, std::uint64_t window);

// Guess at stage t: "1" once the described machine has halted on `input`
// within t steps, "0" before. Throws InvalidEncoding.
LimitFunction halting_as_limit(const Description& description, std::string input);
// The pointwise complement of halting_as_limit.
LimitFunction divergence_as_limit(const Description& description, std::string input);

LimitFunction constant_limit(std::string value);
// Guess t mod 2, as a word.
LimitFunction oscillator_limit();

// Built-in functions addressable by name: "constant", "oscillator", and
// "halting"/"divergence", where x selects the x-th enumerated machine run on
// index_word(x).
std::optional<LimitFunction> builtin_limit(std::string_view name);
std::vector<std::string> builtin_limit_names();

}  // namespace hypermachine
