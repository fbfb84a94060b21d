#pragma once

// Deterministic finite automata over {0, 1} and an exhaustive search for a
// small automaton that agrees with a labeled sample.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hypermachine {

class Dfa {
 public:
  // delta[s] = {successor on '0', successor on '1'}. Throws Error(kStructural)
  // on an out-of-range start or successor, or a size mismatch.
  Dfa(std::vector<std::array<std::uint32_t, 2>> delta, std::uint32_t start,
      std::vector<bool> accepting);

  std::uint32_t state_count() const { return static_cast<std::uint32_t>(delta_.size()); }
  std::uint32_t start() const { return start_; }
  bool accepting(std::uint32_t state) const { return accepting_[state]; }
  std::uint32_t next(std::uint32_t state, int bit) const { return delta_[state][bit]; }

  // e.g. "states=2 start=0 accept=0 delta=0:0,1;1:1,0"
  std::string to_string() const;

  bool operator==(const Dfa&) const = default;

 private:
  std::vector<std::array<std::uint32_t, 2>> delta_;
  std::uint32_t start_;
  std::vector<bool> accepting_;
};

// Throws Error(kInput) for a symbol other than '0' or '1'.
bool dfa_run(const Dfa& dfa, std::string_view word);

struct DfaEquivalent {};
struct DfaCounterexample {
  std::string word;
};
using DfaVerdict = std::variant<DfaEquivalent, DfaCounterexample>;

// Exact decision by breadth-first search of the product automaton. The
// counterexample is a shortest distinguishing word, lexicographically least
// among those.
DfaVerdict dfa_equiv(const Dfa& a, const Dfa& b);

using LabeledSample = std::vector<std::pair<std::string, bool>>;

struct NoDfaMatches {};
struct DfaFound {
  Dfa dfa;
};

struct SeparationReport {
  LabeledSample sample;
  std::uint32_t max_states = 0;
  std::uint64_t dfas_searched = 0;
  std::variant<NoDfaMatches, DfaFound> witness;
};

inline constexpr std::uint64_t kDefaultSafetyCap = 10'000'000;

// Size of the raw automaton space with up to max_states states:
// sum over n of n^(2n) * 2^n. Saturates at UINT64_MAX.
std::uint64_t dfa_space_estimate(std::uint32_t max_states);

// Cap from HYPERMACHINE_SAFETY_CAP, else kDefaultSafetyCap.
std::uint64_t safety_cap();

// Scans automata with 1..max_states states whose states are all reachable
// and numbered in breadth-first order from start state 0; every automaton is
// equivalent to exactly one such form with no more states. Order: state count,
// then transition table, then accepting set as a bit mask. Throws
// Error(kRefused) when dfa_space_estimate exceeds the safety cap, and
// Error(kInput) for max_states 0.
SeparationReport separation_search(const LabeledSample& sample, std::uint32_t max_states);

// All words up to max_length labeled by membership.
LabeledSample anbn_sample(std::size_t max_length);        // 0^n 1^n, n >= 0
LabeledSample parity_sample(std::size_t max_length);      // even number of 1s
LabeledSample palindrome_sample(std::size_t max_length);  // reads the same reversed

// "anbn", "parity", "palindrome"; throws Error(kInput) otherwise.
LabeledSample named_sample(std::string_view name, std::size_t max_length);

}  // namespace hypermachine
