#pragma once

// Binary descriptions of single-tape machines over {0, 1, blank}.
//
// Layout, with every number written in unary as a run of zeros:
//
//   0^f 11  (0^s 1 0^flag 11) x f  rule (11 rule)*
//   rule = 0^state 1 0^read 1 0^next 1 0^write 1 0^move
//
// States are numbered from 1 with the start state as 1; symbol codes are
// blank=1, '0'=2, '1'=3; moves L=1, R=2, S=3; the final flag is 1 for a
// resultless and 2 for a result-bearing final state. Finals are listed in
// increasing state order and rules in increasing (state, read) order.
//
// A description is valid only in canonical form: states are numbered in
// breadth-first order of first use from the start state (rules visited in
// symbol-code order), followed by the unreachable states in increasing order,
// with no unused numbers. Canonical form makes encode() constant on machines
// that differ only by state names, and encode(decode(d)) == d.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypermachine/engine.h"
#include "hypermachine/machine.h"

namespace hypermachine {

struct Description {
  std::string bits;

  bool operator==(const Description&) const = default;
};

// Throws Error(kInput) when text contains anything but '0' and '1'.
Description description_from_text(std::string_view text);

// Throws Error(kUnsupportedClass) unless the machine is single-tape with
// input symbols drawn from {0, 1}.
Description encode(const Machine& machine);

// Throws InvalidEncoding with the position of the first violation.
Machine decode(const Description& description);

bool is_valid(const Description& description);

// Length-lexicographic numbering of {0,1}*: "" -> 0, "0" -> 1, "1" -> 2,
// "00" -> 3, ... Words longer than 63 bits are rejected with Error(kInput).
std::uint64_t word_index(std::string_view word);
std::string index_word(std::uint64_t index);

// Valid descriptions in length-lexicographic order of their bit strings.
// Bit strings of each length are scanned depth-first, skipping prefixes that
// cannot be completed to a well-formed string of that length; every survivor
// goes through the decoder.
class MachineEnumerator {
 public:
  MachineEnumerator();

  // The next valid description; index() is its position in the sequence.
  Description next();
  std::uint64_t index() const { return emitted_ - 1; }

 private:
  void fill_length(std::size_t length);

  std::vector<std::string> pending_;  // valid strings of current_length_
  std::size_t pending_pos_ = 0;
  std::size_t current_length_ = 0;
  std::uint64_t emitted_ = 0;
};

std::vector<Description> enumerate_machines(std::size_t count);

// Position of `description` in the enumeration, scanning at most `limit`
// entries.
std::optional<std::uint64_t> locate(const Description& description,
                                    std::uint64_t limit);

// Step-by-step interpreter working directly from a description's rule list.
class UniversalSimulator {
 public:
  // Throws InvalidEncoding, or Error(kInput) for input outside {0,1}.
  UniversalSimulator(const Description& description, std::string_view input);

  // Final state reached or no rule for the scanned symbol.
  bool halted() const;
  // Applies one rule; returns false without moving when already halted.
  bool step();

  const Configuration& configuration() const { return config_; }
  std::uint64_t steps() const { return config_.step; }
  std::size_t state_count() const { return final_kind_.size(); }
  bool is_final(StateId state) const { return final_kind_[state] != 0; }

  // Transition for (state, scanned symbol); symbol ids follow the decoded
  // machine's alphabet (blank, '0', '1').
  const Transition* find_rule(StateId state, SymbolId symbol) const {
    const Transition& t = table_[state * 3 + symbol];
    return t.defined() ? &t : nullptr;
  }

  // Valid once halted().
  RunOutcome outcome() const;

 private:
  std::vector<std::uint8_t> final_kind_;  // 0 not final, 1 resultless, 2 result
  std::vector<Transition> table_;
  Configuration config_;
};

RunOutcome universal_run(const Description& description, std::string_view input,
                         std::uint64_t budget);

}  // namespace hypermachine
