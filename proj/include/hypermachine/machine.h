#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypermachine/tape.h"

namespace hypermachine {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = ~StateId{0};
inline constexpr char kBlankChar = '_';
inline constexpr int kMaxTapes = 8;

enum class Move : std::int8_t { kLeft = -1, kStay = 0, kRight = 1 };

char move_char(Move move);
std::optional<Move> parse_move(char c);

// Characters usable as tape symbols: printable, and not reserved by the DSL or
// the trace format.
bool is_symbol_char(char c);

// Ordered tape alphabet. Index 0 is always the blank; the remaining symbols are
// the input symbols in declaration order.
class Alphabet {
 public:
  Alphabet();
  explicit Alphabet(std::string_view input_symbols);

  std::size_t size() const { return symbols_.size(); }
  char symbol(SymbolId id) const { return symbols_[id]; }
  std::optional<SymbolId> find(char c) const;
  std::string_view input_symbols() const {
    return std::string_view(symbols_).substr(1);
  }

  bool operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::string symbols_;
};

using SymbolTuple = std::array<SymbolId, kMaxTapes>;
using MoveTuple = std::array<Move, kMaxTapes>;

// Right-hand side of a rule. Entries past the machine's tape count are unused
// and kept zero.
struct Transition {
  StateId next = kNoState;
  SymbolTuple write{};
  MoveTuple move{};

  bool defined() const { return next != kNoState; }
  bool operator==(const Transition&) const = default;
};

struct Rule {
  StateId state = 0;
  SymbolTuple read{};
  Transition action;

  bool operator==(const Rule&) const = default;
};

// The (alphabet, control, memory) triad of a deterministic k-tape machine.
// Immutable once built; safe to share across threads.
class Machine {
 public:
  const std::string& name() const { return name_; }
  int tape_count() const { return tape_count_; }
  const Alphabet& alphabet() const { return alphabet_; }

  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(StateId id) const { return states_[id]; }
  std::optional<StateId> find_state(std::string_view name) const;

  StateId start() const { return start_; }
  bool is_final(StateId id) const { return final_kind_[id] != 0; }
  bool is_result_bearing(StateId id) const { return final_kind_[id] == 2; }
  // Final states with their result-bearing flag.
  std::map<StateId, bool> finals() const;

  // Rules in declaration order.
  std::span<const Rule> rules() const { return rules_; }

  // Dense transition table indexed by rule_key().
  std::span<const Transition> table() const { return table_; }
  std::size_t rule_key(StateId state, const SymbolTuple& read) const {
    std::size_t key = state * stride_;
    for (int t = 0, scale = 1; t < tape_count_;
         ++t, scale *= static_cast<int>(alphabet_.size())) {
      key += static_cast<std::size_t>(read[t]) * scale;
    }
    return key;
  }
  const Transition* find_rule(StateId state, const SymbolTuple& read) const {
    const Transition& t = table_[rule_key(state, read)];
    return t.defined() ? &t : nullptr;
  }

  // Tape holding the result word: the output tape of a three-tape machine,
  // tape 0 otherwise.
  int result_tape() const { return tape_count_ >= 3 ? 2 : 0; }

  bool operator==(const Machine& other) const;

 private:
  friend class MachineBuilder;
  Machine() = default;

  std::string name_;
  int tape_count_ = 1;
  Alphabet alphabet_;
  std::vector<std::string> states_;
  StateId start_ = 0;
  std::vector<std::uint8_t> final_kind_;  // 0 not final, 1 resultless, 2 result
  std::vector<Rule> rules_;
  std::vector<Transition> table_;
  std::size_t stride_ = 0;
};

// Collects a machine description by name and validates it in build().
// States are declared implicitly on first mention unless declared up front
// with state(). Multi-tape symbol and move tuples are strings with one
// character per tape, e.g. read "0_1", moves "RSL".
class MachineBuilder {
 public:
  explicit MachineBuilder(std::string name, int tape_count = 1);

  MachineBuilder& alphabet(std::string_view input_symbols);
  MachineBuilder& state(std::string_view name);
  MachineBuilder& start(std::string_view name);
  MachineBuilder& final_state(std::string_view name, bool result_bearing);
  MachineBuilder& rule(std::string_view state, std::string_view read,
                       std::string_view next, std::string_view write,
                       std::string_view moves);

  // Throws Error(kStructural) on any violated machine invariant.
  Machine build() const;

 private:
  struct PendingRule {
    std::string state, read, next, write, moves;
  };

  std::string name_;
  int tape_count_;
  std::optional<std::string> alphabet_;
  std::vector<std::string> states_;
  std::optional<std::string> start_;
  std::vector<std::pair<std::string, bool>> finals_;
  std::vector<PendingRule> rules_;
};

// Renders a symbol tuple of the given arity as characters, e.g. "0_1".
std::string tuple_string(const Alphabet& alphabet, const SymbolTuple& symbols,
                         int arity);
std::string moves_string(const MoveTuple& moves, int arity);

}  // namespace hypermachine
