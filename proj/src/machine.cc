#include "hypermachine/machine.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "hypermachine/error.h"

namespace hypermachine {

namespace {

// Keeps the dense rule table addressable on a desk machine.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

[[noreturn]] void structural(const std::string& message) {
  throw Error(ErrorKind::kStructural, message);
}

void add_unique(std::vector<std::string>& states, std::string_view name) {
  if (std::find(states.begin(), states.end(), name) == states.end()) {
    states.emplace_back(name);
  }
}

}  // namespace

char move_char(Move move) {
  switch (move) {
    case Move::kLeft: return 'L';
    case Move::kRight: return 'R';
    case Move::kStay: return 'S';
  }
  return '?';
}

std::optional<Move> parse_move(char c) {
  switch (c) {
    case 'L': return Move::kLeft;
    case 'R': return Move::kRight;
    case 'S': return Move::kStay;
    default: return std::nullopt;
  }
}

bool is_symbol_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (!std::isgraph(u)) return false;
  switch (c) {
    case '#': case ',': case '(': case ')': case '!': case '^': case '*':
    case ':': case '=':
      return false;
    default:
      return true;
  }
}

Alphabet::Alphabet() : symbols_(1, kBlankChar) {}

Alphabet::Alphabet(std::string_view input_symbols) : Alphabet() {
  for (char c : input_symbols) {
    if (c == kBlankChar) structural("the blank '_' is implicit in every alphabet");
    if (!is_symbol_char(c)) {
      structural(std::string("invalid tape symbol '") + c + "'");
    }
    if (symbols_.find(c) != std::string::npos) {
      structural(std::string("duplicate tape symbol '") + c + "'");
    }
    symbols_.push_back(c);
  }
  if (symbols_.size() > 64) structural("alphabet larger than 63 input symbols");
}

std::optional<SymbolId> Alphabet::find(char c) const {
  const auto pos = symbols_.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<SymbolId>(pos);
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::map<StateId, bool> Machine::finals() const {
  std::map<StateId, bool> out;
  for (StateId s = 0; s < final_kind_.size(); ++s) {
    if (final_kind_[s] != 0) out.emplace(s, final_kind_[s] == 2);
  }
  return out;
}

bool Machine::operator==(const Machine& other) const {
  return name_ == other.name_ && tape_count_ == other.tape_count_ &&
         alphabet_ == other.alphabet_ && states_ == other.states_ &&
         start_ == other.start_ && final_kind_ == other.final_kind_ &&
         rules_ == other.rules_;
}

MachineBuilder::MachineBuilder(std::string name, int tape_count)
    : name_(std::move(name)), tape_count_(tape_count) {}

MachineBuilder& MachineBuilder::alphabet(std::string_view input_symbols) {
  alphabet_ = std::string(input_symbols);
  return *this;
}

MachineBuilder& MachineBuilder::state(std::string_view name) {
  add_unique(states_, name);
  return *this;
}

MachineBuilder& MachineBuilder::start(std::string_view name) {
  add_unique(states_, name);
  start_ = std::string(name);
  return *this;
}

MachineBuilder& MachineBuilder::final_state(std::string_view name,
                                            bool result_bearing) {
  add_unique(states_, name);
  finals_.emplace_back(std::string(name), result_bearing);
  return *this;
}

MachineBuilder& MachineBuilder::rule(std::string_view state,
                                     std::string_view read,
                                     std::string_view next,
                                     std::string_view write,
                                     std::string_view moves) {
  add_unique(states_, state);
  add_unique(states_, next);
  rules_.push_back({std::string(state), std::string(read), std::string(next),
                    std::string(write), std::string(moves)});
  return *this;
}

Machine MachineBuilder::build() const {
  Machine m;
  if (name_.empty()) structural("machine name is empty");
  m.name_ = name_;
  if (tape_count_ < 1 || tape_count_ > kMaxTapes) {
    structural("tape count must be between 1 and " + std::to_string(kMaxTapes));
  }
  m.tape_count_ = tape_count_;
  m.alphabet_ = Alphabet(alphabet_.value_or(""));
  m.states_ = states_;
  if (m.states_.empty() || !start_) structural("missing start state");
  m.start_ = *m.find_state(*start_);

  m.final_kind_.assign(m.states_.size(), 0);
  for (const auto& [name, result] : finals_) {
    const StateId id = *m.find_state(name);
    if (m.final_kind_[id] != 0) structural("final state '" + name + "' declared twice");
    m.final_kind_[id] = result ? 2 : 1;
  }

  const auto k = static_cast<std::size_t>(tape_count_);
  std::size_t stride = 1;
  for (std::size_t t = 0; t < k; ++t) stride *= m.alphabet_.size();
  if (stride * m.states_.size() > kMaxTableEntries) {
    structural("rule table too large (states x alphabet^tapes)");
  }
  m.stride_ = stride;
  m.table_.assign(stride * m.states_.size(), Transition{});

  auto symbols = [&](const std::string& text, const std::string& what) {
    if (text.size() != k) {
      structural(what + " '" + text + "' has arity " + std::to_string(text.size()) +
                 ", expected " + std::to_string(k));
    }
    SymbolTuple out{};
    for (std::size_t t = 0; t < k; ++t) {
      auto id = m.alphabet_.find(text[t]);
      if (!id) structural(std::string("unknown symbol '") + text[t] + "'");
      out[t] = *id;
    }
    return out;
  };

  for (const PendingRule& p : rules_) {
    Rule r;
    r.state = *m.find_state(p.state);
    r.read = symbols(p.read, "read tuple");
    r.action.next = *m.find_state(p.next);
    r.action.write = symbols(p.write, "write tuple");
    if (p.moves.size() != k) {
      structural("move tuple '" + p.moves + "' has arity " +
                 std::to_string(p.moves.size()) + ", expected " + std::to_string(k));
    }
    for (std::size_t t = 0; t < k; ++t) {
      auto mv = parse_move(p.moves[t]);
      if (!mv) structural(std::string("unknown move '") + p.moves[t] + "'");
      r.action.move[t] = *mv;
    }
    if (m.is_final(r.state)) {
      structural("rule fires from final state '" + p.state + "'");
    }
    Transition& slot = m.table_[m.rule_key(r.state, r.read)];
    if (slot.defined()) {
      structural("nondeterministic rule for (" + p.state + ", " + p.read + ")");
    }
    slot = r.action;
    m.rules_.push_back(r);
  }
  return m;
}

std::string tuple_string(const Alphabet& alphabet, const SymbolTuple& symbols,
                         int arity) {
  std::string out;
  for (int t = 0; t < arity; ++t) out.push_back(alphabet.symbol(symbols[t]));
  return out;
}

std::string moves_string(const MoveTuple& moves, int arity) {
  std::string out;
  for (int t = 0; t < arity; ++t) out.push_back(move_char(moves[t]));
  return out;
}

}  // namespace hypermachine
