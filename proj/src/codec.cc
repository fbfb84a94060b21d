#include "hypermachine/codec.h"

#include <algorithm>
#include <tuple>

#include "hypermachine/error.h"

namespace hypermachine {

namespace {

constexpr std::uint32_t kUnbounded = 1u << 24;

// Unary codes as they appear in the bit string.
struct RawRule {
  std::uint32_t state;
  std::uint32_t read;
  std::uint32_t next;
  std::uint32_t write;
  std::uint32_t move;
};

struct RawTable {
  std::uint32_t start = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> finals;  // (state, flag)
  std::vector<RawRule> rules;
};

struct Failure {
  std::size_t position;
  std::string message;
};

class BitCursor {
 public:
  explicit BitCursor(std::string_view bits) : bits_(bits) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ == bits_.size(); }

  std::optional<Failure> zeros(std::uint32_t min, std::uint32_t max,
                               const char* what, std::uint32_t& value) {
    const std::size_t begin = pos_;
    while (pos_ < bits_.size() && bits_[pos_] == '0') {
      if (pos_ - begin == max) return Failure{pos_, std::string(what) + " out of range"};
      ++pos_;
    }
    value = static_cast<std::uint32_t>(pos_ - begin);
    if (value < min) return Failure{pos_, std::string("expected ") + what};
    return std::nullopt;
  }

  std::optional<Failure> one(const char* what) {
    if (pos_ >= bits_.size() || bits_[pos_] != '1') {
      return Failure{pos_, std::string("expected ") + what};
    }
    ++pos_;
    return std::nullopt;
  }

 private:
  std::string_view bits_;
  std::size_t pos_ = 0;
};

#define HM_TRY(expr)                  \
  if (auto failure = (expr)) return failure

std::optional<Failure> parse_structure(std::string_view bits, RawTable& out) {
  BitCursor in(bits);
  std::uint32_t final_count = 0;
  HM_TRY(in.zeros(0, kUnbounded, "final count", final_count));
  HM_TRY(in.one("header separator"));
  HM_TRY(in.one("header separator"));

  std::vector<std::uint32_t> finals;
  for (std::uint32_t i = 0; i < final_count; ++i) {
    const std::size_t entry = in.pos();
    std::uint32_t state = 0, flag = 0;
    HM_TRY(in.zeros(1, kUnbounded, "final state", state));
    HM_TRY(in.one("final field separator"));
    HM_TRY(in.zeros(1, 2, "final flag", flag));
    HM_TRY(in.one("entry separator"));
    HM_TRY(in.one("entry separator"));
    if (!out.finals.empty() && out.finals.back().first >= state) {
      return Failure{entry, "final states not in increasing order"};
    }
    out.finals.emplace_back(state, flag);
    finals.push_back(state);
  }

  while (!in.at_end()) {
    const std::size_t entry = in.pos();
    RawRule r{};
    HM_TRY(in.zeros(1, kUnbounded, "rule state", r.state));
    HM_TRY(in.one("field separator"));
    HM_TRY(in.zeros(1, 3, "read symbol", r.read));
    HM_TRY(in.one("field separator"));
    HM_TRY(in.zeros(1, kUnbounded, "next state", r.next));
    HM_TRY(in.one("field separator"));
    HM_TRY(in.zeros(1, 3, "write symbol", r.write));
    HM_TRY(in.one("field separator"));
    HM_TRY(in.zeros(1, 3, "move", r.move));
    if (!out.rules.empty() &&
        std::tie(out.rules.back().state, out.rules.back().read) >=
            std::tie(r.state, r.read)) {
      return Failure{entry, "rules not in increasing (state, symbol) order"};
    }
    if (std::binary_search(finals.begin(), finals.end(), r.state)) {
      return Failure{entry, "rule fires from a final state"};
    }
    out.rules.push_back(r);
    if (in.at_end()) break;
    HM_TRY(in.one("rule separator"));
    HM_TRY(in.one("rule separator"));
    if (in.at_end()) return Failure{in.pos(), "expected rule after separator"};
  }
  return std::nullopt;
}

#undef HM_TRY

void append_unary(std::string& out, std::uint32_t n) { out.append(n, '0'); }

std::string serialize(const RawTable& t) {
  std::string out;
  append_unary(out, static_cast<std::uint32_t>(t.finals.size()));
  out += "11";
  for (const auto& [state, flag] : t.finals) {
    append_unary(out, state);
    out += '1';
    append_unary(out, flag);
    out += "11";
  }
  for (std::size_t i = 0; i < t.rules.size(); ++i) {
    const RawRule& r = t.rules[i];
    if (i > 0) out += "11";
    append_unary(out, r.state);
    out += '1';
    append_unary(out, r.read);
    out += '1';
    append_unary(out, r.next);
    out += '1';
    append_unary(out, r.write);
    out += '1';
    append_unary(out, r.move);
  }
  return out;
}

std::uint32_t max_state(const RawTable& t) {
  std::uint32_t n = t.start;
  for (const auto& f : t.finals) n = std::max(n, f.first);
  for (const RawRule& r : t.rules) n = std::max({n, r.state, r.next});
  return n;
}

// Renumbers `t` canonically. `declared` lists every used state in declaration
// order; unreachable states keep that relative order after the reachable ones.
RawTable canonicalize(const RawTable& t, const std::vector<std::uint32_t>& declared) {
  const std::uint32_t n = max_state(t);
  std::vector<std::vector<const RawRule*>> by_state(n + 1);
  for (const RawRule& r : t.rules) by_state[r.state].push_back(&r);
  for (auto& rules : by_state) {
    std::sort(rules.begin(), rules.end(),
              [](const RawRule* a, const RawRule* b) { return a->read < b->read; });
  }

  std::vector<std::uint32_t> number(n + 1, 0);
  std::uint32_t assigned = 0;
  std::vector<std::uint32_t> queue{t.start};
  number[t.start] = ++assigned;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const RawRule* r : by_state[queue[head]]) {
      if (number[r->next] == 0) {
        number[r->next] = ++assigned;
        queue.push_back(r->next);
      }
    }
  }
  for (std::uint32_t s : declared) {
    if (number[s] == 0) number[s] = ++assigned;
  }

  RawTable out;
  out.start = 1;
  for (const auto& [state, flag] : t.finals) out.finals.emplace_back(number[state], flag);
  std::sort(out.finals.begin(), out.finals.end());
  for (const RawRule& r : t.rules) {
    out.rules.push_back({number[r.state], r.read, number[r.next], r.write, r.move});
  }
  std::sort(out.rules.begin(), out.rules.end(), [](const RawRule& a, const RawRule& b) {
    return std::tie(a.state, a.read) < std::tie(b.state, b.read);
  });
  return out;
}

std::vector<std::uint32_t> used_states(const RawTable& t) {
  std::vector<bool> used(max_state(t) + 1, false);
  used[t.start] = true;
  for (const auto& f : t.finals) used[f.first] = true;
  for (const RawRule& r : t.rules) used[r.state] = used[r.next] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 1; s < used.size(); ++s) {
    if (used[s]) out.push_back(s);
  }
  return out;
}

// Full validation: structure, ordering, and canonical numbering.
std::optional<Failure> parse_description(std::string_view bits, RawTable& out) {
  if (auto failure = parse_structure(bits, out)) return failure;
  const std::string canonical = serialize(canonicalize(out, used_states(out)));
  if (canonical != bits) {
    std::size_t pos = 0;
    while (pos < bits.size() && pos < canonical.size() && bits[pos] == canonical[pos]) ++pos;
    return Failure{pos, "non-canonical state numbering"};
  }
  return std::nullopt;
}

RawTable parse_or_throw(const Description& description) {
  RawTable table;
  if (auto failure = parse_description(description.bits, table)) {
    throw InvalidEncoding(failure->position, failure->message);
  }
  return table;
}

std::uint32_t symbol_code(char c) {
  switch (c) {
    case kBlankChar: return 1;
    case '0': return 2;
    default: return 3;
  }
}

constexpr char kCodeSymbol[] = {'?', kBlankChar, '0', '1'};
constexpr char kCodeMove[] = {'?', 'L', 'R', 'S'};

std::uint32_t move_code(Move m) {
  switch (m) {
    case Move::kLeft: return 1;
    case Move::kRight: return 2;
    case Move::kStay: return 3;
  }
  return 3;
}

// Incremental structural recognizer used to prune the enumeration. It tracks
// which unary field is being read and how many separator ones follow it.
struct ShapeCursor {
  enum Field : std::uint8_t { kHeader, kFinalState, kFinalFlag, kRule0, kRule4 = kRule0 + 4 };

  std::uint8_t field = kHeader;
  std::uint8_t ones = 0;       // separator ones after the current run
  std::uint32_t count = 0;     // zeros in the current run
  std::uint32_t finals_left = 0;
  std::uint32_t header = 0;    // final count, once the header run has ended

  // Ordering and numbering constraints that a prefix can already violate.
  std::uint64_t final_mask = 0;  // final states below 64
  std::uint32_t last_final = 0;
  std::uint32_t rule_state = 0;
  std::uint32_t last_state = 0;
  std::uint32_t last_read = 0;
  std::uint32_t discovered = 1;  // states numbered so far by the breadth-first walk
  std::uint64_t used_mask = 2;   // used states below 64; state 1 always
  bool large_state = false;

  void use(std::uint32_t state) {
    if (state < 64) {
      used_mask |= std::uint64_t{1} << state;
    } else {
      large_state = true;
    }
  }

  // Used states must be exactly 1..n.
  bool gapless() const {
    if (large_state) return true;  // left to the decoder
    const std::uint64_t bits = used_mask >> 1;
    return (bits & (bits + 1)) == 0;
  }

  static std::uint32_t max_zeros(std::uint8_t f) {
    if (f == kFinalFlag) return 2;
    if (f == kRule0 + 1 || f == kRule0 + 3 || f == kRule4) return 3;
    return kUnbounded;
  }
  static std::uint32_t min_zeros(std::uint8_t f) { return f == kHeader ? 0 : 1; }
  static std::uint8_t separator(std::uint8_t f) {
    return (f == kHeader || f == kFinalFlag || f == kRule4) ? 2 : 1;
  }

  // Checks a completed run of `count` zeros against earlier fields.
  bool complete() {
    switch (field) {
      case kHeader: header = count; return true;
      case kFinalState:
        if (count <= last_final) return false;
        last_final = count;
        use(count);
        if (count < 64) final_mask |= std::uint64_t{1} << count;
        return true;
      case kRule0:
        rule_state = count;
        use(count);
        return count >= 64 || (final_mask & (std::uint64_t{1} << count)) == 0;
      case kRule0 + 1:
        if (last_state != 0 &&
            std::tie(rule_state, count) <= std::tie(last_state, last_read)) {
          return false;
        }
        last_state = rule_state;
        last_read = count;
        return true;
      case kRule0 + 2:
        use(count);
        if (rule_state <= discovered) {
          if (count > discovered + 1) return false;
          if (count == discovered + 1) ++discovered;
        }
        return true;
      default:
        return true;
    }
  }

  // Returns false when the extended prefix cannot start a valid description.
  bool feed(char bit) {
    if (bit == '1') {
      if (ones == 0 && count < min_zeros(field)) return false;
      if (ones >= separator(field)) return false;
      if (ones == 0 && !complete()) return false;
      ++ones;
      return true;
    }
    if (ones == 0) {
      return ++count <= max_zeros(field);
    }
    if (ones != separator(field)) return false;
    switch (field) {
      case kHeader:
        if (header > 0) {
          field = kFinalState;
          finals_left = header;
        } else {
          field = kRule0;
        }
        break;
      case kFinalState: field = kFinalFlag; break;
      case kFinalFlag:
        field = (--finals_left > 0) ? kFinalState : kRule0;
        break;
      case kRule4: field = kRule0; break;
      default: ++field; break;
    }
    ones = 0;
    count = 1;
    return true;
  }

  bool can_end() const {
    switch (field) {
      case kHeader: return ones == 2 && header == 0;
      case kFinalFlag: return ones == 2 && finals_left == 1;
      case kRule4: return ones == 0 && count >= 1;
      default: return false;
    }
  }

  // Fewest further bits that reach a state where the string may end.
  std::uint32_t min_remaining() const {
    const std::uint32_t missing = count >= min_zeros(field) ? 0 : min_zeros(field) - count;
    switch (field) {
      case kHeader: {
        const std::uint32_t f = ones == 0 ? count : header;
        return (ones == 0 ? 2 : 2 - ones) + 5 * f;
      }
      case kFinalState:
        return (ones == 0 ? missing + 1 : 0) + 3 + 5 * (finals_left - 1);
      case kFinalFlag:
        return (ones == 0 ? missing + 2 : 2 - ones) + 5 * (finals_left - 1);
      default: {
        const std::uint32_t i = field - kRule0;
        if (i == 4) return ones == 0 ? missing : (ones == 1 ? 10 : 9);
        return ones == 0 ? missing + 2 * (4 - i) : 2 * (4 - i) - 1;
      }
    }
  }
};

void scan_shapes(std::string& prefix, ShapeCursor cursor, std::size_t length,
                 std::vector<std::string>& out) {
  if (prefix.size() == length) {
    if (!cursor.can_end() || !cursor.gapless()) return;
    RawTable table;
    if (!parse_description(prefix, table)) out.push_back(prefix);
    return;
  }
  for (char bit : {'0', '1'}) {
    ShapeCursor next = cursor;
    if (!next.feed(bit)) continue;
    if (prefix.size() + 1 + next.min_remaining() > length) continue;
    prefix.push_back(bit);
    scan_shapes(prefix, next, length, out);
    prefix.pop_back();
  }
}

}  // namespace

Description description_from_text(std::string_view text) {
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::kInput, "description contains a character other than 0/1");
    }
  }
  return Description{std::string(text)};
}

Description encode(const Machine& machine) {
  if (machine.tape_count() != 1) {
    throw Error(ErrorKind::kUnsupportedClass,
                "only single-tape machines have descriptions; " + machine.name() +
                    " has " + std::to_string(machine.tape_count()) + " tapes");
  }
  for (char c : machine.alphabet().input_symbols()) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::kUnsupportedClass,
                  std::string("symbol '") + c + "' of " + machine.name() +
                      " is outside {0, 1}");
    }
  }

  std::vector<bool> used(machine.state_count(), false);
  used[machine.start()] = true;
  for (const auto& [state, result] : machine.finals()) used[state] = true;
  for (const Rule& r : machine.rules()) used[r.state] = used[r.action.next] = true;

  std::vector<std::uint32_t> provisional(machine.state_count(), 0);
  std::vector<std::uint32_t> declared;
  for (StateId s = 0; s < machine.state_count(); ++s) {
    if (!used[s]) continue;
    declared.push_back(static_cast<std::uint32_t>(declared.size() + 1));
    provisional[s] = declared.back();
  }

  const Alphabet& alphabet = machine.alphabet();
  RawTable raw;
  raw.start = provisional[machine.start()];
  for (const auto& [state, result] : machine.finals()) {
    raw.finals.emplace_back(provisional[state], result ? 2u : 1u);
  }
  for (const Rule& r : machine.rules()) {
    raw.rules.push_back({provisional[r.state], symbol_code(alphabet.symbol(r.read[0])),
                         provisional[r.action.next],
                         symbol_code(alphabet.symbol(r.action.write[0])),
                         move_code(r.action.move[0])});
  }
  return Description{serialize(canonicalize(raw, declared))};
}

Machine decode(const Description& description) {
  const RawTable table = parse_or_throw(description);
  const auto states = used_states(table);
  auto name = [](std::uint32_t s) { return "q" + std::to_string(s); };

  MachineBuilder b("decoded");
  b.alphabet("01");
  for (std::uint32_t s : states) b.state(name(s));
  b.start(name(1));
  for (const auto& [state, flag] : table.finals) b.final_state(name(state), flag == 2);
  for (const RawRule& r : table.rules) {
    b.rule(name(r.state), std::string(1, kCodeSymbol[r.read]), name(r.next),
           std::string(1, kCodeSymbol[r.write]), std::string(1, kCodeMove[r.move]));
  }
  return b.build();
}

bool is_valid(const Description& description) {
  RawTable table;
  return !parse_description(description.bits, table);
}

std::uint64_t word_index(std::string_view word) {
  if (word.size() > 63) throw Error(ErrorKind::kInput, "word longer than 63 bits");
  std::uint64_t value = 0;
  for (char c : word) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::kInput, std::string("symbol '") + c + "' is not a bit");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return ((std::uint64_t{1} << word.size()) - 1) + value;
}

std::string index_word(std::uint64_t index) {
  // Length n covers indices [2^n - 1, 2^(n+1) - 1).
  std::size_t length = 0;
  while (length < 63 && index >= (std::uint64_t{1} << (length + 1)) - 1) ++length;
  const std::uint64_t value = index - ((std::uint64_t{1} << length) - 1);
  std::string out(length, '0');
  for (std::size_t i = 0; i < length; ++i) {
    if ((value >> (length - 1 - i)) & 1u) out[i] = '1';
  }
  return out;
}

MachineEnumerator::MachineEnumerator() = default;

void MachineEnumerator::fill_length(std::size_t length) {
  pending_.clear();
  pending_pos_ = 0;
  std::string prefix;
  scan_shapes(prefix, ShapeCursor{}, length, pending_);
}

Description MachineEnumerator::next() {
  while (pending_pos_ >= pending_.size()) fill_length(current_length_++);
  ++emitted_;
  return Description{pending_[pending_pos_++]};
}

std::vector<Description> enumerate_machines(std::size_t count) {
  std::vector<Description> out;
  out.reserve(count);
  MachineEnumerator enumerator;
  while (out.size() < count) out.push_back(enumerator.next());
  return out;
}

std::optional<std::uint64_t> locate(const Description& description, std::uint64_t limit) {
  if (!is_valid(description)) return std::nullopt;
  MachineEnumerator enumerator;
  for (std::uint64_t i = 0; i < limit; ++i) {
    const Description d = enumerator.next();
    if (d.bits.size() > description.bits.size()) return std::nullopt;
    if (d == description) return i;
  }
  return std::nullopt;
}

UniversalSimulator::UniversalSimulator(const Description& description,
                                       std::string_view input) {
  const RawTable raw = parse_or_throw(description);
  const std::size_t n = used_states(raw).size();
  final_kind_.assign(n, 0);
  for (const auto& [state, flag] : raw.finals) final_kind_[state - 1] = static_cast<std::uint8_t>(flag);
  table_.assign(n * 3, Transition{});
  for (const RawRule& r : raw.rules) {
    Transition& t = table_[(r.state - 1) * 3 + (r.read - 1)];
    t.next = r.next - 1;
    t.write[0] = static_cast<SymbolId>(r.write - 1);
    t.move[0] = r.move == 1 ? Move::kLeft : (r.move == 2 ? Move::kRight : Move::kStay);
  }

  config_.state = 0;
  config_.tapes.resize(1);
  config_.heads.assign(1, 0);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] != '0' && input[i] != '1') {
      throw Error(ErrorKind::kInput, std::string("input symbol '") + input[i] +
                                         "' is not a bit");
    }
    config_.tapes[0].write(static_cast<std::int64_t>(i), input[i] == '0' ? 1 : 2);
  }
}

bool UniversalSimulator::halted() const {
  if (final_kind_[config_.state] != 0) return true;
  return find_rule(config_.state, config_.tapes[0].read(config_.heads[0])) == nullptr;
}

bool UniversalSimulator::step() {
  if (final_kind_[config_.state] != 0) return false;
  const Transition* t = find_rule(config_.state, config_.tapes[0].read(config_.heads[0]));
  if (t == nullptr) return false;
  config_.tapes[0].write(config_.heads[0], t->write[0]);
  config_.heads[0] += static_cast<int>(t->move[0]);
  config_.state = t->next;
  ++config_.step;
  return true;
}

RunOutcome UniversalSimulator::outcome() const {
  if (!halted()) {
    return BudgetExhausted{config_.step, config_};
  }
  if (final_kind_[config_.state] == 2) {
    std::string word;
    if (auto span = config_.tapes[0].extent()) {
      for (auto pos = span->first; pos <= span->second; ++pos) {
        word.push_back(kCodeSymbol[config_.tapes[0].read(pos) + 1]);
      }
    }
    return HaltedWithResult{word, config_.step};
  }
  return HaltedResultless{config_.step};
}

RunOutcome universal_run(const Description& description, std::string_view input,
                         std::uint64_t budget) {
  if (budget == 0) throw Error(ErrorKind::kInput, "step budget must be at least 1");
  UniversalSimulator u(description, input);
  while (u.steps() < budget && u.step()) {
  }
  return u.outcome();
}

}  // namespace hypermachine
