#include "hypermachine/dsl.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <type_traits>

#include "hypermachine/error.h"

namespace hypermachine {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, int first_column = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(begin, i - begin)),
                   first_column + static_cast<int>(begin)});
  }
  return out;
}

bool valid_state_name(std::string_view name) {
  if (name.empty() || name == "->") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

struct PendingEdit {
  bool install = false;
  std::string state, read, next, write, moves;
  SourcePosition position;
};

struct RuleLine {
  std::string state, read, next, write, moves;
  SourcePosition position;
  std::optional<PendingEdit> edit;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SpecDocument parse();

 private:
  [[noreturn]] void fail(int line, int column, const std::string& message) const {
    throw ParseError(line, column, message);
  }

  void header_line(int line, const std::vector<Token>& tokens);
  void rule_line(int line, std::string_view raw, const std::vector<Token>& tokens,
                 int bang_column);
  PendingEdit edit_clause(int line, int column, std::string_view clause);

  // Joins k single-character symbol tokens, checking each against the alphabet.
  std::string symbols(int line, const std::vector<Token>& tokens, std::size_t begin);
  std::string symbol_group(int line, int column, std::string_view group);
  std::string moves(int line, const std::vector<Token>& tokens, std::size_t begin);
  std::string move_group(int line, int column, std::string_view group);
  void check_state(int line, int column, const std::string& name);

  std::string_view text_;
  std::optional<std::string> name_;
  SourcePosition name_position_{1, 1};
  int tapes_ = 1;
  bool tapes_seen_ = false;
  std::string alphabet_;
  bool alphabet_seen_ = false;
  std::optional<std::vector<std::string>> declared_states_;
  std::optional<std::string> start_;
  SourcePosition start_position_;
  std::vector<std::pair<std::string, bool>> finals_;
  std::vector<RuleLine> rules_;
};

void Parser::check_state(int line, int column, const std::string& name) {
  if (!valid_state_name(name)) fail(line, column, "invalid state name '" + name + "'");
  if (declared_states_ &&
      std::find(declared_states_->begin(), declared_states_->end(), name) ==
          declared_states_->end()) {
    fail(line, column, "unknown state '" + name + "'");
  }
}

std::string Parser::symbol_group(int line, int column, std::string_view group) {
  std::string out;
  for (const Token& t : tokenize(group, column)) {
    if (t.text.size() != 1 ||
        (t.text[0] != kBlankChar && alphabet_.find(t.text[0]) == std::string::npos)) {
      fail(line, t.column, "unknown symbol '" + t.text + "'");
    }
    out += t.text;
  }
  if (out.size() != static_cast<std::size_t>(tapes_)) {
    fail(line, column, "expected " + std::to_string(tapes_) + " symbols, found " +
                           std::to_string(out.size()));
  }
  return out;
}

std::string Parser::move_group(int line, int column, std::string_view group) {
  std::string out;
  for (const Token& t : tokenize(group, column)) {
    if (t.text.size() != 1 || !parse_move(t.text[0])) {
      fail(line, t.column, "unknown move '" + t.text + "'; expected L, R, or S");
    }
    out += t.text;
  }
  if (out.size() != static_cast<std::size_t>(tapes_)) {
    fail(line, column, "expected " + std::to_string(tapes_) + " moves, found " +
                           std::to_string(out.size()));
  }
  return out;
}

std::string Parser::symbols(int line, const std::vector<Token>& tokens, std::size_t begin) {
  std::string out;
  for (std::size_t i = begin; i < begin + static_cast<std::size_t>(tapes_); ++i) {
    const Token& t = tokens[i];
    if (t.text.size() != 1 ||
        (t.text[0] != kBlankChar && alphabet_.find(t.text[0]) == std::string::npos)) {
      fail(line, t.column, "unknown symbol '" + t.text + "'");
    }
    out += t.text;
  }
  return out;
}

std::string Parser::moves(int line, const std::vector<Token>& tokens, std::size_t begin) {
  std::string out;
  for (std::size_t i = begin; i < begin + static_cast<std::size_t>(tapes_); ++i) {
    const Token& t = tokens[i];
    if (t.text.size() != 1 || !parse_move(t.text[0])) {
      fail(line, t.column, "unknown move '" + t.text + "'; expected L, R, or S");
    }
    out += t.text;
  }
  return out;
}

void Parser::header_line(int line, const std::vector<Token>& tokens) {
  const Token& key = tokens[0];
  std::vector<Token> args(tokens.begin() + 1, tokens.end());
  // Accept "tapes:3" as well as "tapes: 3".
  std::string keyword = key.text;
  if (auto colon = keyword.find(':');
      colon != std::string::npos && colon + 1 < keyword.size()) {
    args.insert(args.begin(), {keyword.substr(colon + 1), key.column + static_cast<int>(colon) + 1});
    keyword.resize(colon + 1);
  }

  if (keyword == "machine") {
    if (name_) fail(line, key.column, "duplicate machine declaration");
    if (args.size() != 1 || !valid_state_name(args[0].text)) {
      fail(line, key.column, "expected 'machine <name>'");
    }
    name_ = args[0].text;
    name_position_ = {line, key.column};
  } else if (keyword == "tapes:") {
    if (!rules_.empty()) fail(line, key.column, "'tapes:' must precede the rules");
    if (tapes_seen_) fail(line, key.column, "duplicate 'tapes:'");
    int k = 0;
    if (args.size() == 1) {
      const std::string& s = args[0].text;
      auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
      if (ec != std::errc() || end != s.data() + s.size()) k = 0;
    }
    if (k < 1 || k > kMaxTapes) {
      fail(line, key.column, "expected 'tapes: <k>' with 1 <= k <= " + std::to_string(kMaxTapes));
    }
    tapes_ = k;
    tapes_seen_ = true;
  } else if (keyword == "alphabet:") {
    if (!rules_.empty()) fail(line, key.column, "'alphabet:' must precede the rules");
    if (alphabet_seen_) fail(line, key.column, "duplicate 'alphabet:'");
    for (const Token& t : args) {
      if (t.text.size() != 1 || !is_symbol_char(t.text[0]) || t.text[0] == kBlankChar) {
        fail(line, t.column, "invalid tape symbol '" + t.text + "'");
      }
      if (alphabet_.find(t.text[0]) != std::string::npos) {
        fail(line, t.column, "duplicate tape symbol '" + t.text + "'");
      }
      alphabet_ += t.text;
    }
    alphabet_seen_ = true;
  } else if (keyword == "states:") {
    if (declared_states_) fail(line, key.column, "duplicate 'states:'");
    if (start_ || !finals_.empty() || !rules_.empty()) {
      fail(line, key.column, "'states:' must precede start, final, and rule lines");
    }
    declared_states_.emplace();
    for (const Token& t : args) {
      if (!valid_state_name(t.text)) fail(line, t.column, "invalid state name '" + t.text + "'");
      if (std::find(declared_states_->begin(), declared_states_->end(), t.text) !=
          declared_states_->end()) {
        fail(line, t.column, "duplicate state '" + t.text + "'");
      }
      declared_states_->push_back(t.text);
    }
  } else if (keyword == "start:") {
    if (start_) fail(line, key.column, "duplicate 'start:'");
    if (args.size() != 1) fail(line, key.column, "expected 'start: <state>'");
    check_state(line, args[0].column, args[0].text);
    start_ = args[0].text;
    start_position_ = {line, args[0].column};
  } else if (keyword == "final:") {
    for (const Token& t : args) {
      std::string name = t.text;
      const bool result = !name.empty() && name.back() == '*';
      if (result) name.pop_back();
      check_state(line, t.column, name);
      for (const auto& f : finals_) {
        if (f.first == name) fail(line, t.column, "final state '" + name + "' declared twice");
      }
      finals_.emplace_back(name, result);
    }
  } else {
    fail(line, key.column, "unknown declaration '" + key.text + "'");
  }
}

PendingEdit Parser::edit_clause(int line, int column, std::string_view clause) {
  auto malformed = [&](int col, const std::string& why) {
    fail(line, col, "malformed edit clause: " + why);
  };
  std::size_t lead = 0;
  while (lead < clause.size() && std::isspace(static_cast<unsigned char>(clause[lead]))) ++lead;
  std::size_t tail = clause.size();
  while (tail > lead && std::isspace(static_cast<unsigned char>(clause[tail - 1]))) --tail;
  const int base = column + static_cast<int>(lead);
  const std::string_view body = clause.substr(lead, tail - lead);

  PendingEdit edit;
  edit.position = {line, base};
  const std::size_t open = body.find('(');
  if (open == std::string_view::npos || body.empty() || body.back() != ')') {
    malformed(base, "expected install(...) or replace(...)");
  }
  const std::string_view verb = body.substr(0, open);
  if (verb == "install") {
    edit.install = true;
  } else if (verb != "replace") {
    malformed(base, "unknown edit '" + std::string(verb) + "'");
  }
  const std::string_view inner = body.substr(open + 1, body.size() - open - 2);
  const int inner_col = base + static_cast<int>(open) + 1;
  const std::size_t arrow = inner.find("->");
  if (arrow == std::string_view::npos || inner.find("->", arrow + 2) != std::string_view::npos) {
    malformed(inner_col, "expected exactly one '->'");
  }

  // Splits [begin, end) of `inner` on commas into exactly `count` groups.
  auto groups = [&](std::size_t begin, std::size_t end, std::size_t count) {
    std::vector<std::pair<std::string_view, int>> out;
    std::size_t from = begin;
    for (std::size_t i = begin; i <= end; ++i) {
      if (i == end || inner[i] == ',') {
        out.emplace_back(inner.substr(from, i - from), inner_col + static_cast<int>(from));
        from = i + 1;
      }
    }
    if (out.size() != count) {
      malformed(inner_col + static_cast<int>(begin),
                "expected " + std::to_string(count) + " comma-separated parts");
    }
    return out;
  };
  auto single = [&](std::pair<std::string_view, int> g) {
    const std::vector<Token> t = tokenize(g.first, g.second);
    if (t.size() != 1) malformed(g.second, "expected one state name");
    check_state(line, t[0].column, t[0].text);
    return t[0].text;
  };

  const auto lhs = groups(0, arrow, 2);
  const auto rhs = groups(arrow + 2, inner.size(), 3);
  edit.state = single(lhs[0]);
  edit.read = symbol_group(line, lhs[1].second, lhs[1].first);
  edit.next = single(rhs[0]);
  edit.write = symbol_group(line, rhs[1].second, rhs[1].first);
  edit.moves = move_group(line, rhs[2].second, rhs[2].first);
  return edit;
}

void Parser::rule_line(int line, std::string_view raw, const std::vector<Token>& tokens,
                       int bang_column) {
  const std::size_t k = static_cast<std::size_t>(tapes_);
  const std::size_t expected = 1 + 1 + k + 1 + 1 + k + k;
  const int col = tokens[0].column;
  if (tokens.size() != expected) {
    fail(line, col, "expected 'rule <state> <" + std::to_string(k) + " symbols> -> <state> <" +
                        std::to_string(k) + " symbols> <" + std::to_string(k) + " moves>'");
  }
  const Token& arrow = tokens[2 + k];
  if (arrow.text != "->") fail(line, arrow.column, "expected '->'");

  RuleLine r;
  r.position = {line, col};
  check_state(line, tokens[1].column, tokens[1].text);
  r.state = tokens[1].text;
  r.read = symbols(line, tokens, 2);
  check_state(line, tokens[3 + k].column, tokens[3 + k].text);
  r.next = tokens[3 + k].text;
  r.write = symbols(line, tokens, 4 + k);
  r.moves = moves(line, tokens, 4 + 2 * k);

  for (const RuleLine& other : rules_) {
    if (other.state == r.state && other.read == r.read) {
      fail(line, col, "nondeterministic rule for (" + r.state + ", " + r.read +
                          "), first defined on line " + std::to_string(other.position.line));
    }
  }
  if (bang_column > 0) r.edit = edit_clause(line, bang_column + 1, raw);
  rules_.push_back(std::move(r));
}

SpecDocument Parser::parse() {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text_.size()) {
    const std::size_t end = std::min(text_.find('\n', pos), text_.size());
    std::string_view line = text_.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::string_view head = line;
    std::string_view clause;
    int bang_column = 0;
    if (auto bang = line.find('!'); bang != std::string_view::npos) {
      head = line.substr(0, bang);
      clause = line.substr(bang + 1);
      bang_column = static_cast<int>(bang) + 1;
    }
    const std::vector<Token> tokens = tokenize(head);
    if (tokens.empty()) {
      if (bang_column > 0) fail(line_no, bang_column, "malformed edit clause: no rule before '!'");
      continue;
    }
    if (tokens[0].text == "rule") {
      rule_line(line_no, clause, tokens, bang_column);
    } else {
      if (bang_column > 0) {
        fail(line_no, bang_column, "malformed edit clause: edits attach only to rules");
      }
      header_line(line_no, tokens);
    }
    if (end == text_.size()) break;
  }

  if (!name_) fail(1, 1, "missing 'machine <name>' declaration");
  if (!start_) fail(name_position_.line, name_position_.column, "missing start state");

  MachineBuilder builder(*name_, tapes_);
  builder.alphabet(alphabet_);
  if (declared_states_) {
    for (const std::string& s : *declared_states_) builder.state(s);
  }
  builder.start(*start_);
  std::set<std::string> final_names;
  for (const auto& [name, result] : finals_) {
    builder.final_state(name, result);
    final_names.insert(name);
  }
  for (const RuleLine& r : rules_) {
    if (final_names.count(r.state)) {
      fail(r.position.line, r.position.column,
           "rule fires from final state '" + r.state + "'");
    }
    builder.rule(r.state, r.read, r.next, r.write, r.moves);
  }

  SpecDocument doc{std::string(text_), builder.build(), std::nullopt, name_position_,
                   start_position_, {}};
  for (const RuleLine& r : rules_) doc.rule_positions.push_back(r.position);

  const Machine& m = doc.machine;
  auto tuple = [&](const std::string& text) {
    SymbolTuple out{};
    for (std::size_t t = 0; t < text.size(); ++t) out[t] = *m.alphabet().find(text[t]);
    return out;
  };
  std::vector<AttachedEdit> edits;
  std::vector<SourcePosition> edit_positions;
  for (const RuleLine& r : rules_) {
    if (!r.edit) continue;
    const PendingEdit& e = *r.edit;
    auto state_id = [&](const std::string& name, SourcePosition at) {
      auto id = m.find_state(name);
      if (!id) fail(at.line, at.column, "unknown state '" + name + "'");
      return *id;
    };
    Transition action;
    action.next = state_id(e.next, e.position);
    action.write = tuple(e.write);
    for (std::size_t t = 0; t < e.moves.size(); ++t) action.move[t] = *parse_move(e.moves[t]);
    const StateId target = state_id(e.state, e.position);
    const SymbolTuple read = tuple(e.read);
    AttachedEdit a;
    a.state = *m.find_state(r.state);
    a.read = tuple(r.read);
    if (e.install) {
      a.action = InstallRule{target, read, action};
    } else {
      a.action = ReplaceRule{target, read, action};
    }
    edits.push_back(a);
    edit_positions.push_back(e.position);
  }
  if (!edits.empty()) {
    // Check edits one prefix at a time so a failure points at its clause.
    for (std::size_t i = 0; i < edits.size(); ++i) {
      try {
        ReflexiveMachine(m, std::vector<AttachedEdit>(edits.begin(), edits.begin() + i + 1));
      } catch (const Error& err) {
        fail(edit_positions[i].line, edit_positions[i].column,
             std::string("malformed edit clause: ") + err.what());
      }
    }
    doc.reflexive.emplace(m, std::move(edits));
  }
  return doc;
}

std::string join_symbols(const Alphabet& alphabet, const SymbolTuple& symbols, int k) {
  std::string out;
  for (int t = 0; t < k; ++t) {
    if (t > 0) out += ' ';
    out += alphabet.symbol(symbols[t]);
  }
  return out;
}

std::string join_moves(const MoveTuple& moves, int k) {
  std::string out;
  for (int t = 0; t < k; ++t) {
    if (t > 0) out += ' ';
    out += move_char(moves[t]);
  }
  return out;
}

std::string edit_text(const Machine& m, const EditAction& action) {
  return std::visit(
      [&](const auto& a) {
        const int k = m.tape_count();
        const bool install = std::is_same_v<std::decay_t<decltype(a)>, InstallRule>;
        return std::string(install ? "install(" : "replace(") + m.state_name(a.state) + "," +
               join_symbols(m.alphabet(), a.read, k) + " -> " +
               m.state_name(a.action.next) + "," +
               join_symbols(m.alphabet(), a.action.write, k) + "," +
               join_moves(a.action.move, k) + ")";
      },
      action);
}

std::string unparse_with(const Machine& m, const ReflexiveMachine* rm) {
  const int k = m.tape_count();
  std::string out = "machine " + m.name() + "\n";
  out += "tapes: " + std::to_string(k) + "\n";
  out += "alphabet:";
  for (char c : m.alphabet().input_symbols()) out += std::string(" ") + c;
  out += "\nstates:";
  for (StateId s = 0; s < m.state_count(); ++s) out += " " + m.state_name(s);
  out += "\nstart: " + m.state_name(m.start()) + "\n";
  const auto finals = m.finals();
  if (!finals.empty()) {
    out += "final:";
    for (const auto& [s, result] : finals) out += " " + m.state_name(s) + (result ? "*" : "");
    out += "\n";
  }
  for (const Rule& r : m.rules()) {
    out += "rule " + m.state_name(r.state) + " " + join_symbols(m.alphabet(), r.read, k) +
           " -> " + m.state_name(r.action.next) + " " +
           join_symbols(m.alphabet(), r.action.write, k) + " " +
           join_moves(r.action.move, k);
    if (rm != nullptr) {
      if (const EditAction* e = rm->edit_for(m.rule_key(r.state, r.read))) {
        out += " ! " + edit_text(m, *e);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace

SpecDocument parse_machine_spec(std::string_view text) { return Parser(text).parse(); }

std::string unparse(const Machine& machine) { return unparse_with(machine, nullptr); }

std::string unparse(const ReflexiveMachine& rm) { return unparse_with(rm.base(), &rm); }

std::string tape_window(const Alphabet& alphabet, const Tape& tape, std::int64_t head) {
  std::int64_t lo = head, hi = head;
  if (auto span = tape.extent()) {
    lo = std::min(lo, span->first);
    hi = std::max(hi, span->second);
  }
  std::string out;
  for (std::int64_t pos = lo; pos <= hi; ++pos) {
    if (pos == head) out += '^';
    out += alphabet.symbol(tape.read(pos));
  }
  return out;
}

std::string trace_record(const Machine& machine, const Configuration& config,
                         const std::string* output) {
  std::string out = "step=" + std::to_string(config.step) +
                    "\tstate=" + machine.state_name(config.state);
  for (std::size_t t = 0; t < config.tapes.size(); ++t) {
    const std::string suffix = t == 0 ? "" : std::to_string(t + 1);
    out += "\thead" + suffix + "=" + std::to_string(config.heads[t]);
    out += "\ttape" + suffix + "=" +
           tape_window(machine.alphabet(), config.tapes[t], config.heads[t]);
  }
  if (output != nullptr) out += "\tout=" + *output;
  return out;
}

std::string emit_trace(const Machine& machine, const std::vector<Configuration>& stream) {
  std::string out;
  for (const Configuration& c : stream) out += trace_record(machine, c) + "\n";
  return out;
}

}  // namespace hypermachine
