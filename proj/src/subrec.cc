#include "hypermachine/subrec.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>

#include "hypermachine/engine.h"
#include "hypermachine/error.h"

namespace hypermachine {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

int bit_of(char c) {
  if (c == '0') return 0;
  if (c == '1') return 1;
  throw Error(ErrorKind::kInput, std::string("symbol '") + c + "' is not in {0,1}");
}

std::uint32_t end_state(const std::vector<std::array<std::uint32_t, 2>>& delta,
                        std::uint32_t start, std::string_view word) {
  std::uint32_t s = start;
  for (char c : word) s = delta[s][bit_of(c)];
  return s;
}

// States numbered in breadth-first order from 0 and all reachable.
bool canonical(const std::vector<std::array<std::uint32_t, 2>>& delta) {
  const auto n = static_cast<std::uint32_t>(delta.size());
  std::uint32_t discovered = 1;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (s >= discovered) return false;
    for (int b = 0; b < 2; ++b) {
      const std::uint32_t d = delta[s][b];
      if (d == discovered) {
        ++discovered;
      } else if (d > discovered) {
        return false;
      }
    }
  }
  return discovered == n;
}

LabeledSample label_all(std::size_t max_length, bool (*member)(const std::string&)) {
  LabeledSample out;
  for (const std::string& w : words_up_to("01", max_length)) out.emplace_back(w, member(w));
  return out;
}

}  // namespace

Dfa::Dfa(std::vector<std::array<std::uint32_t, 2>> delta, std::uint32_t start,
         std::vector<bool> accepting)
    : delta_(std::move(delta)), start_(start), accepting_(std::move(accepting)) {
  if (delta_.empty()) throw Error(ErrorKind::kStructural, "automaton has no states");
  if (accepting_.size() != delta_.size()) {
    throw Error(ErrorKind::kStructural, "accepting set size differs from state count");
  }
  if (start_ >= delta_.size()) throw Error(ErrorKind::kStructural, "start state out of range");
  for (const auto& row : delta_) {
    if (row[0] >= delta_.size() || row[1] >= delta_.size()) {
      throw Error(ErrorKind::kStructural, "transition target out of range");
    }
  }
}

std::string Dfa::to_string() const {
  std::string accept;
  for (std::uint32_t s = 0; s < state_count(); ++s) {
    if (!accepting_[s]) continue;
    if (!accept.empty()) accept += ',';
    accept += std::to_string(s);
  }
  std::string delta;
  for (std::uint32_t s = 0; s < state_count(); ++s) {
    if (s > 0) delta += ';';
    delta += std::to_string(s) + ':' + std::to_string(delta_[s][0]) + ',' +
             std::to_string(delta_[s][1]);
  }
  return "states=" + std::to_string(state_count()) + " start=" + std::to_string(start_) +
         " accept=" + (accept.empty() ? "-" : accept) + " delta=" + delta;
}

bool dfa_run(const Dfa& dfa, std::string_view word) {
  std::uint32_t s = dfa.start();
  for (char c : word) s = dfa.next(s, bit_of(c));
  return dfa.accepting(s);
}

DfaVerdict dfa_equiv(const Dfa& a, const Dfa& b) {
  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  std::map<Pair, std::string> seen;
  std::deque<Pair> queue;
  const Pair start{a.start(), b.start()};
  seen.emplace(start, "");
  queue.push_back(start);
  while (!queue.empty()) {
    const Pair p = queue.front();
    queue.pop_front();
    const std::string word = seen.at(p);
    if (a.accepting(p.first) != b.accepting(p.second)) return DfaCounterexample{word};
    for (int bit = 0; bit < 2; ++bit) {
      const Pair q{a.next(p.first, bit), b.next(p.second, bit)};
      if (seen.emplace(q, word + static_cast<char>('0' + bit)).second) queue.push_back(q);
    }
  }
  return DfaEquivalent{};
}

std::uint64_t dfa_space_estimate(std::uint32_t max_states) {
  std::uint64_t total = 0;
  for (std::uint64_t n = 1; n <= max_states; ++n) {
    std::uint64_t term = 1;
    for (std::uint64_t i = 0; i < 2 * n; ++i) term = saturating_mul(term, n);
    for (std::uint64_t i = 0; i < n; ++i) term = saturating_mul(term, 2);
    total = term > std::numeric_limits<std::uint64_t>::max() - total
                ? std::numeric_limits<std::uint64_t>::max()
                : total + term;
  }
  return total;
}

std::uint64_t safety_cap() {
  const char* env = std::getenv("HYPERMACHINE_SAFETY_CAP");
  if (env == nullptr || *env == '\0') return kDefaultSafetyCap;
  std::uint64_t value = 0;
  const std::string_view text(env);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorKind::kInput,
                "HYPERMACHINE_SAFETY_CAP is not a count: '" + std::string(text) + "'");
  }
  return value;
}

SeparationReport separation_search(const LabeledSample& sample, std::uint32_t max_states) {
  if (max_states == 0) throw Error(ErrorKind::kInput, "max states must be at least 1");
  if (max_states > 32) throw Error(ErrorKind::kRefused, "max states above 32");
  for (const auto& [word, label] : sample) {
    for (char c : word) bit_of(c);
  }
  const std::uint64_t estimate = dfa_space_estimate(max_states);
  const std::uint64_t cap = safety_cap();
  if (estimate > cap) {
    throw Error(ErrorKind::kRefused, "search space estimate " + std::to_string(estimate) +
                                         " exceeds safety cap " + std::to_string(cap));
  }
  SeparationReport report;
  report.sample = sample;
  report.max_states = max_states;
  report.witness = NoDfaMatches{};

  for (std::uint32_t n = 1; n <= max_states; ++n) {
    std::vector<std::array<std::uint32_t, 2>> delta(n, {0, 0});
    for (;;) {
      if (canonical(delta)) {
        // The smallest accepting mask consistent with the sample is exactly
        // the set of states that must accept, so masks need not be tried one
        // by one.
        std::uint64_t must_accept = 0, must_reject = 0;
        for (const auto& [word, label] : sample) {
          const std::uint64_t bit = std::uint64_t{1} << end_state(delta, 0, word);
          (label ? must_accept : must_reject) |= bit;
        }
        if ((must_accept & must_reject) == 0) {
          report.dfas_searched += must_accept + 1;
          std::vector<bool> accepting(n);
          for (std::uint32_t s = 0; s < n; ++s) accepting[s] = (must_accept >> s) & 1u;
          report.witness = DfaFound{Dfa(delta, 0, std::move(accepting))};
          return report;
        }
        report.dfas_searched += std::uint64_t{1} << n;
      }
      // Next table in lexicographic order, delta[0][0] most significant.
      int pos = static_cast<int>(2 * n) - 1;
      for (; pos >= 0; --pos) {
        std::uint32_t& cell = delta[pos / 2][pos % 2];
        if (++cell < n) break;
        cell = 0;
      }
      if (pos < 0) break;
    }
  }
  return report;
}

LabeledSample anbn_sample(std::size_t max_length) {
  return label_all(max_length, [](const std::string& w) {
    const std::size_t half = w.size() / 2;
    return w.size() % 2 == 0 && w == std::string(half, '0') + std::string(half, '1');
  });
}

LabeledSample parity_sample(std::size_t max_length) {
  return label_all(max_length, [](const std::string& w) {
    return std::count(w.begin(), w.end(), '1') % 2 == 0;
  });
}

LabeledSample palindrome_sample(std::size_t max_length) {
  return label_all(max_length, [](const std::string& w) {
    return std::equal(w.begin(), w.end(), w.rbegin());
  });
}

LabeledSample named_sample(std::string_view name, std::size_t max_length) {
  if (name == "anbn") return anbn_sample(max_length);
  if (name == "parity") return parity_sample(max_length);
  if (name == "palindrome") return palindrome_sample(max_length);
  throw Error(ErrorKind::kInput, "unknown language '" + std::string(name) +
                                     "'; expected anbn, parity, or palindrome");
}

}  // namespace hypermachine
