// Command-line front end.
//
// Exit codes: 0 success or certified result, 1 runtime error, 2 parse error,
// 3 budget exhausted or provisional result.

#include <chrono>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hypermachine/certify.h"
#include "hypermachine/codec.h"
#include "hypermachine/diagonal.h"
#include "hypermachine/dsl.h"
#include "hypermachine/error.h"
#include "hypermachine/inductive.h"
#include "hypermachine/limits.h"
#include "hypermachine/reflexive.h"
#include "hypermachine/subrec.h"

namespace hm = hypermachine;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnfinished = 3;

volatile std::sig_atomic_t g_interrupted = 0;

void on_interrupt(int) { g_interrupted = 1; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hm::Error(hm::ErrorKind::kInput, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// A machine file is either a description (0/1 text) or a DSL spec.
struct Loaded {
  std::optional<hm::Description> description;
  std::optional<hm::SpecDocument> doc;

  // The machine to run directly.
  hm::Machine machine() const {
    return doc ? doc->machine : hm::decode(*description);
  }
  hm::Description as_description() const {
    return description ? *description : hm::encode(doc->machine);
  }
};

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  std::string bits;
  bool only_bits = true;
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c);
    } else if (c != '\n' && c != '\r' && c != ' ' && c != '\t') {
      only_bits = false;
      break;
    }
  }
  Loaded out;
  if (only_bits && !bits.empty()) {
    out.description = hm::Description{bits};
    hm::decode(*out.description);  // report malformed descriptions early
  } else {
    out.doc = hm::parse_machine_spec(text);
  }
  return out;
}

std::string summary_line(const hm::InductiveOutcome& o) {
  return "summary\tsteps=" + std::to_string(o.steps_executed) + "\tout=" + o.current_output +
         "\tlast_change=" + std::to_string(o.last_change_step) +
         "\tstatus=" + hm::describe(o.status);
}

class TraceSink {
 public:
  explicit TraceSink(const std::string& path) {
    if (path.empty()) return;
    if (path == "-") {
      out_ = &std::cout;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw hm::Error(hm::ErrorKind::kInput, "cannot write " + path);
      out_ = &file_;
    }
  }
  bool active() const { return out_ != nullptr; }
  void line(const std::string& record) { *out_ << record << '\n'; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

int cmd_run(const std::string& path, const std::string& input, std::uint64_t budget,
            const std::string& trace_path, bool inductive) {
  const Loaded loaded = load(path);
  const hm::Machine m = loaded.machine();
  TraceSink trace(trace_path);

  if (inductive) {
    if (budget == 0) throw hm::Error(hm::ErrorKind::kInput, "step budget must be at least 1");
    auto process = hm::InductiveProcess::direct(m, input);
    process.run_until(budget, [&](const hm::Configuration& c, const std::string& out) {
      if (trace.active()) trace.line(hm::trace_record(m, c, &out));
    });
    const hm::InductiveOutcome o = process.outcome();
    std::cout << summary_line(o) << '\n';
    return o.certified() ? kExitOk : kExitUnfinished;
  }

  auto record = [&](const hm::Configuration& c) {
    if (trace.active()) trace.line(hm::trace_record(m, c));
  };
  hm::RunOutcome outcome;
  if (loaded.doc && loaded.doc->reflexive) {
    const hm::ReflexiveRun run = hm::reflexive_run(*loaded.doc->reflexive, input, budget, record);
    outcome = run.outcome;
    for (const hm::EditLogEntry& e : run.log) {
      std::cout << "edit\tstep=" << e.step << '\t' << hm::describe(m, e.action) << '\n';
    }
  } else {
    outcome = hm::run_observed(m, input, budget, record);
  }
  std::cout << hm::describe(outcome) << '\n';
  return hm::halted(outcome) ? kExitOk : kExitUnfinished;
}

int cmd_watch(const std::string& path, const std::string& input, std::uint64_t interval,
              std::uint64_t budget) {
  if (interval == 0) throw hm::Error(hm::ErrorKind::kInput, "interval must be at least 1");
  const Loaded loaded = load(path);
  auto process = loaded.description
                     ? hm::InductiveProcess::halting_decider(*loaded.description, input)
                     : hm::InductiveProcess::direct(loaded.doc->machine, input);

  std::signal(SIGINT, on_interrupt);
  // Runs in slices so an interrupt is noticed promptly.
  auto advance_to = [&](std::uint64_t target) {
    while (!process.finished() && !g_interrupted) {
      process.run_until(std::min(target, process.steps() + 4096));
      if (process.steps() >= target) break;
    }
  };
  // A snapshot at step s is printed only when the run goes on past s; the
  // summary line reports where it stopped.
  for (std::uint64_t s = 0; s < budget; s += interval) {
    advance_to(s);
    if (process.finished() || g_interrupted) break;
    std::cout << "step=" << s << "\tout=" << process.current_output()
              << "\tstatus=provisional" << std::endl;
  }
  advance_to(budget);
  const hm::InductiveOutcome o = process.outcome();
  std::cout << summary_line(o) << (g_interrupted ? "\tinterrupted" : "") << '\n';
  return o.certified() ? kExitOk : kExitUnfinished;
}

int cmd_halts(const std::string& path, const std::string& input, std::uint64_t budget) {
  const hm::InductiveOutcome o =
      hm::halting_limit_decider(load(path).as_description(), input, budget);
  std::cout << summary_line(o) << '\n';
  return o.certified() ? kExitOk : kExitUnfinished;
}

int cmd_limit(const std::string& name, std::uint64_t x, std::uint64_t stages,
              std::uint64_t window) {
  const auto f = hm::builtin_limit(name);
  if (!f) throw hm::Error(hm::ErrorKind::kInput, "unknown limit function '" + name + "'");
  const hm::LimitReport r = hm::limit_eval(*f, x, stages, window);
  for (const hm::StageGuess& g : r.guesses_log) {
    std::cout << "stage=" << g.stage << "\tguess=" << g.guess << '\n';
  }
  std::cout << "final=" << r.final_guess << "\tchanges=" << r.changes
            << "\tstages=" << r.stages_evaluated
            << "\tconverged=" << (r.converged_within_budget ? "yes" : "no") << '\n';
  return r.converged_within_budget ? kExitOk : kExitUnfinished;
}

int cmd_equiv(const std::string& a, const std::string& b, std::size_t max_len,
              std::uint64_t budget) {
  const hm::EquivalenceVerdict v =
      hm::observational_equiv(load(a).machine(), load(b).machine(), max_len, budget);
  if (const auto* c = std::get_if<hm::Counterexample>(&v)) {
    std::cout << "counterexample\tword=" << c->word << "\tfirst=" << hm::describe(c->first)
              << "\tsecond=" << hm::describe(c->second) << '\n';
  } else {
    std::cout << "equivalent\tmax_len=" << max_len << "\tbudget=" << budget << '\n';
  }
  return kExitOk;
}

int cmd_separate(const std::string& lang, std::uint32_t max_states, std::size_t max_len) {
  const hm::SeparationReport r =
      hm::separation_search(hm::named_sample(lang, max_len), max_states);
  std::cout << "lang\tmax_states\tmax_len\tsample\tsearched\twitness\n";
  std::cout << lang << '\t' << max_states << '\t' << max_len << '\t' << r.sample.size()
            << '\t' << r.dfas_searched << '\t';
  if (const auto* found = std::get_if<hm::DfaFound>(&r.witness)) {
    std::cout << found->dfa.to_string() << '\n';
  } else {
    std::cout << "none\n";
  }
  return kExitOk;
}

int cmd_bench(std::uint64_t steps) {
  const hm::Machine loop = hm::MachineBuilder("loop")
                               .alphabet("01")
                               .start("q0")
                               .rule("q0", "_", "q0", "_", "R")
                               .build();
  const auto begin = std::chrono::steady_clock::now();
  const hm::RunOutcome outcome = hm::run_bounded(loop, "", steps);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - begin;
  const double rate = static_cast<double>(hm::steps_of(outcome)) / elapsed.count();
  std::cout << "steps=" << hm::steps_of(outcome) << "\tseconds=" << elapsed.count()
            << "\trate=" << static_cast<std::uint64_t>(rate) << '\n';
  if (rate < 1e6) std::cerr << "warning: rate below 1000000 steps/s\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic, inductive, and reflexive Turing machine workbench"};
  app.require_subcommand(1);

  std::string file, file2, input, trace_path, decider, fn, lang;
  std::uint64_t budget = 1000, interval = 100, count = 10, index = 0, truth_budget = 10000,
                sim_budget = 0, x = 0, stages = 100, window = 10, bench_steps = 10'000'000;
  std::size_t max_len = 4;
  std::uint32_t max_states = 2;
  bool inductive = false;

  auto* run = app.add_subcommand("run", "Run a machine within a step budget");
  run->add_option("file", file, "Spec or description file")->required();
  run->add_option("--input", input, "Input word");
  run->add_option("--budget", budget, "Step budget");
  run->add_option("--trace", trace_path, "Write one trace record per step to a file (- for stdout)");
  run->add_flag("--inductive", inductive, "Treat a three-tape machine as inductive");

  auto* watch = app.add_subcommand("watch", "Print the current output of an inductive run periodically");
  watch->add_option("file", file, "Three-tape spec, or a description to decide halting for")
      ->required();
  watch->add_option("--input", input, "Input word");
  watch->add_option("--interval", interval, "Steps between snapshots");
  watch->add_option("--budget", budget, "Step budget");

  auto* enc = app.add_subcommand("encode", "Print the binary description of a machine");
  enc->add_option("file", file, "Spec file")->required();

  auto* dec = app.add_subcommand("decode", "Print a description as a spec");
  dec->add_option("file", file, "Description file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List the first valid descriptions");
  enumerate->add_option("--count", count, "How many")->required();

  auto* halts = app.add_subcommand("halts", "Run the halting limit-decider");
  halts->add_option("file", file, "Spec or description file")->required();
  halts->add_option("--input", input, "Input word");
  halts->add_option("--budget", budget, "Step budget");

  auto* diagonal = app.add_subcommand("diagonal", "Diagonal value at an enumeration index");
  diagonal->add_option("--index", index, "Index n; the input is the n-th word")->required();
  diagonal->add_option("--decider", decider, "budget:<B> or certified:<B>")->required();
  diagonal->add_option("--budget", budget, "Budget of the inner simulation");

  auto* audit = app.add_subcommand("audit", "Audit a candidate decider on the enumeration");
  audit->add_option("--machines", count, "Number of machines")->required();
  audit->add_option("--decider", decider, "budget:<B> or certified:<B>")->required();
  audit->add_option("--truth-budget", truth_budget, "Budget of the reference runs");
  audit->add_option("--sim-budget", sim_budget, "Budget of the diagonal's inner run (default: truth budget)");

  auto* limit = app.add_subcommand("limit-eval", "Evaluate a limit function");
  limit->add_option("--fn", fn, "constant, oscillator, halting, or divergence")->required();
  limit->add_option("--x", x, "Argument");
  limit->add_option("--stages", stages, "Last stage to evaluate");
  limit->add_option("--window", window, "Quiescence window");

  auto* equiv = app.add_subcommand("equiv", "Compare two machines on all short inputs");
  equiv->add_option("first", file, "Spec or description file")->required();
  equiv->add_option("second", file2, "Spec or description file")->required();
  equiv->add_option("--max-len", max_len, "Longest input");
  equiv->add_option("--budget", budget, "Step budget per run");

  auto* separate = app.add_subcommand("separate", "Search for a small DFA matching a language sample");
  separate->add_option("--lang", lang, "anbn, parity, or palindrome")->required();
  separate->add_option("--max-states", max_states, "Largest automaton");
  separate->add_option("--max-len", max_len, "Longest sample word");

  auto* bench = app.add_subcommand("bench", "Measure engine speed on the loop machine");
  bench->add_option("--steps", bench_steps, "Steps to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*run) return cmd_run(file, input, budget, trace_path, inductive);
    if (*watch) return cmd_watch(file, input, interval, budget);
    if (*enc) {
      std::cout << hm::encode(load(file).machine()).bits << '\n';
      return kExitOk;
    }
    if (*dec) {
      const Loaded loaded = load(file);
      if (!loaded.description) {
        throw hm::Error(hm::ErrorKind::kInput, file + " is not a description file");
      }
      std::cout << hm::unparse(hm::decode(*loaded.description));
      return kExitOk;
    }
    if (*enumerate) {
      hm::MachineEnumerator e;
      for (std::uint64_t i = 0; i < count; ++i) std::cout << e.next().bits << '\n';
      return kExitOk;
    }
    if (*halts) return cmd_halts(file, input, budget);
    if (*diagonal) {
      std::cout << hm::diagonalize(hm::parse_decider(decider), hm::index_word(index), budget)
                << '\n';
      return kExitOk;
    }
    if (*audit) {
      const auto report = hm::audit_decider(hm::parse_decider(decider), count, truth_budget,
                                            sim_budget == 0 ? truth_budget : sim_budget);
      std::cout << hm::to_tsv(report);
      return kExitOk;
    }
    if (*limit) return cmd_limit(fn, x, stages, window);
    if (*equiv) return cmd_equiv(file, file2, max_len, budget);
    if (*separate) return cmd_separate(lang, max_states, max_len);
    if (*bench) return cmd_bench(bench_steps);
  } catch (const hm::ParseError& e) {
    std::cerr << file << ":" << e.what() << '\n';
    return kExitParse;
  } catch (const hm::InvalidEncoding& e) {
    std::cerr << "invalid description: " << e.what() << '\n';
    return kExitParse;
  } catch (const hm::Error& e) {
    std::cerr << hm::to_string(e.kind()) << " error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
