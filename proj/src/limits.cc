#include "hypermachine/limits.h"

#include <map>
#include <memory>
#include <mutex>

#include "hypermachine/error.h"

namespace hypermachine {

namespace {

// Answers "halted within t steps?" for growing and shrinking t by advancing
// one simulator and remembering the halt step.
class HaltingProbe {
 public:
  HaltingProbe(const Description& description, const std::string& input)
      : sim_(description, input) {}

  bool halted_within(std::uint64_t t) {
    std::lock_guard<std::mutex> lock(mu_);
    while (!halt_step_ && sim_.steps() < t) {
      if (!sim_.step()) break;
    }
    if (!halt_step_ && sim_.halted()) halt_step_ = sim_.steps();
    return halt_step_ && *halt_step_ <= t;
  }

 private:
  std::mutex mu_;
  UniversalSimulator sim_;
  std::optional<std::uint64_t> halt_step_;
};

// Probes for the x-th enumerated machine on index_word(x), built on demand.
class EnumeratedProbes {
 public:
  bool halted_within(std::uint64_t x, std::uint64_t t) {
    std::shared_ptr<HaltingProbe> probe;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = probes_.find(x);
      if (it == probes_.end()) {
        const Description d = enumerate_machines(x + 1)[x];
        it = probes_.emplace(x, std::make_shared<HaltingProbe>(d, index_word(x))).first;
      }
      probe = it->second;
    }
    return probe->halted_within(t);
  }

 private:
  std::mutex mu_;
  std::map<std::uint64_t, std::shared_ptr<HaltingProbe>> probes_;
};

}  // namespace

LimitReport limit_eval(const LimitFunction& f, std::uint64_t x,
                       std::uint64_t stage_budget, std::uint64_t window) {
  if (window < 1 || stage_budget < window) {
    throw Error(ErrorKind::kInput, "need stage budget >= window >= 1, got budget " +
                                       std::to_string(stage_budget) + " and window " +
                                       std::to_string(window));
  }
  LimitReport report;
  report.x = x;
  for (std::uint64_t t = 0; t <= stage_budget; ++t) {
    std::string guess;
    try {
      guess = f.guess(x, t);
    } catch (const std::exception& e) {
      throw Error(ErrorKind::kEvaluation, "guess of " + f.name + " failed at x=" +
                                              std::to_string(x) + ", t=" +
                                              std::to_string(t) + ": " + e.what());
    }
    if (report.guesses_log.empty() || report.guesses_log.back().guess != guess) {
      if (!report.guesses_log.empty()) ++report.changes;
      report.guesses_log.push_back({t, std::move(guess)});
    }
  }
  report.stages_evaluated = stage_budget + 1;
  report.final_guess = report.guesses_log.back().guess;
  report.converged_within_budget = report.guesses_log.back().stage <= stage_budget - window;
  return report;
}

LimitFunction halting_as_limit(const Description& description, std::string input) {
  auto probe = std::make_shared<HaltingProbe>(description, input);
  return {"halting",
          [probe](std::uint64_t, std::uint64_t t) -> std::string {
            return probe->halted_within(t) ? "1" : "0";
          },
          "Σ1"};
}

LimitFunction divergence_as_limit(const Description& description, std::string input) {
  auto probe = std::make_shared<HaltingProbe>(description, input);
  return {"divergence",
          [probe](std::uint64_t, std::uint64_t t) -> std::string {
            return probe->halted_within(t) ? "0" : "1";
          },
          "Π1"};
}

LimitFunction constant_limit(std::string value) {
  return {"constant", [value](std::uint64_t, std::uint64_t) { return value; }, "Δ1"};
}

LimitFunction oscillator_limit() {
  return {"oscillator",
          [](std::uint64_t, std::uint64_t t) { return std::string(1, t % 2 ? '1' : '0'); },
          "none"};
}

std::optional<LimitFunction> builtin_limit(std::string_view name) {
  if (name == "constant") return constant_limit("1");
  if (name == "oscillator") return oscillator_limit();
  if (name == "halting" || name == "divergence") {
    auto probes = std::make_shared<EnumeratedProbes>();
    const bool halting = name == "halting";
    return LimitFunction{std::string(name),
                         [probes, halting](std::uint64_t x, std::uint64_t t) {
                           const bool h = probes->halted_within(x, t);
                           return std::string(h == halting ? "1" : "0");
                         },
                         halting ? "Σ1" : "Π1"};
  }
  return std::nullopt;
}

std::vector<std::string> builtin_limit_names() {
  return {"constant", "divergence", "halting", "oscillator"};
}

}  // namespace hypermachine
