#include "hypermachine/inductive.h"

#include "hypermachine/error.h"

namespace hypermachine {

std::string describe(const InductiveStatus& status) {
  if (const auto* s = std::get_if<CertifiedStable>(&status)) {
    if (std::holds_alternative<Halted>(s->reason)) return "certified-stable halted";
    return "certified-stable " + describe(std::get<NonHaltingCertificate>(s->reason));
  }
  return "provisional";
}

InductiveProcess::InductiveProcess(std::unique_ptr<RunSource> source,
                                   std::optional<Alphabet> alphabet)
    : source_(std::move(source)), alphabet_(std::move(alphabet)) {
  log_.push_back({0, output_now()});
}

InductiveProcess InductiveProcess::direct(const Machine& machine, std::string_view input) {
  if (machine.tape_count() != 3) {
    throw Error(ErrorKind::kUnsupportedClass,
                "inductive runs need a three-tape machine; " + machine.name() + " has " +
                    std::to_string(machine.tape_count()));
  }
  return InductiveProcess(direct_source(machine, input), machine.alphabet());
}

InductiveProcess InductiveProcess::halting_decider(const Description& description,
                                                   std::string_view input) {
  return InductiveProcess(universal_source(description, input), std::nullopt);
}

std::string InductiveProcess::output_now() const {
  if (alphabet_) return tape_word(*alphabet_, source_->configuration().tapes[2]);
  return source_->halted() ? "1" : "0";
}

void InductiveProcess::record() {
  std::string out = output_now();
  if (out != log_.back().output) log_.push_back({steps(), std::move(out)});
}

bool InductiveProcess::settle() {
  if (source_->halted()) {
    status_ = CertifiedStable{Halted{}};
    return true;
  }
  if (auto certificate = detector_.observe(*source_)) {
    // A cycle that rewrites the output keeps rewriting it forever.
    if (log_.back().step <= onset_of(*certificate)) {
      status_ = CertifiedStable{*certificate};
    } else {
      unstable_ = *certificate;
    }
    return true;
  }
  return false;
}

void InductiveProcess::run_until(
    std::uint64_t limit,
    const std::function<void(const Configuration&, const std::string&)>& on_config) {
  while (!finished_) {
    if (!visited_) {
      visited_ = true;
      if (on_config) on_config(source_->configuration(), current_output());
      if (settle()) {
        finished_ = true;
        return;
      }
    }
    if (steps() >= limit) return;

    bool may_change = true;
    if (alphabet_) {
      const Configuration& c = source_->configuration();
      may_change = source_->current_rule()->write[2] != c.tapes[2].read(c.heads[2]);
    }
    source_->advance();
    visited_ = false;
    if (may_change || !alphabet_) record();
  }
}

InductiveOutcome InductiveProcess::outcome() const {
  InductiveOutcome out;
  out.current_output = log_.back().output;
  out.last_change_step = log_.back().step;
  out.steps_executed = steps();
  out.status = status_;
  out.log = log_;
  out.unstable_certificate = unstable_;
  return out;
}

InductiveOutcome inductive_run(const Machine& machine, std::string_view input,
                               std::uint64_t budget) {
  InductiveProcess process = InductiveProcess::direct(machine, input);
  process.run_until(budget);
  return process.outcome();
}

InductiveOutcome halting_limit_decider(const Description& description,
                                       std::string_view input, std::uint64_t budget) {
  InductiveProcess process = InductiveProcess::halting_decider(description, input);
  process.run_until(budget);
  return process.outcome();
}

}  // namespace hypermachine
