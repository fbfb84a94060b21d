#include "hypermachine/certify.h"

#include "hypermachine/error.h"

namespace hypermachine {

namespace {

class DirectSource : public RunSource {
 public:
  DirectSource(std::shared_ptr<const Machine> machine, std::string input)
      : machine_(std::move(machine)),
        input_(std::move(input)),
        config_(initial_configuration(*machine_, input_)) {}

  const Configuration& configuration() const override { return config_; }
  int tape_count() const override { return machine_->tape_count(); }
  bool at_final() const override { return machine_->is_final(config_.state); }
  const Transition* current_rule() const override {
    return machine_->find_rule(config_.state, config_.scanned());
  }
  void advance() override {
    detail::apply(*current_rule(), config_, machine_->tape_count());
  }
  RunOutcome halt_outcome() const override {
    return detail::halt_outcome(*machine_, config_);
  }
  std::unique_ptr<RunSource> fresh() const override {
    return std::make_unique<DirectSource>(machine_, input_);
  }

 private:
  std::shared_ptr<const Machine> machine_;
  std::string input_;
  Configuration config_;
};

class UniversalSource : public RunSource {
 public:
  UniversalSource(Description description, std::string input)
      : description_(std::move(description)),
        input_(std::move(input)),
        sim_(description_, input_) {}

  const Configuration& configuration() const override { return sim_.configuration(); }
  int tape_count() const override { return 1; }
  bool at_final() const override { return sim_.is_final(sim_.configuration().state); }
  const Transition* current_rule() const override {
    const Configuration& c = sim_.configuration();
    return sim_.find_rule(c.state, c.tapes[0].read(c.heads[0]));
  }
  void advance() override { sim_.step(); }
  RunOutcome halt_outcome() const override { return sim_.outcome(); }
  std::unique_ptr<RunSource> fresh() const override {
    return std::make_unique<UniversalSource>(description_, input_);
  }

 private:
  Description description_;
  std::string input_;
  UniversalSimulator sim_;
};

// True when every cell of `tape` strictly beyond `head` in direction `move`
// is blank.
bool blank_beyond(const Tape& tape, std::int64_t head, Move move) {
  if (move == Move::kRight) {
    for (auto pos = tape.stored_end() - 1; pos > head; --pos) {
      if (tape.read(pos) != kBlank) return false;
    }
  } else {
    for (auto pos = tape.stored_begin(); pos < head; ++pos) {
      if (tape.read(pos) != kBlank) return false;
    }
  }
  return true;
}

}  // namespace

std::unique_ptr<RunSource> direct_source(const Machine& machine, std::string_view input) {
  return std::make_unique<DirectSource>(std::make_shared<const Machine>(machine),
                                        std::string(input));
}

std::unique_ptr<RunSource> universal_source(const Description& description,
                                            std::string_view input) {
  return std::make_unique<UniversalSource>(description, std::string(input));
}

std::uint64_t onset_of(const NonHaltingCertificate& certificate) {
  if (const auto* c = std::get_if<ConfigurationCycle>(&certificate)) {
    return c->first_repeat_step;
  }
  return std::get<BlankRunaway>(certificate).onset_step;
}

std::string describe(const NonHaltingCertificate& certificate) {
  if (const auto* c = std::get_if<ConfigurationCycle>(&certificate)) {
    return "cycle period=" + std::to_string(c->period) +
           " first_repeat=" + std::to_string(c->first_repeat_step);
  }
  const auto& r = std::get<BlankRunaway>(certificate);
  return "runaway state=" + std::to_string(r.state) + " direction=" +
         move_char(r.direction) + " onset=" + std::to_string(r.onset_step);
}

std::optional<BlankRunaway> blank_runaway_at(const RunSource& source) {
  const Transition* t = source.current_rule();
  const Configuration& c = source.configuration();
  if (t == nullptr || t->next != c.state) return std::nullopt;
  const int k = source.tape_count();
  std::optional<Move> first_move;
  for (int i = 0; i < k; ++i) {
    const SymbolId read = c.tapes[i].read(c.heads[i]);
    if (t->move[i] == Move::kStay) {
      if (t->write[i] != read) return std::nullopt;
    } else {
      if (read != kBlank || t->write[i] != kBlank) return std::nullopt;
      if (!first_move) first_move = t->move[i];
    }
  }
  if (!first_move) return std::nullopt;
  for (int i = 0; i < k; ++i) {
    if (t->move[i] != Move::kStay && !blank_beyond(c.tapes[i], c.heads[i], t->move[i])) {
      return std::nullopt;
    }
  }
  BlankRunaway r;
  r.state = c.state;
  r.direction = *first_move;
  for (int i = 0; i < k; ++i) r.moves[i] = t->move[i];
  r.onset_step = c.step;
  return r;
}

std::optional<NonHaltingCertificate> NonHaltingDetector::observe(const RunSource& source) {
  if (auto runaway = blank_runaway_at(source)) return *runaway;

  const Configuration& c = source.configuration();
  if (snapshot_ && same_instant(c, *snapshot_)) {
    const std::uint64_t period = c.step - snapshot_->step;
    // Replay with a lead of `period` steps until the two copies coincide.
    auto lead = source.fresh();
    auto lag = source.fresh();
    for (std::uint64_t i = 0; i < period; ++i) lead->advance();
    while (!same_instant(lead->configuration(), lag->configuration())) {
      lead->advance();
      lag->advance();
    }
    return ConfigurationCycle{period, lag->configuration().step};
  }
  if (!snapshot_ || distance_ == power_) {
    if (snapshot_) power_ *= 2;
    snapshot_ = c;
    distance_ = 0;
  }
  ++distance_;
  return std::nullopt;
}

CertifyVerdict certify_nonhalting(RunSource& source, std::uint64_t budget) {
  if (budget == 0) throw Error(ErrorKind::kInput, "step budget must be at least 1");
  NonHaltingDetector detector;
  for (;;) {
    if (source.halted()) return HaltsAt{source.configuration().step};
    if (auto certificate = detector.observe(source)) return Certified{*certificate};
    if (source.configuration().step >= budget) return Unknown{};
    source.advance();
  }
}

CertifyVerdict certify_nonhalting(const Machine& machine, std::string_view input,
                                  std::uint64_t budget) {
  auto source = direct_source(machine, input);
  return certify_nonhalting(*source, budget);
}

CertifyVerdict certify_nonhalting(const Description& description,
                                  std::string_view input, std::uint64_t budget) {
  auto source = universal_source(description, input);
  return certify_nonhalting(*source, budget);
}

}  // namespace hypermachine
