#pragma once

// Inductive machines: the result is the output-tape word once it stops
// changing, whether or not the machine halts.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypermachine/certify.h"
#include "hypermachine/codec.h"
#include "hypermachine/machine.h"

namespace hypermachine {

struct Observation {
  std::uint64_t step = 0;
  std::string output;

  bool operator==(const Observation&) const = default;
};

// Change points of the trimmed output: entry 0 is step 0, later entries only
// where the output differs from the previous entry.
using ObservationLog = std::vector<Observation>;

struct Halted {
  bool operator==(const Halted&) const = default;
};
using StabilityReason = std::variant<Halted, NonHaltingCertificate>;
struct CertifiedStable {
  StabilityReason reason;
};
struct Provisional {};
using InductiveStatus = std::variant<CertifiedStable, Provisional>;

struct InductiveOutcome {
  std::string current_output;
  std::uint64_t last_change_step = 0;
  std::uint64_t steps_executed = 0;
  InductiveStatus status = Provisional{};
  ObservationLog log;
  // Set when the run provably never halts but its output keeps cycling, so
  // it never stabilizes.
  std::optional<NonHaltingCertificate> unstable_certificate;

  bool certified() const { return std::holds_alternative<CertifiedStable>(status); }
};

std::string describe(const InductiveStatus& status);

// Step-by-step inductive run. The output of a direct run is the trimmed
// output tape; the halting decider's output is "0" while the simulated
// machine runs and "1" once it halts.
class InductiveProcess {
 public:
  // Throws Error(kUnsupportedClass) unless the machine has three tapes.
  static InductiveProcess direct(const Machine& machine, std::string_view input);
  static InductiveProcess halting_decider(const Description& description,
                                          std::string_view input);

  // Runs until step `limit`, a halt, or a certificate. `on_config` sees every
  // configuration reached, including the current one on the first call.
  void run_until(std::uint64_t limit,
                 const std::function<void(const Configuration&,
                                          const std::string& output)>& on_config = {});

  bool finished() const { return finished_; }
  std::uint64_t steps() const { return source_->configuration().step; }
  const std::string& current_output() const { return log_.back().output; }
  const Configuration& configuration() const { return source_->configuration(); }
  InductiveOutcome outcome() const;

 private:
  InductiveProcess(std::unique_ptr<RunSource> source, std::optional<Alphabet> alphabet);

  std::string output_now() const;
  void record();
  // Checks the current configuration; returns true once the run is over.
  bool settle();

  std::unique_ptr<RunSource> source_;
  std::optional<Alphabet> alphabet_;  // set for direct runs
  NonHaltingDetector detector_;
  ObservationLog log_;
  InductiveStatus status_ = Provisional{};
  std::optional<NonHaltingCertificate> unstable_;
  bool finished_ = false;
  bool visited_ = false;  // current configuration already reported
};

// Throws Error(kUnsupportedClass) unless the machine has three tapes.
InductiveOutcome inductive_run(const Machine& machine, std::string_view input,
                               std::uint64_t budget);

// Throws InvalidEncoding for a malformed description.
InductiveOutcome halting_limit_decider(const Description& description,
                                       std::string_view input, std::uint64_t budget);

}  // namespace hypermachine
