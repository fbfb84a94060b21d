#pragma once

// Sound, incomplete evidence that a run never halts.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "hypermachine/codec.h"
#include "hypermachine/engine.h"
#include "hypermachine/machine.h"

namespace hypermachine {

// A run that can be advanced one step at a time and restarted from scratch.
// Implemented over a Machine (direct engine) and over a Description
// (universal simulator).
class RunSource {
 public:
  virtual ~RunSource() = default;

  virtual const Configuration& configuration() const = 0;
  virtual int tape_count() const = 0;
  virtual bool at_final() const = 0;
  // Rule applicable to the current configuration; nullptr when none applies.
  virtual const Transition* current_rule() const = 0;
  // Applies current_rule(). Only valid when it exists and !at_final().
  virtual void advance() = 0;
  // Outcome of a halted run.
  virtual RunOutcome halt_outcome() const = 0;
  // Same run, back at step 0.
  virtual std::unique_ptr<RunSource> fresh() const = 0;

  bool halted() const { return at_final() || current_rule() == nullptr; }
};

std::unique_ptr<RunSource> direct_source(const Machine& machine, std::string_view input);
std::unique_ptr<RunSource> universal_source(const Description& description,
                                            std::string_view input);

// The configurations at first_repeat_step and first_repeat_step + period are
// equal (step counter aside); first_repeat_step is the earliest such step.
struct ConfigurationCycle {
  std::uint64_t period = 0;
  std::uint64_t first_repeat_step = 0;

  bool operator==(const ConfigurationCycle&) const = default;
};

// From onset_step on, the machine stays in `state` and re-fires one rule
// forever: every moving tape reads and writes blanks beyond its last non-blank
// cell, every other tape rewrites the symbol it scans. `direction` is the move
// of the first moving tape; `moves` has one entry per tape.
struct BlankRunaway {
  StateId state = 0;
  Move direction = Move::kRight;
  MoveTuple moves{};
  std::uint64_t onset_step = 0;

  bool operator==(const BlankRunaway&) const = default;
};

using NonHaltingCertificate = std::variant<ConfigurationCycle, BlankRunaway>;

// Step from which the certificate's pattern holds.
std::uint64_t onset_of(const NonHaltingCertificate& certificate);
std::string describe(const NonHaltingCertificate& certificate);

// Watches one run configuration by configuration. Cycles are found with
// Brent's power-of-two snapshots; the exact start of the cycle is recovered by
// replaying a fresh copy of the run.
class NonHaltingDetector {
 public:
  // `source` is at a non-final configuration that has an applicable rule.
  std::optional<NonHaltingCertificate> observe(const RunSource& source);

 private:
  std::optional<Configuration> snapshot_;
  std::uint64_t power_ = 1;
  std::uint64_t distance_ = 0;  // steps since the snapshot
};

// Checks the blank-runaway pattern at the source's current configuration.
std::optional<BlankRunaway> blank_runaway_at(const RunSource& source);

struct Certified {
  NonHaltingCertificate certificate;
};
struct HaltsAt {
  std::uint64_t steps = 0;
};
struct Unknown {};
using CertifyVerdict = std::variant<Certified, HaltsAt, Unknown>;

// Runs at most `budget` steps. Throws Error(kInput) for budget 0.
CertifyVerdict certify_nonhalting(RunSource& source, std::uint64_t budget);
CertifyVerdict certify_nonhalting(const Machine& machine, std::string_view input,
                                  std::uint64_t budget);
CertifyVerdict certify_nonhalting(const Description& description,
                                  std::string_view input, std::uint64_t budget);

}  // namespace hypermachine
