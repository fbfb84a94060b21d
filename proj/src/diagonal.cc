#include "hypermachine/diagonal.h"

#include <charconv>

#include "hypermachine/certify.h"
#include "hypermachine/error.h"

namespace hypermachine {

namespace {

std::uint64_t parse_count(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::kInput, std::string(what) + " is not a count: '" +
                                       std::string(text) + "'");
  }
  return value;
}

std::string outcome_field(const RunOutcome& outcome) {
  if (std::holds_alternative<HaltedWithResult>(outcome)) return "halted";
  if (std::holds_alternative<HaltedResultless>(outcome)) return "resultless";
  return "running";
}

AuditRow audit_row(const CandidateDecider& decider, std::uint64_t index,
                   Description description, std::string input,
                   std::uint64_t truth_budget, std::uint64_t sim_budget) {
  AuditRow row;
  row.index = index;
  row.claims_halt = decider(description, input);
  row.observed = universal_run(description, input, truth_budget);
  row.diagonal = diagonal_value(decider, description, input, sim_budget);
  row.completed = !row.diagonal.claims_halt || halted(*row.diagonal.inner);

  const auto* result = std::get_if<HaltedWithResult>(&row.observed);
  if (result != nullptr && result->result == row.diagonal.value) {
    row.contradiction = true;
  } else if (!row.claims_halt && halted(row.observed)) {
    row.contradiction = true;
  } else if (row.claims_halt && !halted(row.observed)) {
    row.contradiction = std::holds_alternative<Certified>(
        certify_nonhalting(description, input, truth_budget));
  }
  row.description = std::move(description);
  row.input = std::move(input);
  return row;
}

void check_budgets(std::uint64_t truth_budget, std::uint64_t sim_budget) {
  if (sim_budget == 0) throw Error(ErrorKind::kInput, "simulation budget must be at least 1");
  if (truth_budget < sim_budget) {
    throw Error(ErrorKind::kInput, "truth budget " + std::to_string(truth_budget) +
                                       " is below simulation budget " +
                                       std::to_string(sim_budget));
  }
}

}  // namespace

CandidateDecider budget_decider(std::uint64_t budget) {
  if (budget == 0) throw Error(ErrorKind::kInput, "decider budget must be at least 1");
  return [budget](const Description& d, std::string_view input) {
    return halted(universal_run(d, input, budget));
  };
}

CandidateDecider certified_decider(std::uint64_t budget) {
  if (budget == 0) throw Error(ErrorKind::kInput, "decider budget must be at least 1");
  return [budget](const Description& d, std::string_view input) {
    return std::holds_alternative<HaltsAt>(certify_nonhalting(d, input, budget));
  };
}

CandidateDecider parse_decider(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view arg = spec.substr(colon + 1);
    if (kind == "budget") return budget_decider(parse_count(arg, "decider budget"));
    if (kind == "certified") return certified_decider(parse_count(arg, "decider budget"));
  }
  throw Error(ErrorKind::kInput, "unknown decider '" + std::string(spec) +
                                     "'; expected budget:<B> or certified:<B>");
}

DiagonalValue diagonal_value(const CandidateDecider& decider,
                             const Description& description, std::string_view input,
                             std::uint64_t budget) {
  DiagonalValue out;
  out.claims_halt = decider(description, input);
  if (!out.claims_halt) {
    out.value = "0";
    return out;
  }
  out.inner = universal_run(description, input, budget);
  const auto* result = std::get_if<HaltedWithResult>(&*out.inner);
  out.value = (result != nullptr && result->result == "1") ? "0" : "1";
  out.tie_break = !halted(*out.inner);
  return out;
}

std::string diagonalize(const CandidateDecider& decider, std::string_view input,
                        std::uint64_t budget) {
  const std::uint64_t n = word_index(input);
  const std::vector<Description> machines = enumerate_machines(n + 1);
  return diagonal_value(decider, machines[n], input, budget).value;
}

std::size_t AuditReport::contradictions() const {
  std::size_t count = 0;
  for (const AuditRow& row : rows) count += row.contradiction ? 1 : 0;
  return count;
}

AuditReport audit_decider(const CandidateDecider& decider, std::uint64_t machine_count,
                          std::uint64_t truth_budget, std::uint64_t sim_budget) {
  check_budgets(truth_budget, sim_budget);
  AuditReport report{truth_budget, sim_budget, {}};
  MachineEnumerator enumerator;
  for (std::uint64_t n = 0; n < machine_count; ++n) {
    report.rows.push_back(audit_row(decider, n, enumerator.next(), index_word(n),
                                    truth_budget, sim_budget));
  }
  return report;
}

AuditReport audit_cases(const CandidateDecider& decider,
                        const std::vector<AuditCase>& cases, std::uint64_t truth_budget,
                        std::uint64_t sim_budget) {
  check_budgets(truth_budget, sim_budget);
  AuditReport report{truth_budget, sim_budget, {}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    report.rows.push_back(audit_row(decider, i, cases[i].description, cases[i].input,
                                    truth_budget, sim_budget));
  }
  return report;
}

std::string to_tsv(const AuditReport& report) {
  std::string out =
      "index\tinput\tdescription\tclaim\tobserved\tresult\tdiagonal\tcompleted\t"
      "tie_break\tcontradiction\n";
  for (const AuditRow& row : report.rows) {
    const auto* result = std::get_if<HaltedWithResult>(&row.observed);
    out += std::to_string(row.index) + '\t' + row.input + '\t' + row.description.bits +
           '\t' + (row.claims_halt ? "halts" : "runs") + '\t' +
           outcome_field(row.observed) + '\t' + (result ? result->result : "-") + '\t' +
           row.diagonal.value + '\t' + (row.completed ? "1" : "0") + '\t' +
           (row.diagonal.tie_break ? "1" : "0") + '\t' +
           (row.contradiction ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace hypermachine
