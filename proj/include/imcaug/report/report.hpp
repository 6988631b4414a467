#ifndef IMCAUG_REPORT_REPORT_HPP
#define IMCAUG_REPORT_REPORT_HPP

#include <string>
#include <vector>

#include "imcaug/engine/engine.hpp"

namespace imcaug::report {

// One verification run, flattened for tables. Field order matches the
// CSV columns.
struct RunRecord {
  std::string task;
  std::string algo;
  std::string verdict;
  int k = 0;
  int itp_queries = 0;
  int sat_queries = 0;
  double solver_time_s = 0;
  double itp_time_s = 0;
  double wall_time_s = 0;
  uint64_t seed = 42;

  bool operator==(const RunRecord&) const = default;
};

RunRecord make_record(const std::string& task, const engine::EngineConfig& cfg,
                      const engine::VerdictReport& report);

std::string to_json(const RunRecord& r);
std::string to_json(const std::vector<RunRecord>& rs);
RunRecord record_from_json(const std::string& text);
std::vector<RunRecord> records_from_json(const std::string& text);

std::string csv_header();
std::string to_csv_row(const RunRecord& r);

std::string human_table(const std::vector<RunRecord>& rs);

// Counterexample rendering: one line per step with the state and the
// nondet values consumed, parseable enough for replay by eye.
std::string trace_to_string(const lang::Program& p, const lang::Trace& trace);

}  // namespace imcaug::report

#endif
