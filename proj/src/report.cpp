#include "imcaug/report/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace imcaug::report {

using nlohmann::json;

RunRecord make_record(const std::string& task, const engine::EngineConfig& cfg,
                      const engine::VerdictReport& report) {
  RunRecord r;
  r.task = task;
  r.algo = engine::algo_name(cfg.algo);
  r.verdict = engine::verdict_name(report.verdict);
  r.k = report.stats.final_k;
  r.itp_queries = report.stats.itp_queries;
  r.sat_queries = report.stats.sat_queries;
  r.solver_time_s = report.stats.solver_time_s;
  r.itp_time_s = report.stats.itp_time_s;
  r.wall_time_s = report.stats.wall_time_s;
  r.seed = cfg.seed;
  return r;
}

namespace {

json to_json_obj(const RunRecord& r) {
  return json{{"task", r.task},
              {"algo", r.algo},
              {"verdict", r.verdict},
              {"k", r.k},
              {"itp_queries", r.itp_queries},
              {"sat_queries", r.sat_queries},
              {"solver_time_s", r.solver_time_s},
              {"itp_time_s", r.itp_time_s},
              {"wall_time_s", r.wall_time_s},
              {"seed", r.seed}};
}

RunRecord from_json_obj(const json& j) {
  RunRecord r;
  r.task = j.at("task").get<std::string>();
  r.algo = j.at("algo").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  r.k = j.at("k").get<int>();
  r.itp_queries = j.at("itp_queries").get<int>();
  r.sat_queries = j.at("sat_queries").get<int>();
  r.solver_time_s = j.at("solver_time_s").get<double>();
  r.itp_time_s = j.at("itp_time_s").get<double>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.seed = j.at("seed").get<uint64_t>();
  return r;
}

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

std::string to_json(const RunRecord& r) { return to_json_obj(r).dump(2); }

std::string to_json(const std::vector<RunRecord>& rs) {
  json arr = json::array();
  for (const auto& r : rs) arr.push_back(to_json_obj(r));
  return arr.dump(2);
}

RunRecord record_from_json(const std::string& text) {
  return from_json_obj(json::parse(text));
}

std::vector<RunRecord> records_from_json(const std::string& text) {
  std::vector<RunRecord> out;
  for (const auto& j : json::parse(text)) out.push_back(from_json_obj(j));
  return out;
}

std::string csv_header() {
  return "task,algo,verdict,k,itp_queries,sat_queries,solver_time_s,"
         "itp_time_s,wall_time_s,seed";
}

std::string to_csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.task << "," << r.algo << "," << r.verdict << "," << r.k << ","
     << r.itp_queries << "," << r.sat_queries << "," << fixed6(r.solver_time_s)
     << "," << fixed6(r.itp_time_s) << "," << fixed6(r.wall_time_s) << ","
     << r.seed;
  return os.str();
}

std::string human_table(const std::vector<RunRecord>& rs) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "task" << std::setw(8) << "algo"
     << std::setw(9) << "verdict" << std::right << std::setw(5) << "k"
     << std::setw(7) << "#itp" << std::setw(7) << "#sat" << std::setw(12)
     << "solver(s)" << std::setw(12) << "itp(s)" << std::setw(12) << "wall(s)"
     << std::setw(7) << "seed" << "\n";
  for (const auto& r : rs) {
    os << std::left << std::setw(24) << r.task << std::setw(8) << r.algo
       << std::setw(9) << r.verdict << std::right << std::setw(5) << r.k
       << std::setw(7) << r.itp_queries << std::setw(7) << r.sat_queries
       << std::setw(12) << fixed6(r.solver_time_s) << std::setw(12)
       << fixed6(r.itp_time_s) << std::setw(12) << fixed6(r.wall_time_s)
       << std::setw(7) << r.seed << "\n";
  }
  return os.str();
}

std::string trace_to_string(const lang::Program& p, const lang::Trace& trace) {
  std::ostringstream os;
  os << "# counterexample: " << trace.size() - 1 << " loop iteration(s)\n";
  for (size_t t = 0; t < trace.size(); ++t) {
    os << "step " << t << ":";
    for (size_t i = 0; i < p.vars.size(); ++i) {
      os << " " << p.vars[i].name << "=" << trace[t].state[i];
    }
    if (!trace[t].nondets.empty()) {
      os << " ;";
      for (const auto& [idx, v] : trace[t].nondets) {
        os << " nondet#" << idx << "=" << v;
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace imcaug::report
