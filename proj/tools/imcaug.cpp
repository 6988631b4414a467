// imcaug: interpolation-based model checking with injected interval
// invariants, over a single-loop bitvector language.
//
// Subcommands:
//   verify   check one .slp task with bmc / imc / imc-f / imc-i
//   compare  run several algorithms over a directory of tasks
//   oracle   explicit-state ground truth for small widths
//   gen      emit a seed-deterministic random task corpus

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "imcaug/df/invariant.hpp"
#include "imcaug/engine/engine.hpp"
#include "imcaug/gen/generator.hpp"
#include "imcaug/lang/interp.hpp"
#include "imcaug/lang/parser.hpp"
#include "imcaug/oracle/explore.hpp"
#include "imcaug/report/report.hpp"

namespace fs = std::filesystem;
using namespace imcaug;

namespace {

struct CommonFlags {
  std::string algo = "imc-i";
  int kmax = 100;
  unsigned width = 0;  // 0: keep declared widths
  uint64_t seed = 42;
  int df_level = 0;
  std::string df_mode = "sync";
  double df_budget = 0;
  std::string inv_file;
  std::string dump_inv;
  std::string format = "human";
  bool dump_cnf = false;
  bool dump_itp = false;
  int64_t conflict_budget = 10'000'000;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_algo) {
  if (with_algo) {
    cmd->add_option("--algo", f.algo, "bmc|imc|imc-f|imc-i")
        ->check(CLI::IsMember({"bmc", "imc", "imc-f", "imc-i"}));
  }
  cmd->add_option("--kmax", f.kmax, "unrolling bound")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--width", f.width, "override declared bit widths")
      ->check(CLI::IsMember({4, 8, 16, 32}));
  cmd->add_option("--seed", f.seed, "SAT decision seed");
  cmd->add_option("--df-level", f.df_level, "invariant refinement level")
      ->check(CLI::Range(0, 3));
  cmd->add_option("--df-mode", f.df_mode, "sync|async")
      ->check(CLI::IsMember({"sync", "async"}));
  cmd->add_option("--df-budget", f.df_budget, "invariant generator budget (s)");
  cmd->add_option("--inv-file", f.inv_file, "inject invariant from file");
  cmd->add_option("--dump-inv", f.dump_inv,
                  "write the invariant used to a file");
  cmd->add_option("--format", f.format, "human|json|csv")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_flag("--dump-cnf", f.dump_cnf, "dump DIMACS per query");
  cmd->add_flag("--dump-itp", f.dump_itp, "print interpolants");
  cmd->add_option("--conflict-budget", f.conflict_budget,
                  "conflicts per SAT query");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

engine::EngineConfig make_config(const CommonFlags& f) {
  engine::EngineConfig cfg;
  cfg.algo = *engine::algo_from_name(f.algo);
  cfg.k_max = f.kmax;
  cfg.seed = f.seed;
  cfg.conflict_budget = f.conflict_budget;
  cfg.dump_cnf = f.dump_cnf;
  cfg.dump_itp = f.dump_itp;
  return cfg;
}

std::unique_ptr<df::InvariantProvider> make_provider(
    const CommonFlags& f, const lang::Program& p,
    const enc::TransitionSystem& ts, const engine::EngineConfig& cfg) {
  if (cfg.algo == engine::Algo::BMC || cfg.algo == engine::Algo::IMC) {
    return std::make_unique<df::TopProvider>(p);
  }
  sat::SolverOptions gate_opts;
  gate_opts.seed = cfg.seed;
  gate_opts.conflict_budget = cfg.conflict_budget;
  if (!f.inv_file.empty()) {
    df::IntervalEnv env = df::parse_invariant_file(read_file(f.inv_file), p);
    return std::make_unique<df::FileProvider>(env, p, ts, gate_opts);
  }
  if (f.df_mode == "async") {
    return std::make_unique<df::AsyncProvider>(p, ts, f.df_level, f.df_budget,
                                               gate_opts);
  }
  return std::make_unique<df::SyncProvider>(p, ts, f.df_level, gate_opts);
}

struct RunOutcome {
  report::RunRecord record;
  engine::VerdictReport report;
};

RunOutcome run_task(const fs::path& path, const CommonFlags& f) {
  std::optional<unsigned> width;
  if (f.width != 0) width = f.width;
  lang::Program p = lang::parse(read_file(path), width);
  enc::TransitionSystem ts = enc::build_ts(p);
  engine::EngineConfig cfg = make_config(f);
  if (cfg.dump_cnf) cfg.dump_dir = path.parent_path().string();
  auto provider = make_provider(f, p, ts, cfg);
  engine::VerdictReport rep = engine::run(p, ts, cfg, *provider);
  if (!f.dump_inv.empty()) {
    std::ofstream out(f.dump_inv);
    out << df::dump_invariant(provider->snapshot().env, p);
  }
  RunOutcome out{report::make_record(path.filename().string(), cfg, rep),
                 std::move(rep)};
  if (out.report.verdict == engine::Verdict::False &&
      out.report.counterexample.has_value()) {
    fs::path trace_path = path;
    trace_path += ".trace";
    std::ofstream t(trace_path);
    t << report::trace_to_string(p, *out.report.counterexample);
  }
  return out;
}

void print_records(const std::vector<report::RunRecord>& rs,
                   const std::string& format) {
  if (format == "json") {
    std::cout << report::to_json(rs) << "\n";
  } else if (format == "csv") {
    std::cout << report::csv_header() << "\n";
    for (const auto& r : rs) std::cout << report::to_csv_row(r) << "\n";
  } else {
    std::cout << report::human_table(rs);
  }
}

int cmd_verify(const std::string& file, const CommonFlags& f) {
  RunOutcome out = run_task(file, f);
  print_records({out.record}, f.format);
  if (!out.report.note.empty()) {
    std::cerr << "note: " << out.report.note << "\n";
  }
  switch (out.report.verdict) {
    case engine::Verdict::True: return 0;
    case engine::Verdict::False: return 1;
    case engine::Verdict::Unknown: return 2;
  }
  return 2;
}

int cmd_compare(const std::string& dir, std::vector<std::string> algos,
                const CommonFlags& f) {
  std::vector<fs::path> tasks;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".slp") tasks.push_back(e.path());
  }
  std::sort(tasks.begin(), tasks.end());
  std::vector<report::RunRecord> records;
  for (const auto& task : tasks) {
    for (const auto& algo : algos) {
      CommonFlags tf = f;
      tf.algo = algo;
      try {
        records.push_back(run_task(task, tf).record);
      } catch (const std::exception& ex) {
        std::cerr << task.string() << " [" << algo << "]: " << ex.what()
                  << "\n";
        report::RunRecord r;
        r.task = task.filename().string();
        r.algo = algo;
        r.verdict = "UNKNOWN";
        r.seed = f.seed;
        records.push_back(r);
      }
    }
  }
  print_records(records, f.format);

  if (f.format == "human" && algos.size() >= 2) {
    std::cout << "\npaired deltas vs " << algos[0] << ":\n";
    for (const auto& task : tasks) {
      const std::string name = task.filename().string();
      const report::RunRecord* base = nullptr;
      for (const auto& r : records) {
        if (r.task == name && r.algo == algos[0]) base = &r;
      }
      if (base == nullptr) continue;
      for (size_t a = 1; a < algos.size(); ++a) {
        for (const auto& r : records) {
          if (r.task == name && r.algo == algos[a]) {
            std::cout << name << " " << algos[a] << ": dk=" << r.k - base->k
                      << " ditp=" << r.itp_queries - base->itp_queries
                      << " dwall=" << std::fixed << std::setprecision(6)
                      << r.wall_time_s - base->wall_time_s << "\n";
          }
        }
      }
    }
  }
  return 0;
}

int cmd_oracle(const std::string& file, const CommonFlags& f) {
  std::optional<unsigned> width;
  if (f.width != 0) width = f.width;
  lang::Program p = lang::parse(read_file(file), width);
  oracle::ReachableSet rs = oracle::explore(p);
  if (rs.outcome == oracle::ReachableSet::Outcome::TooLarge) {
    std::cout << "verdict: TOO-LARGE\n";
    return 2;
  }
  std::cout << "verdict: " << (rs.safe ? "TRUE" : "FALSE") << "\n"
            << "reachable loop-head states: " << rs.states.size() << "\n";
  if (!rs.safe && rs.counterexample.has_value()) {
    std::cout << report::trace_to_string(p, *rs.counterexample);
  }
  return rs.safe ? 0 : 1;
}

int cmd_gen(const std::string& outdir, const gen::GenOptions& opts) {
  fs::create_directories(outdir);
  std::vector<std::string> programs = gen::generate_corpus(opts);
  for (size_t i = 0; i < programs.size(); ++i) {
    std::ostringstream name;
    name << "gen_" << opts.seed << "_" << std::setw(4) << std::setfill('0')
         << i << ".slp";
    std::ofstream out(fs::path(outdir) / name.str());
    out << programs[i];
  }
  std::cout << "wrote " << programs.size() << " task(s) to " << outdir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpolation-based model checker with invariant injection"};
  app.require_subcommand(1);

  std::string file, dir, outdir;
  CommonFlags flags;
  std::vector<std::string> algos;
  gen::GenOptions gen_opts;

  CLI::App* verify = app.add_subcommand("verify", "verify one task");
  verify->add_option("file", file, ".slp task")->required();
  add_common_flags(verify, flags, true);

  CLI::App* compare = app.add_subcommand("compare", "compare algorithms");
  compare->add_option("dir", dir, "directory of .slp tasks")->required();
  compare->add_option("--algo", algos, "algorithms to run (repeatable)")
      ->required();
  add_common_flags(compare, flags, false);

  CLI::App* orc = app.add_subcommand("oracle", "explicit-state ground truth");
  orc->add_option("file", file, ".slp task")->required();
  orc->add_option("--width", flags.width, "override declared bit widths")
      ->check(CLI::IsMember({4, 8, 16, 32}));

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a task corpus");
  gen_cmd->add_option("outdir", outdir, "output directory")->required();
  gen_cmd->add_option("--seed", gen_opts.seed, "generator seed");
  gen_cmd->add_option("--count", gen_opts.count, "number of tasks");
  gen_cmd->add_option("--width", gen_opts.width, "bit width")
      ->check(CLI::IsMember({4, 8, 16, 32}));
  gen_cmd->add_option("--max-vars", gen_opts.max_vars)->check(CLI::Range(1, 3));
  gen_cmd->add_option("--max-stmts", gen_opts.max_stmts)
      ->check(CLI::Range(1, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (verify->parsed()) return cmd_verify(file, flags);
    if (compare->parsed()) return cmd_compare(dir, algos, flags);
    if (orc->parsed()) return cmd_oracle(file, flags);
    if (gen_cmd->parsed()) return cmd_gen(outdir, gen_opts);
  } catch (const lang::ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.col << ": "
              << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
