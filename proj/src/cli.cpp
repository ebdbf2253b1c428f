#include "minbudget/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "minbudget/convex.hpp"
#include "minbudget/generate.hpp"
#include "minbudget/oracle.hpp"
#include "minbudget/sp.hpp"
#include "minbudget/transforms.hpp"

namespace minbudget {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void guard_oracle(const Instance& inst, const SolveOptions& options) {
  if (inst.size() > options.oracle_cap) {
    throw Error(ErrorKind::UnsolvableAtScale,
                "no polynomial class matched and " + std::to_string(inst.size()) +
                    " jobs exceed the oracle cap of " + std::to_string(options.oracle_cap));
  }
}

ExactSolution guarded_oracle(const Instance& inst, const SolveOptions& options) {
  guard_oracle(inst, options);
  try {
    return min_budget_exact(inst, options.ideal_cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
    throw Error(ErrorKind::UnsolvableAtScale, e.what());
  }
}

std::optional<SpNode> sp_tree_of(const InstanceFile& file) {
  if (file.sp) return file.sp;
  try {
    return sp_recognize(file.instance);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSeriesParallel) throw;
    return std::nullopt;
  }
}

std::optional<ConvexResult> try_convex(const Instance& inst, const SolveOptions& options,
                                       const std::optional<Schedule>& order) {
  try {
    return solve_convex_auto(inst, options.side, order);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotConvex) throw;
    return std::nullopt;
  }
}

void fill_from(SolveReport& report, const Instance& inst, const BlockSchedule& bs) {
  report.schedule = bs.flatten();
  report.budget = schedule_stats(inst, report.schedule).b;
  report.certificate = bs;
}

SolveReport route(const InstanceFile& file, const SolveOptions& options) {
  const Instance& inst = file.instance;
  SolveReport report;
  report.instance_id = file.id;

  switch (options.method) {
    case SolveMethod::Sp:
      report.method = "sp";
      fill_from(report, inst, sp_solve(inst, file.sp ? *file.sp : sp_recognize(inst)));
      return report;
    case SolveMethod::Convex: {
      report.method = "convex";
      ConvexResult r = solve_convex_auto(inst, options.side, file.convex_order);
      report.budget = r.budget;
      report.schedule = std::move(r.schedule);
      report.certificate = std::move(r.certificate);
      return report;
    }
    case SolveMethod::Oracle: {
      report.method = "oracle";
      ExactSolution s = guarded_oracle(inst, options);
      report.budget = s.budget;
      report.schedule = std::move(s.schedule);
      return report;
    }
    case SolveMethod::Auto:
      break;
  }

  if (auto tree = sp_tree_of(file)) {
    report.method = "sp";
    fill_from(report, inst, sp_solve(inst, *tree));
    return report;
  }
  if (is_bipartite(inst)) {
    if (auto r = try_convex(inst, options, file.convex_order)) {
      report.method = "convex";
      report.budget = r->budget;
      report.schedule = std::move(r->schedule);
      report.certificate = std::move(r->certificate);
      return report;
    }
    report.method = "oracle";
    ExactSolution s = guarded_oracle(inst, options);
    report.budget = s.budget;
    report.schedule = std::move(s.schedule);
    return report;
  }
  const Instance reduced = bipartite_reduce(inst);
  Schedule reduced_schedule;
  if (auto r = try_convex(reduced, options, std::nullopt)) {
    report.method = "reduce+convex";
    reduced_schedule = std::move(r->schedule);
  } else {
    report.method = "reduce+oracle";
    reduced_schedule = guarded_oracle(reduced, options).schedule;
  }
  report.schedule = repair_schedule(inst, reduced_schedule);
  report.budget = schedule_stats(inst, report.schedule).b;
  return report;
}

std::string join(const Schedule& s) {
  std::string out;
  for (const auto& id : s) out += (out.empty() ? "" : " ") + id.value;
  return out;
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ms;
  return os.str();
}

void print_report(std::ostream& out, const SolveReport& r) {
  out << "instance: " << r.instance_id << "\n"
      << "method: " << r.method << "\n"
      << "budget: " << format_cost(r.budget) << "\n"
      << "schedule: " << join(r.schedule) << "\n";
  if (r.certificate) {
    out << "blocks: " << r.certificate->blocks.size() << "\n";
    for (const auto& b : r.certificate->blocks) {
      out << "  [" << join(b.order) << "] " << b.stats << "\n";
    }
  }
  out << "ms: " << format_ms(r.ms) << "\n";
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

SideChoice parse_side(const std::string& s) {
  if (s == "nminus") return SideChoice::NMinus;
  if (s == "nplus") return SideChoice::NPlus;
  return SideChoice::Auto;
}

SolveMethod parse_method(const std::string& s) {
  if (s == "sp") return SolveMethod::Sp;
  if (s == "convex") return SolveMethod::Convex;
  if (s == "oracle") return SolveMethod::Oracle;
  return SolveMethod::Auto;
}

struct BenchRow {
  std::string instance;
  std::string method;
  std::optional<Cost> budget;
  std::optional<Cost> oracle;
  bool agree = true;
  double ms = 0;
};

template <class F>
double timed(std::size_t repeat, F&& f) {
  double total = 0;
  for (std::size_t k = 0; k < std::max<std::size_t>(repeat, 1); ++k) {
    const auto start = Clock::now();
    f();
    total += elapsed_ms(start);
  }
  return total / static_cast<double>(std::max<std::size_t>(repeat, 1));
}

std::vector<BenchRow> bench_file(const fs::path& path, std::size_t repeat,
                                 const SolveOptions& options) {
  const InstanceFile file = load_instance_file(path);
  const Instance& inst = file.instance;
  std::vector<BenchRow> rows;

  std::optional<Cost> oracle;
  double oracle_ms = 0;
  if (inst.size() <= options.oracle_cap) {
    try {
      oracle_ms = timed(repeat, [&] { oracle = min_budget_exact(inst, options.ideal_cap).budget; });
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooLarge) throw;
      oracle.reset();
    }
  }
  auto add = [&](std::string method, std::optional<Cost> budget, bool ok, double ms) {
    BenchRow row{file.id, std::move(method), std::move(budget), oracle, ok, ms};
    if (row.budget && oracle && *row.budget != *oracle) row.agree = false;
    rows.push_back(std::move(row));
  };

  if (auto tree = sp_tree_of(file)) {
    BlockSchedule bs;
    const double ms = timed(repeat, [&] { bs = sp_solve(inst, *tree); });
    add("sp", schedule_stats(inst, bs.flatten()).b, true, ms);
  }
  if (is_bipartite(inst)) {
    std::optional<ConvexResult> r;
    const double ms = timed(repeat, [&] { r = try_convex(inst, options, file.convex_order); });
    if (r) add("convex", r->budget, is_linear_extension(inst, r->schedule), ms);
  } else {
    std::optional<Cost> budget;
    const double ms = timed(repeat, [&] {
      const Instance reduced = bipartite_reduce(inst);
      if (auto r = try_convex(reduced, options, std::nullopt)) {
        budget = schedule_stats(inst, repair_schedule(inst, r->schedule)).b;
      }
    });
    if (budget) add("reduce+convex", budget, true, ms);
  }
  if (oracle) {
    bool ok = true;
    if (inst.size() <= kNaiveJobCap) ok = naive_min_budget(inst) == *oracle;
    add("oracle", oracle, ok, oracle_ms);
  }

  // A certificate next to the instance: <stem>.cert.json.
  const fs::path cert_path = path.parent_path() / (path.stem().string() + ".cert.json");
  if (fs::exists(cert_path)) {
    std::optional<Cost> budget;
    bool ok = false;
    const double ms = timed(repeat, [&] {
      try {
        const BlockSchedule bs = parse_certificate(read_json_file(cert_path));
        const IisReport verdict = check_iis(inst, bs, options.ideal_cap);
        budget = schedule_stats(inst, bs.flatten()).b;
        ok = verdict.pass();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CoverageMismatch && e.kind() != ErrorKind::MissingCost) throw;
        ok = false;
      }
    });
    add("certificate", budget, ok, ms);
  }
  return rows;
}

}  // namespace

SolveReport solve_instance(const InstanceFile& file, const SolveOptions& options) {
  const auto start = Clock::now();
  SolveReport report = route(file, options);
  report.ms = elapsed_ms(start);
  if (!is_linear_extension(file.instance, report.schedule) ||
      schedule_stats(file.instance, report.schedule).b != report.budget) {
    throw Error(ErrorKind::NotCertified, "solver output failed re-validation (" + report.method + ")");
  }
  return report;
}

Json report_to_json(const SolveReport& r) {
  Json doc = {{"instance", r.instance_id},
              {"method", r.method},
              {"budget", format_cost(r.budget)},
              {"schedule", Json::array()},
              {"certificate", nullptr},
              {"ms", r.ms}};
  for (const auto& id : r.schedule) doc["schedule"].push_back(id.value);
  if (r.certificate) doc["certificate"] = certificate_to_json(*r.certificate);
  return doc;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooLarge:
    case ErrorKind::UnsolvableAtScale:
      return 3;
    case ErrorKind::NotSeriesParallel:
    case ErrorKind::NotBipartite:
    case ErrorKind::NotConvex:
    case ErrorKind::NotCertified:
    case ErrorKind::NotIrreducible:
    case ErrorKind::EmptyNegativeSet:
      return 1;
    default:
      return 2;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact minimum-budget scheduling of precedence-constrained jobs", "minbudget"};
  app.require_subcommand(1);

  SolveOptions options;
  std::string method = "auto";
  std::string side = "auto";
  std::string path;
  std::string cert_path;
  std::string dot_path;
  std::string out_path;
  bool as_json = false;
  bool naive = false;

  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", path, "Instance JSON")->required();
  solve->add_option("--method", method, "auto, sp, convex or oracle")
      ->check(CLI::IsMember({"auto", "sp", "convex", "oracle"}));
  solve->add_option("--side", side, "Convex side: auto, nminus or nplus")
      ->check(CLI::IsMember({"auto", "nminus", "nplus"}));
  solve->add_flag("--json", as_json, "Print the report as JSON");
  solve->add_option("--dot", dot_path, "Write the Hasse diagram to this file");
  solve->add_option("--oracle-cap", options.oracle_cap, "Largest job count handed to the oracle");

  auto* check = app.add_subcommand("check", "Verify a block certificate");
  check->add_option("instance", path, "Instance JSON")->required();
  check->add_option("certificate", cert_path, "Certificate JSON")->required();

  auto* oracle = app.add_subcommand("oracle", "Exact budget by dynamic programming over ideals");
  oracle->add_option("instance", path, "Instance JSON")->required();
  oracle->add_flag("--naive", naive, "Also enumerate linear extensions (<= 9 jobs)");
  oracle->add_flag("--json", as_json, "Print JSON");

  std::string kind;
  std::size_t n = 6;
  std::size_t nplus = 4;
  std::size_t nminus = 3;
  std::size_t idle = 0;
  std::uint64_t seed = 1;
  std::int64_t cost_min = -5;
  std::int64_t cost_max = 5;
  double density = 0.3;
  std::size_t intervals = 3;
  std::int64_t max_weight = 5;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("kind", kind, "sp, convex, dag or energy")
      ->required()
      ->check(CLI::IsMember({"sp", "convex", "dag", "energy"}));
  gen->add_option("--n", n, "Job count (sp, dag)");
  gen->add_option("--nplus", nplus, "Nonnegative jobs with edges (convex)");
  gen->add_option("--nminus", nminus, "Negative jobs (convex)");
  gen->add_option("--idle", idle, "Extra edge-free nonnegative jobs (convex)");
  gen->add_option("--side", side, "Convex side: nminus or nplus")
      ->check(CLI::IsMember({"auto", "nminus", "nplus"}));
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--cost-min", cost_min, "Smallest cost");
  gen->add_option("--cost-max", cost_max, "Largest cost");
  gen->add_option("--density", density, "Edge probability (dag)");
  gen->add_option("--intervals", intervals, "Intervals per system at most (energy)");
  gen->add_option("--max-weight", max_weight, "Largest interval weight (energy)");
  gen->add_option("--out", out_path, "Output file (default stdout)");

  std::string dir;
  std::size_t repeat = 1;
  auto* bench = app.add_subcommand("bench", "Compare every applicable method with the oracle");
  bench->add_option("dir", dir, "Directory of instance files")->required();
  bench->add_option("--repeat", repeat, "Timing repetitions");
  bench->add_option("--oracle-cap", options.oracle_cap, "Largest job count handed to the oracle");

  std::string threshold = "0";
  auto* transform = app.add_subcommand("transform", "Instance transformations");
  transform->require_subcommand(1);
  auto* t_bip = transform->add_subcommand("bipartite", "Keep only nonnegative-to-negative pairs");
  t_bip->add_option("instance", path)->required();
  t_bip->add_option("--out", out_path);
  auto* t_rev = transform->add_subcommand("reverse", "Flip the relation and negate costs");
  t_rev->add_option("instance", path)->required();
  t_rev->add_option("--out", out_path);
  auto* t_imp = transform->add_subcommand("energy-import", "Energy barrier decision instance");
  t_imp->add_option("energy", path)->required();
  t_imp->add_option("--threshold", threshold, "Barrier threshold B");
  t_imp->add_option("--out", out_path);
  auto* t_bar = transform->add_subcommand("energy-barrier", "Smallest feasible barrier");
  t_bar->add_option("energy", path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      options.method = parse_method(method);
      options.side = parse_side(side);
      const InstanceFile file = load_instance_file(path);
      const SolveReport report = solve_instance(file, options);
      if (as_json) {
        out << report_to_json(report).dump(2) << "\n";
      } else {
        print_report(out, report);
      }
      if (!dot_path.empty()) write_text(dot_path, hasse_dot(file.instance, &report.schedule), out);
      return 0;
    }
    if (*check) {
      const InstanceFile file = load_instance_file(path);
      const BlockSchedule bs = parse_certificate(read_json_file(cert_path));
      const IisReport r = check_iis(file.instance, bs);
      auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
      out << "linear_extension: " << verdict(r.linear_extension) << "\n"
          << "intervals: " << verdict(r.intervals) << "\n"
          << "irreducible: " << verdict(r.irreducible) << "\n"
          << "optimal_blocks: " << verdict(r.optimal_blocks) << "\n"
          << "nondecreasing: " << verdict(r.nondecreasing) << "\n";
      for (const auto& note : r.notes) out << "note: " << note << "\n";
      out << "overall: " << verdict(r.pass()) << "\n";
      return r.pass() ? 0 : 1;
    }
    if (*oracle) {
      const InstanceFile file = load_instance_file(path);
      const ExactSolution s = min_budget_exact(file.instance);
      std::optional<Cost> by_naive;
      if (naive) by_naive = naive_min_budget(file.instance);
      if (as_json) {
        Json doc = {{"instance", file.id}, {"budget", format_cost(s.budget)}, {"schedule", Json::array()}};
        for (const auto& id : s.schedule) doc["schedule"].push_back(id.value);
        if (by_naive) doc["naive_budget"] = format_cost(*by_naive);
        out << doc.dump(2) << "\n";
      } else {
        out << "budget: " << format_cost(s.budget) << "\n"
            << "schedule: " << join(s.schedule) << "\n";
        if (by_naive) out << "naive_budget: " << format_cost(*by_naive) << "\n";
      }
      if (by_naive && *by_naive != s.budget) {
        err << "oracles disagree\n";
        return 1;
      }
      return 0;
    }
    if (*gen) {
      const CostRange range{cost_min, cost_max};
      Json doc;
      if (kind == "sp") {
        const GeneratedSp g = generate_sp(n, seed, range);
        doc = instance_to_json(g.instance, "sp-" + std::to_string(n) + "-" + std::to_string(seed), g.tree);
      } else if (kind == "convex") {
        const ConvexSide s = side == "nplus" ? ConvexSide::NPlus : ConvexSide::NMinus;
        const GeneratedConvex g = generate_convex(nplus, nminus, seed, range, s, idle);
        std::optional<Schedule> order;
        if (s == ConvexSide::NMinus) order = g.order;
        doc = instance_to_json(g.instance, "convex-" + std::to_string(nplus) + "-" +
                                               std::to_string(nminus) + "-" + std::to_string(seed),
                               nullptr, order);
      } else if (kind == "dag") {
        doc = instance_to_json(generate_dag(n, seed, density, range),
                               "dag-" + std::to_string(n) + "-" + std::to_string(seed));
      } else {
        doc = energy_to_json(generate_energy(intervals, seed, max_weight));
      }
      write_text(out_path, doc.dump(2) + "\n", out);
      return 0;
    }
    if (*bench) {
      if (!fs::is_directory(dir)) throw Error(ErrorKind::ParseError, "'" + dir + "' is not a directory");
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        if (name.size() >= 10 && name.ends_with(".cert.json")) continue;
        files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::vector<BenchRow> rows;
      for (const auto& f : files) {
        auto part = bench_file(f, repeat, options);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      std::stable_sort(rows.begin(), rows.end(),
                       [](const BenchRow& a, const BenchRow& b) { return a.instance < b.instance; });
      out << "instance,method,budget,oracle_budget,agree,ms\n";
      bool all = true;
      for (const auto& r : rows) {
        out << r.instance << "," << r.method << "," << (r.budget ? format_cost(*r.budget) : "")
            << "," << (r.oracle ? format_cost(*r.oracle) : "") << "," << (r.agree ? "true" : "false")
            << "," << format_ms(r.ms) << "\n";
        all = all && r.agree;
      }
      return all ? 0 : 1;
    }
    if (*t_bip || *t_rev) {
      const InstanceFile file = load_instance_file(path);
      const Instance result = *t_bip ? bipartite_reduce(file.instance) : reverse_instance(file.instance);
      write_text(out_path, instance_to_json(result, file.id).dump(2) + "\n", out);
      return 0;
    }
    if (*t_imp) {
      const EnergyBarrierInstance eb = parse_energy(read_json_file(path));
      const Instance inst = energy_import(eb, parse_cost(threshold));
      write_text(out_path, instance_to_json(inst, fs::path(path).stem().string()).dump(2) + "\n", out);
      return 0;
    }
    if (*t_bar) {
      const EnergyBarrierInstance eb = parse_energy(read_json_file(path));
      out << "barrier: " << format_cost(energy_barrier_value(eb)) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace minbudget
