#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minbudget/cbr.hpp"
#include "minbudget/convex.hpp"
#include "minbudget/error.hpp"
#include "minbudget/io.hpp"

namespace minbudget {

enum class SolveMethod { Auto, Sp, Convex, Oracle };

struct SolveOptions {
  SolveMethod method = SolveMethod::Auto;
  SideChoice side = SideChoice::Auto;
  std::size_t oracle_cap = 20;  // jobs
  std::size_t ideal_cap = kDefaultIdealCap;
};

struct SolveReport {
  std::string instance_id;
  std::string method;  // sp, convex, oracle, reduce+convex, reduce+oracle
  Cost budget;
  Schedule schedule;
  std::optional<BlockSchedule> certificate;
  double ms = 0;
};

/// Routes the instance to the first matching solver and re-validates the
/// result. Errors: UnsolvableAtScale plus whatever the forced solver raises.
SolveReport solve_instance(const InstanceFile& file, const SolveOptions& options = {});

Json report_to_json(const SolveReport& report);

/// 0 success, 1 logical failure, 2 input error, 3 resource guard.
int exit_code_for(ErrorKind kind);

/// Entry point of the command-line tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minbudget
