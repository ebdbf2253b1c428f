#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "minbudget/cbr.hpp"
#include "minbudget/poset.hpp"
#include "minbudget/sp.hpp"
#include "minbudget/transforms.hpp"

namespace minbudget {

using Json = nlohmann::json;

/// An instance file: jobs, precedences, and optional structure hints.
struct InstanceFile {
  std::string id;
  Instance instance;
  std::optional<SpNode> sp;
  std::optional<Schedule> convex_order;
};

/// Costs may be JSON integers or strings ("3", "-1/2"). Structural problems
/// raise ParseError; semantic ones keep their own kind (CycleDetected, ...).
InstanceFile parse_instance(const Json& doc, const std::string& default_id = "instance");
Json instance_to_json(const Instance& inst, const std::string& id = "",
                      const SpNode& sp = nullptr,
                      const std::optional<Schedule>& convex_order = std::nullopt);

/// Nested arrays ["S", l, r] / ["P", l, r] with job id strings at the leaves.
SpNode parse_sp(const Json& node);
Json sp_to_json(const SpNode& tree);

/// {"blocks":[{"jobs":[...],"order":[...],"c":"..","b":"..","r":".."}]}.
/// Declared stats are kept as written so checking can compare them.
BlockSchedule parse_certificate(const Json& doc);
Json certificate_to_json(const BlockSchedule& bs);

/// {"initial":[{"lo":"0","hi":"1","w":"2"}], "final":[...]}.
EnergyBarrierInstance parse_energy(const Json& doc);
Json energy_to_json(const EnergyBarrierInstance& eb);

Cost parse_cost_json(const Json& value);
Json cost_to_json(const Cost& c);

/// Reads and parses a JSON file; ParseError on I/O or syntax problems.
Json read_json_file(const std::filesystem::path& path);
/// Instance id defaults to the file stem.
InstanceFile load_instance_file(const std::filesystem::path& path);

/// Graphviz rendering of the Hasse diagram with cost labels, optionally
/// annotated with schedule positions.
std::string hasse_dot(const Instance& inst, const Schedule* schedule = nullptr);

}  // namespace minbudget
