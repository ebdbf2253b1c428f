#include "minbudget/io.hpp"

#include <fstream>
#include <sstream>

#include "minbudget/error.hpp"

namespace minbudget {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string id_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  bad("job id must be a string or an integer, got " + v.dump());
}

Schedule id_list(const Json& v, const char* what) {
  if (!v.is_array()) bad(std::string(what) + " must be an array");
  Schedule out;
  for (const auto& x : v) out.push_back(id_of(x));
  return out;
}

Json id_list_json(const Schedule& s) {
  Json out = Json::array();
  for (const auto& id : s) out.push_back(id.value);
  return out;
}

WeightedInterval parse_interval(const Json& v) {
  return {parse_cost_json(field(v, "lo")), parse_cost_json(field(v, "hi")),
          parse_cost_json(field(v, "w"))};
}

}  // namespace

Cost parse_cost_json(const Json& value) {
  if (value.is_number_integer()) return Cost(std::to_string(value.get<long long>()));
  if (value.is_string()) return parse_cost(value.get<std::string>());
  bad("cost must be an integer or a string, got " + value.dump());
}

Json cost_to_json(const Cost& c) { return format_cost(c); }

SpNode parse_sp(const Json& node) {
  if (node.is_string() || node.is_number_integer()) return SpTree::leaf(id_of(node));
  if (!node.is_array() || node.size() != 3 || !node[0].is_string()) {
    bad("sp node must be a job id or [\"S\"|\"P\", left, right], got " + node.dump());
  }
  const auto tag = node[0].get<std::string>();
  if (tag == "S") return SpTree::series(parse_sp(node[1]), parse_sp(node[2]));
  if (tag == "P") return SpTree::parallel(parse_sp(node[1]), parse_sp(node[2]));
  bad("unknown sp tag '" + tag + "'");
}

Json sp_to_json(const SpNode& tree) {
  if (!tree) return nullptr;
  switch (tree->kind) {
    case SpTree::Kind::Leaf:
      return tree->job.value;
    case SpTree::Kind::Series:
      return Json::array({"S", sp_to_json(tree->left), sp_to_json(tree->right)});
    case SpTree::Kind::Parallel:
      return Json::array({"P", sp_to_json(tree->left), sp_to_json(tree->right)});
  }
  return nullptr;
}

InstanceFile parse_instance(const Json& doc, const std::string& default_id) {
  if (!doc.is_object()) bad("instance must be a JSON object");
  const Json& jobs_json = field(doc, "jobs");
  if (!jobs_json.is_array()) bad("'jobs' must be an array");
  std::vector<JobSpec> jobs;
  for (const auto& j : jobs_json) jobs.push_back({id_of(field(j, "id")), parse_cost_json(field(j, "cost"))});

  std::vector<Precedence> edges;
  if (doc.contains("precedences")) {
    const Json& prec = doc.at("precedences");
    if (!prec.is_array()) bad("'precedences' must be an array");
    for (const auto& e : prec) {
      if (!e.is_array() || e.size() != 2) bad("precedence must be a pair, got " + e.dump());
      edges.push_back({id_of(e[0]), id_of(e[1])});
    }
  }

  InstanceFile out;
  out.id = default_id;
  if (doc.contains("id")) out.id = id_of(doc.at("id"));
  out.instance = build_instance(std::move(jobs), std::move(edges));
  if (doc.contains("sp") && !doc.at("sp").is_null()) out.sp = parse_sp(doc.at("sp"));
  if (doc.contains("convex_order") && !doc.at("convex_order").is_null()) {
    out.convex_order = id_list(doc.at("convex_order"), "convex_order");
  }
  return out;
}

Json instance_to_json(const Instance& inst, const std::string& id, const SpNode& sp,
                      const std::optional<Schedule>& convex_order) {
  Json doc = Json::object();
  if (!id.empty()) doc["id"] = id;
  Json jobs = Json::array();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    jobs.push_back({{"id", inst.id(i).value}, {"cost", format_cost(inst.cost(i))}});
  }
  doc["jobs"] = std::move(jobs);
  Json prec = Json::array();
  for (const auto& e : inst.precedences()) prec.push_back({e.before.value, e.after.value});
  doc["precedences"] = std::move(prec);
  if (sp) doc["sp"] = sp_to_json(sp);
  if (convex_order) doc["convex_order"] = id_list_json(*convex_order);
  return doc;
}

BlockSchedule parse_certificate(const Json& doc) {
  const Json& blocks = field(doc, "blocks");
  if (!blocks.is_array()) bad("'blocks' must be an array");
  BlockSchedule out;
  for (const auto& b : blocks) {
    Block block;
    const Schedule jobs = id_list(field(b, "jobs"), "block jobs");
    block.jobs = JobSet(jobs.begin(), jobs.end());
    if (block.jobs.size() != jobs.size()) bad("block lists a job twice");
    block.order = id_list(field(b, "order"), "block order");
    block.stats = {parse_cost_json(field(b, "c")), parse_cost_json(field(b, "b")),
                   parse_cost_json(field(b, "r"))};
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Json certificate_to_json(const BlockSchedule& bs) {
  Json blocks = Json::array();
  for (const auto& b : bs.blocks) {
    blocks.push_back({{"jobs", id_list_json(Schedule(b.jobs.begin(), b.jobs.end()))},
                      {"order", id_list_json(b.order)},
                      {"c", format_cost(b.stats.c)},
                      {"b", format_cost(b.stats.b)},
                      {"r", format_cost(b.stats.r)}});
  }
  return {{"blocks", std::move(blocks)}};
}

EnergyBarrierInstance parse_energy(const Json& doc) {
  EnergyBarrierInstance eb;
  for (const auto* key : {"initial", "final"}) {
    const Json& sys = field(doc, key);
    if (!sys.is_array()) bad(std::string("'") + key + "' must be an array");
    auto& target = std::string(key) == "initial" ? eb.initial : eb.final;
    for (const auto& x : sys) target.push_back(parse_interval(x));
  }
  return eb;
}

Json energy_to_json(const EnergyBarrierInstance& eb) {
  auto dump = [](const std::vector<WeightedInterval>& sys) {
    Json out = Json::array();
    for (const auto& x : sys) {
      out.push_back({{"lo", format_cost(x.lo)}, {"hi", format_cost(x.hi)}, {"w", format_cost(x.w)}});
    }
    return out;
  };
  return {{"initial", dump(eb.initial)}, {"final", dump(eb.final)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

InstanceFile load_instance_file(const std::filesystem::path& path) {
  return parse_instance(read_json_file(path), path.stem().string());
}

std::string hasse_dot(const Instance& inst, const Schedule* schedule) {
  std::vector<std::size_t> position(inst.size(), 0);
  if (schedule) {
    for (std::size_t t = 0; t < schedule->size(); ++t) position[inst.index_of((*schedule)[t])] = t + 1;
  }
  std::ostringstream os;
  os << "digraph minbudget {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    os << "  \"" << inst.id(i) << "\" [label=\"" << inst.id(i) << "\\n" << format_cost(inst.cost(i));
    if (schedule) os << "\\n#" << position[i];
    os << "\"];\n";
  }
  for (auto [u, v] : inst.hasse_pairs()) {
    os << "  \"" << inst.id(u) << "\" -> \"" << inst.id(v) << "\";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace minbudget
