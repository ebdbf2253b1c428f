#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "minbudget/cli.hpp"
#include "minbudget/io.hpp"
#include "support.hpp"

using namespace minbudget;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("minbudget-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path file(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

 private:
  fs::path path_;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fig3_json() { return instance_to_json(fig3(), "fig3").dump(); }

// a:+1, b:+1, c:-1, d:-1 with a->c, b->c, b->d, then 21 negative jobs after d.
// Successor sets {x,y}, {y,z}, {x,z} admit no interval order on either side,
// and the tail of negatives after z pushes it past the oracle cap.
std::string big_unsolvable_json() {
  std::vector<std::pair<std::string, long long>> jobs{{"a", 1}, {"b", 1}, {"c", 1},
                                                      {"x", -1}, {"y", -1}, {"z", -1}};
  std::vector<std::pair<std::string, std::string>> edges{{"a", "x"}, {"a", "y"}, {"b", "y"},
                                                         {"b", "z"}, {"c", "x"}, {"c", "z"}};
  for (int k = 0; k < 15; ++k) {
    const std::string id = "n" + std::to_string(10 + k);
    jobs.push_back({id, -1});
    edges.push_back({"z", id});
  }
  return instance_to_json(make(jobs, edges)).dump();
}

}  // namespace

TEST(InstanceJson, RoundTrip) {
  const Instance inst = fig1();
  const InstanceFile back = parse_instance(instance_to_json(inst, "fig1"));
  EXPECT_EQ(back.id, "fig1");
  EXPECT_EQ(back.instance.ids(), inst.ids());
  EXPECT_EQ(back.instance.costs(), inst.costs());
  EXPECT_EQ(back.instance.closure_pairs(), inst.closure_pairs());
  EXPECT_FALSE(back.sp.has_value());
  EXPECT_FALSE(back.convex_order.has_value());
}

TEST(InstanceJson, CostsAndIds) {
  const Json doc = Json::parse(R"({"jobs":[{"id":"a","cost":3},{"id":7,"cost":"-1/2"}],"precedences":[["a",7]]})");
  const InstanceFile f = parse_instance(doc, "fallback");
  EXPECT_EQ(f.id, "fallback");
  EXPECT_EQ(f.instance.cost_of("a"), q(3));
  EXPECT_EQ(f.instance.cost_of("7"), q("-1/2"));
  EXPECT_TRUE(f.instance.precedes(f.instance.index_of("a"), f.instance.index_of("7")));
}

TEST(InstanceJson, Errors) {
  EXPECT_EQ(kind_of([] { parse_instance(Json::parse(R"({"precedences":[]})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_instance(Json::parse(R"({"jobs":[{"id":"a","cost":1.5}]})")); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_instance(Json::parse(R"({"jobs":[{"id":"a"}]})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_instance(Json::parse(R"({"jobs":[],"precedences":[["a"]]})")); }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_instance(Json::parse(R"({"jobs":[{"id":"a","cost":1},{"id":"b","cost":1}],
                                             "precedences":[["a","b"],["b","a"]]})"));
            }),
            ErrorKind::CycleDetected);
  EXPECT_EQ(kind_of([] { parse_instance(Json::parse(R"([1,2])")); }), ErrorKind::ParseError);
}

TEST(InstanceJson, StructureHints) {
  const auto gen = generate_sp(5, 3);
  const InstanceFile f = parse_instance(instance_to_json(gen.instance, "g", gen.tree, sched({"x"})));
  ASSERT_TRUE(f.sp.has_value());
  EXPECT_EQ(sp_to_string(*f.sp), sp_to_string(gen.tree));
  EXPECT_EQ(f.convex_order, sched({"x"}));
  EXPECT_EQ(sp_to_string(parse_sp(Json::parse(R"(["S","a",["P","b","c"]])"))), "S(a,P(b,c))");
  EXPECT_EQ(kind_of([] { parse_sp(Json::parse(R"(["Q","a","b"])")); }), ErrorKind::ParseError);
}

TEST(CertificateJson, RoundTripKeepsDeclaredStats) {
  BlockSchedule bs = sp_solve(fig3());
  bs.blocks[1].stats = {q(-1), q(9), q(-10)};
  const BlockSchedule back = parse_certificate(certificate_to_json(bs));
  ASSERT_EQ(back.blocks.size(), 3u);
  EXPECT_EQ(back.blocks[1].stats, bs.blocks[1].stats);
  EXPECT_EQ(back.flatten(), bs.flatten());
  EXPECT_EQ(back.blocks[0].jobs, bs.blocks[0].jobs);
}

TEST(EnergyJson, RoundTrip) {
  const EnergyBarrierInstance eb = generate_energy(4, 12);
  const EnergyBarrierInstance back = parse_energy(energy_to_json(eb));
  ASSERT_EQ(back.initial.size(), eb.initial.size());
  ASSERT_EQ(back.final.size(), eb.final.size());
  for (std::size_t k = 0; k < eb.initial.size(); ++k) {
    EXPECT_EQ(back.initial[k].lo, eb.initial[k].lo);
    EXPECT_EQ(back.initial[k].w, eb.initial[k].w);
  }
  EXPECT_NO_THROW(validate_energy(eb));
}

TEST(HasseDot, LabelsAndPositions) {
  const Instance inst = fig1();
  const Schedule s = sched({"a", "c", "b", "e", "d", "f", "g"});
  const std::string dot = hasse_dot(inst, &s);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("\"a\" -> \"c\""), std::string::npos);
  EXPECT_EQ(dot.find("\"a\" -> \"e\""), std::string::npos);
  EXPECT_NE(dot.find("e\\n-4\\n#4"), std::string::npos);
}

TEST(Cli, SolveRoutesFig3ToSp) {
  TempDir dir;
  const CliRun r = cli({"solve", dir.file("fig3.json", fig3_json()).string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("method: sp"), std::string::npos);
  EXPECT_NE(r.out.find("budget: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("instance: fig3"), std::string::npos);
}

TEST(Cli, SolveRoutesConvexExample) {
  TempDir dir;
  const CliRun r = cli({"solve", "--json", dir.file("cx.json", instance_to_json(convex_example()).dump()).string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["method"], "convex");
  EXPECT_EQ(doc["budget"], "2");
  EXPECT_EQ(doc["instance"], "cx");
  EXPECT_EQ(doc["schedule"], Json::parse(R"(["p","x","q","y"])"));
  ASSERT_TRUE(doc["certificate"].is_object());
  // The emitted certificate checks.
  const fs::path cert = dir.file("cx.cert.json", doc["certificate"].dump());
  EXPECT_EQ(cli({"check", (dir.path() / "cx.json").string(), cert.string()}).code, 0);
}

TEST(Cli, SolveRoutesGeneralInstancesThroughReduction) {
  TempDir dir;
  const CliRun r = cli({"solve", dir.file("fig1.json", instance_to_json(fig1()).dump()).string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("method: reduce+convex"), std::string::npos);
  EXPECT_NE(r.out.find("budget: 3\n"), std::string::npos);
  const CliRun forced = cli({"solve", "--method", "oracle", (dir.path() / "fig1.json").string()});
  EXPECT_NE(forced.out.find("method: oracle"), std::string::npos);
  EXPECT_EQ(cli({"solve", "--method", "sp", (dir.path() / "fig1.json").string()}).code, 1);
}

TEST(Cli, SolveGuardsTheOracle) {
  TempDir dir;
  const fs::path big = dir.file("big.json", big_unsolvable_json());
  const CliRun r = cli({"solve", big.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("UnsolvableAtScale"), std::string::npos);
  EXPECT_EQ(cli({"solve", "--oracle-cap", "30", big.string()}).code, 0);
}

TEST(Cli, SolveWritesDot) {
  TempDir dir;
  const fs::path dot = dir.path() / "out.dot";
  EXPECT_EQ(cli({"solve", "--dot", dot.string(), dir.file("fig3.json", fig3_json()).string()}).code, 0);
  std::ifstream in(dot);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("digraph"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwo) {
  TempDir dir;
  EXPECT_EQ(cli({"solve", (dir.path() / "missing.json").string()}).code, 2);
  EXPECT_EQ(cli({"solve", dir.file("junk.json", "{not json").string()}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"solve", "--method", "magic", (dir.path() / "junk.json").string()}).code, 2);
}

TEST(Cli, CheckVerdicts) {
  TempDir dir;
  const fs::path inst = dir.file("fig3.json", fig3_json());
  const Instance f3 = fig3();
  const auto cert = [&](std::vector<Schedule> parts) {
    BlockSchedule bs;
    for (auto& p : parts) bs.blocks.push_back(make_block(f3, p));
    return certificate_to_json(bs).dump();
  };
  const CliRun pass = cli({"check", inst.string(),
                        dir.file("good.json", cert({sched({"a", "b"}), sched({"c", "d"}), sched({"e", "f"})})).string()});
  EXPECT_EQ(pass.code, 0);
  EXPECT_NE(pass.out.find("overall: pass"), std::string::npos);

  const CliRun fail = cli({"check", inst.string(),
                        dir.file("swap.json", cert({sched({"c", "d"}), sched({"a", "b"}), sched({"e", "f"})})).string()});
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("nondecreasing: fail"), std::string::npos);
  EXPECT_NE(fail.out.find("overall: fail"), std::string::npos);

  const CliRun missing =
      cli({"check", inst.string(), dir.file("short.json", cert({sched({"a", "b"}), sched({"c", "d"})})).string()});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("CoverageMismatch"), std::string::npos);
}

TEST(Cli, OracleSubcommand) {
  TempDir dir;
  const CliRun r = cli({"oracle", "--naive", dir.file("fig1.json", instance_to_json(fig1()).dump()).string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("budget: 3"), std::string::npos);
  EXPECT_NE(r.out.find("naive_budget: 3"), std::string::npos);
}

TEST(Cli, GenIsDeterministic) {
  const CliRun a = cli({"gen", "sp", "--n", "6", "--seed", "1"});
  const CliRun b = cli({"gen", "sp", "--n", "6", "--seed", "1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, cli({"gen", "sp", "--n", "6", "--seed", "2"}).out);
  const InstanceFile f = parse_instance(Json::parse(a.out));
  EXPECT_EQ(f.instance.size(), 6u);
  ASSERT_TRUE(f.sp.has_value());
  EXPECT_NO_THROW(verify_sp_tree(f.instance, *f.sp));
}

TEST(Cli, GenKinds) {
  const CliRun cx = cli({"gen", "convex", "--nplus", "4", "--nminus", "3", "--seed", "7"});
  ASSERT_EQ(cx.code, 0);
  const InstanceFile f = parse_instance(Json::parse(cx.out));
  EXPECT_EQ(convex_recognize(f.instance).side, ConvexSide::NMinus);
  EXPECT_EQ(convex_recognize(f.instance, f.convex_order).order, *f.convex_order);

  const CliRun empty = cli({"gen", "dag", "--n", "0"});
  ASSERT_EQ(empty.code, 0);
  EXPECT_TRUE(parse_instance(Json::parse(empty.out)).instance.empty());

  const CliRun energy = cli({"gen", "energy", "--intervals", "3", "--seed", "4"});
  ASSERT_EQ(energy.code, 0);
  EXPECT_NO_THROW(validate_energy(parse_energy(Json::parse(energy.out))));

  EXPECT_EQ(cli({"gen", "convex", "--nplus", "2", "--nminus", "2", "--cost-min", "1"}).code, 2);
  EXPECT_EQ(cli({"gen", "dag", "--n", "4", "--density", "2"}).code, 2);
}

TEST(Cli, BenchSpSuiteAgrees) {
  TempDir dir;
  for (int seed = 0; seed < 50; ++seed) {
    const fs::path p = dir.path() / ("sp" + std::to_string(100 + seed) + ".json");
    ASSERT_EQ(cli({"gen", "sp", "--n", std::to_string(1 + seed % 10), "--seed", std::to_string(seed),
                   "--out", p.string()})
                  .code,
              0);
  }
  const CliRun r = cli({"bench", dir.path().string()});
  EXPECT_EQ(r.code, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "instance,method,budget,oracle_budget,agree,ms");
  std::size_t sp_rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_NE(line.find(",true,"), std::string::npos) << line;
    if (line.find(",sp,") != std::string::npos) ++sp_rows;
  }
  EXPECT_EQ(sp_rows, 50u);
}

TEST(Cli, BenchReportsCorruptedCertificate) {
  TempDir dir;
  dir.file("fig3.json", fig3_json());
  BlockSchedule bs = sp_solve(fig3());
  std::swap(bs.blocks[0], bs.blocks[1]);
  dir.file("fig3.cert.json", certificate_to_json(bs).dump());
  const CliRun r = cli({"bench", dir.path().string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fig3,certificate,2,1,false"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("fig3,sp,1,1,true"), std::string::npos) << r.out;
}

TEST(Cli, BenchEmptyDirectory) {
  TempDir dir;
  const CliRun r = cli({"bench", dir.path().string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "instance,method,budget,oracle_budget,agree,ms\n");
  EXPECT_EQ(cli({"bench", (dir.path() / "nope").string()}).code, 2);
}

TEST(Cli, Transforms) {
  TempDir dir;
  const fs::path chain =
      dir.file("chain.json", instance_to_json(make({{"a", 1}, {"b", 2}, {"c", -1}}, {{"a", "b"}, {"b", "c"}})).dump());
  const CliRun bip = cli({"transform", "bipartite", chain.string()});
  ASSERT_EQ(bip.code, 0);
  EXPECT_EQ(Json::parse(bip.out)["precedences"], Json::parse(R"([["a","c"],["b","c"]])"));

  const CliRun rev = cli({"transform", "reverse", chain.string()});
  ASSERT_EQ(rev.code, 0);
  const InstanceFile r = parse_instance(Json::parse(rev.out));
  EXPECT_EQ(r.instance.cost_of("c"), q(1));
  EXPECT_TRUE(r.instance.precedes(r.instance.index_of("c"), r.instance.index_of("a")));

  const EnergyBarrierInstance eb{{{q(0), q(1), q(2)}}, {{q(2), q(3), q(1)}}};
  const fs::path energy = dir.file("eb.json", energy_to_json(eb).dump());
  const CliRun imp = cli({"transform", "energy-import", "--threshold", "1", energy.string()});
  ASSERT_EQ(imp.code, 0) << imp.err;
  EXPECT_EQ(parse_instance(Json::parse(imp.out)).instance.cost_of("jB"), q(-1));
  EXPECT_EQ(cli({"transform", "energy-import", "--threshold", "-1", energy.string()}).code, 2);

  const CliRun bar = cli({"transform", "energy-barrier", energy.string()});
  ASSERT_EQ(bar.code, 0);
  EXPECT_EQ(bar.out, "barrier: 1\n");
}

TEST(Cli, BinaryExitCodes) {
  const char* exe = std::getenv("MINBUDGET_CLI");
  if (exe == nullptr) GTEST_SKIP() << "MINBUDGET_CLI not set";
  TempDir dir;
  const fs::path big = dir.file("big.json", big_unsolvable_json());
  const fs::path fig = dir.file("fig3.json", fig3_json());
  auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("solve " + fig.string()), 0);
  EXPECT_EQ(status("solve " + big.string()), 3);
  EXPECT_EQ(status("solve " + (dir.path() / "absent.json").string()), 2);
  EXPECT_EQ(status("--help"), 0);
}
