#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "minbudget/cbr.hpp"
#include "minbudget/cli.hpp"
#include "minbudget/convex.hpp"
#include "minbudget/io.hpp"
#include "minbudget/oracle.hpp"
#include "minbudget/sp.hpp"
#include "minbudget/transforms.hpp"

namespace py = pybind11;
namespace mb = minbudget;

namespace {

// Costs cross the boundary as fractions.Fraction; anything whose str() is an
// integer or "p/q" is accepted on the way in.
mb::Cost to_cost(const py::handle& obj) { return mb::parse_cost(py::str(obj).cast<std::string>()); }

py::object to_fraction(const mb::Cost& c) {
  return py::module_::import("fractions").attr("Fraction")(mb::format_cost(c));
}

std::vector<std::string> to_strings(const mb::Schedule& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& id : s) out.push_back(id.value);
  return out;
}

mb::Json parse_text(const std::string& text) {
  try {
    return mb::Json::parse(text);
  } catch (const mb::Json::exception& e) {
    throw mb::Error(mb::ErrorKind::ParseError, e.what());
  }
}

mb::Schedule to_schedule(const std::vector<std::string>& ids) { return {ids.begin(), ids.end()}; }

py::tuple triple(const mb::CbrTriple& t) {
  return py::make_tuple(to_fraction(t.c), to_fraction(t.b), to_fraction(t.r));
}

py::list blocks_to_py(const mb::BlockSchedule& bs) {
  py::list out;
  for (const auto& b : bs.blocks) {
    py::dict d;
    d["jobs"] = to_strings(mb::Schedule(b.jobs.begin(), b.jobs.end()));
    d["order"] = to_strings(b.order);
    d["stats"] = triple(b.stats);
    out.append(std::move(d));
  }
  return out;
}

mb::Instance make_instance(const py::iterable& jobs, const py::iterable& edges) {
  std::vector<mb::JobSpec> specs;
  for (const auto& item : jobs) {
    auto pair = item.cast<py::tuple>();
    specs.push_back({py::str(pair[0]).cast<std::string>(), to_cost(pair[1])});
  }
  std::vector<mb::Precedence> prec;
  for (const auto& item : edges) {
    auto pair = item.cast<py::tuple>();
    prec.push_back({py::str(pair[0]).cast<std::string>(), py::str(pair[1]).cast<std::string>()});
  }
  return mb::build_instance(std::move(specs), std::move(prec));
}

py::dict report_to_py(const mb::SolveReport& r) {
  py::dict d;
  d["method"] = r.method;
  d["budget"] = to_fraction(r.budget);
  d["schedule"] = to_strings(r.schedule);
  d["blocks"] = r.certificate ? py::object(blocks_to_py(*r.certificate)) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_minbudget, m) {
  m.doc() = "Exact minimum-budget scheduling of precedence-constrained jobs";

  // The type lives as long as the module; the handle keeps its own reference.
  static PyObject* error_type =
      py::register_exception<mb::Error>(m, "MinBudgetError", PyExc_ValueError).inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const mb::Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("kind") = std::string(mb::to_string(e.kind()));
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  py::class_<mb::Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("jobs"), py::arg("precedences") = py::list())
      .def_static(
          "from_json",
          [](const std::string& text) { return mb::parse_instance(parse_text(text)).instance; },
          py::arg("text"))
      .def("to_json", [](const mb::Instance& inst) { return mb::instance_to_json(inst).dump(); })
      .def_property_readonly("ids", [](const mb::Instance& inst) { return to_strings(inst.ids()); })
      .def("cost", [](const mb::Instance& inst, const std::string& id) { return to_fraction(inst.cost_of(id)); })
      .def("precedes",
           [](const mb::Instance& inst, const std::string& a, const std::string& b) {
             return inst.precedes(inst.index_of(a), inst.index_of(b));
           })
      .def("__len__", &mb::Instance::size);

  m.def(
      "schedule_stats",
      [](const mb::Instance& inst, const std::vector<std::string>& s) {
        return triple(mb::schedule_stats(inst, to_schedule(s)));
      },
      py::arg("instance"), py::arg("schedule"));
  m.def(
      "is_linear_extension",
      [](const mb::Instance& inst, const std::vector<std::string>& s) {
        return mb::is_linear_extension(inst, to_schedule(s));
      },
      py::arg("instance"), py::arg("schedule"));
  m.def(
      "min_budget",
      [](const mb::Instance& inst) {
        const auto s = mb::min_budget_exact(inst);
        return py::make_tuple(to_fraction(s.budget), to_strings(s.schedule));
      },
      py::arg("instance"));
  m.def(
      "naive_min_budget", [](const mb::Instance& inst) { return to_fraction(mb::naive_min_budget(inst)); },
      py::arg("instance"));
  m.def(
      "cbr_compare",
      [](const py::tuple& t1, const py::tuple& t2) {
        const mb::CbrTriple a{to_cost(t1[0]), to_cost(t1[1]), to_cost(t1[2])};
        const mb::CbrTriple b{to_cost(t2[0]), to_cost(t2[1]), to_cost(t2[2])};
        const auto o = mb::cbr_compare(a, b);
        return o < 0 ? -1 : (o > 0 ? 1 : 0);
      },
      py::arg("t1"), py::arg("t2"));
  m.def(
      "generic_solve", [](const mb::Instance& inst) { return blocks_to_py(mb::generic_solve(inst)); },
      py::arg("instance"));
  m.def(
      "sp_recognize", [](const mb::Instance& inst) { return mb::sp_to_string(mb::sp_recognize(inst)); },
      py::arg("instance"));
  m.def(
      "sp_solve", [](const mb::Instance& inst) { return blocks_to_py(mb::sp_solve(inst)); },
      py::arg("instance"));
  m.def(
      "convex_solve",
      [](const mb::Instance& inst, const std::string& side) {
        const auto choice = side == "nminus" ? mb::SideChoice::NMinus
                            : side == "nplus" ? mb::SideChoice::NPlus
                                              : mb::SideChoice::Auto;
        const auto r = mb::solve_convex_auto(inst, choice);
        py::dict d;
        d["side"] = r.side == mb::ConvexSide::NMinus ? "nminus" : "nplus";
        d["budget"] = to_fraction(r.budget);
        d["schedule"] = to_strings(r.schedule);
        d["blocks"] = r.certificate ? py::object(blocks_to_py(*r.certificate)) : py::object(py::none());
        return d;
      },
      py::arg("instance"), py::arg("side") = "auto");
  m.def(
      "solve",
      [](const std::string& instance_json, const std::string& method, std::size_t oracle_cap) {
        mb::SolveOptions options;
        options.method = method == "sp"       ? mb::SolveMethod::Sp
                         : method == "convex" ? mb::SolveMethod::Convex
                         : method == "oracle" ? mb::SolveMethod::Oracle
                                              : mb::SolveMethod::Auto;
        options.oracle_cap = oracle_cap;
        return report_to_py(mb::solve_instance(mb::parse_instance(parse_text(instance_json)), options));
      },
      py::arg("instance_json"), py::arg("method") = "auto", py::arg("oracle_cap") = 20);
  m.def(
      "check_iis",
      [](const mb::Instance& inst, const std::string& certificate_json) {
        const auto r = mb::check_iis(inst, mb::parse_certificate(parse_text(certificate_json)));
        py::dict d;
        d["linear_extension"] = r.linear_extension;
        d["intervals"] = r.intervals;
        d["irreducible"] = r.irreducible;
        d["optimal_blocks"] = r.optimal_blocks;
        d["nondecreasing"] = r.nondecreasing;
        d["pass"] = r.pass();
        d["notes"] = r.notes;
        return d;
      },
      py::arg("instance"), py::arg("certificate_json"));
  m.def("bipartite_reduce", &mb::bipartite_reduce, py::arg("instance"));
  m.def("reverse_instance", &mb::reverse_instance, py::arg("instance"));
  m.def(
      "repair_schedule",
      [](const mb::Instance& original, const std::vector<std::string>& s) {
        return to_strings(mb::repair_schedule(original, to_schedule(s)));
      },
      py::arg("original"), py::arg("schedule"));
  m.def(
      "energy_barrier_value",
      [](const std::string& energy_json) {
        return to_fraction(mb::energy_barrier_value(mb::parse_energy(parse_text(energy_json))));
      },
      py::arg("energy_json"));
}
