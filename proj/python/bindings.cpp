#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <sstream>

#include "decaylab/bounds.hpp"
#include "decaylab/cli.hpp"
#include "decaylab/codes.hpp"
#include "decaylab/decay_search.hpp"
#include "decaylab/io.hpp"
#include "decaylab/sequences.hpp"

namespace py = pybind11;
using namespace decaylab;

namespace {

// GMP integers cross the boundary as Python ints via their decimal text.
py::int_ to_py(const BigInt& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

BigInt from_py(const py::handle& x) { return BigInt(py::str(x).cast<std::string>()); }

py::tuple coords(const UserCoords& u) { return py::make_tuple(to_py(u.a), to_py(u.b), to_py(u.c), to_py(u.d)); }

py::dict record_dict(const DecayRecord& r) {
  py::dict d;
  d["n1"] = r.n1;
  d["n2"] = r.n2;
  d["detsq"] = py::make_tuple(to_py(r.min_detsq.p), to_py(r.min_detsq.q));
  d["detsq_float"] = r.min_detsq_float;
  d["decay"] = r.decay_value();
  d["w1"] = coords(r.witness1);
  d["w2"] = coords(r.witness2);
  d["orbit_reduced_count"] = r.orbit_reduced_count;
  d["visited_pairs"] = r.visited_pairs;
  d["exact_confirmations"] = r.exact_confirmations;
  d["wall_time_s"] = r.wall_time;
  return d;
}

SearchOptions options(unsigned workers, std::optional<std::uint64_t> budget, bool force,
                      std::optional<std::uint64_t> shuffle_seed) {
  SearchOptions o;
  o.workers = workers;
  if (budget) o.budget = *budget;
  o.override_budget = force;
  o.shuffle_seed = shuffle_seed;
  return o;
}

CodeConfig config(const std::string& gamma) {
  CodeConfig cfg;
  cfg.gamma = parse_ring_elem(gamma);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic over Z[i, tau] and minimum-determinant searches";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

  py::class_<RingElem>(m, "RingElem")
      .def(py::init([](const py::object& a, const py::object& b, const py::object& c,
                       const py::object& d) { return RingElem(from_py(a), from_py(b), from_py(c), from_py(d)); }),
           py::arg("a") = 0, py::arg("b") = 0, py::arg("c") = 0, py::arg("d") = 0)
      .def_static("parse", [](const std::string& s) { return parse_ring_elem(s); })
      .def_property_readonly("a", [](const RingElem& x) { return to_py(x.a); })
      .def_property_readonly("b", [](const RingElem& x) { return to_py(x.b); })
      .def_property_readonly("c", [](const RingElem& x) { return to_py(x.c); })
      .def_property_readonly("d", [](const RingElem& x) { return to_py(x.d); })
      .def("coords", [](const RingElem& x) { return py::make_tuple(to_py(x.a), to_py(x.b), to_py(x.c), to_py(x.d)); })
      .def("sigma", [](const RingElem& x) { return sigma(x); })
      .def("rho", [](const RingElem& x) { return rho(x); })
      .def("mu", [](const RingElem& x) { return mu(x); })
      .def("abs_squared", [](const RingElem& x) {
        const QuadInt n = abs_squared(x);
        return py::make_tuple(to_py(n.p), to_py(n.q));
      }, "|x|^2 as (p, q) meaning p + q*tau")
      .def("__complex__", [](const RingElem& x) { return to_complex(x); })
      .def("__add__", [](const RingElem& x, const RingElem& y) { return x + y; })
      .def("__sub__", [](const RingElem& x, const RingElem& y) { return x - y; })
      .def("__mul__", [](const RingElem& x, const RingElem& y) { return x * y; })
      .def("__neg__", [](const RingElem& x) { return -x; })
      .def("__pow__", [](const RingElem& x, unsigned e) { return pow(x, e); })
      .def("__eq__", [](const RingElem& x, const RingElem& y) { return x == y; })
      .def("__hash__", [](const RingElem& x) { return py::hash(py::str(to_string(x))); })
      .def("__str__", [](const RingElem& x) { return to_string(x); })
      .def("__repr__", [](const RingElem& x) { return "RingElem('" + to_string(x) + "')"; });

  m.def("det_abs_squared", [](const RingElem& x1, const RingElem& x2, const std::string& gamma) {
    const QuadInt n = det_abs_squared(x1, x2, config(gamma));
    return py::make_tuple(to_py(n.p), to_py(n.q));
  }, py::arg("x1"), py::arg("x2"), py::arg("gamma") = "i");

  m.def("decay", [](int n1, int n2, unsigned workers, const std::string& gamma,
                    std::optional<std::uint64_t> budget, bool force, std::optional<std::uint64_t> shuffle_seed) {
    DecayRecord r;
    {
      py::gil_scoped_release release;
      r = decay(n1, n2, config(gamma), options(workers, budget, force, shuffle_seed));
    }
    return record_dict(r);
  }, py::arg("n1"), py::arg("n2"), py::arg("workers") = 1, py::arg("gamma") = "i",
     py::arg("budget") = py::none(), py::arg("force") = false, py::arg("shuffle_seed") = py::none(),
     "Exact minimum |det|^2 over the box [-n1,n1]^4 x [-n2,n2]^4");

  m.def("decay_series", [](int nmax, const std::string& mode, unsigned workers) {
    if (mode != "equal" && mode != "fixed_second") throw py::value_error("mode must be 'equal' or 'fixed_second'");
    std::vector<DecayRecord> recs;
    {
      py::gil_scoped_release release;
      recs = decay_series(nmax, mode == "equal" ? SeriesMode::equal : SeriesMode::fixed_second, {},
                          options(workers, std::nullopt, false, std::nullopt));
    }
    py::list out;
    for (const auto& r : recs) out.append(record_dict(r));
    return out;
  }, py::arg("nmax"), py::arg("mode") = "equal", py::arg("workers") = 1);

  m.def("orbit_rep_count", [](int n) { return enumerate_orbit_reps(n).size(); });

  m.def("z_element", [](unsigned n) { return z_element(n); });
  m.def("m_factor", [](int j, unsigned n) { return m_factor(j, n); });
  m.def("factor_z5n", [](unsigned n) {
    const Z5nFactorization f = factor_z5n(n);
    return py::make_tuple(f.j, f.z, f.m_low, f.m_high);
  }, "(j, z_n, m_j(n), m_{j+2}(n))");

  m.def("table_rows", [] {
    py::list out;
    for (const SequenceRecord& r : table_rows()) {
      py::dict d;
      d["n"] = r.n;
      d["m"] = to_py(r.m);
      d["delta"] = format_delta(r.delta_estimate);
      d["x1"] = r.x1;
      d["x2"] = r.x2;
      d["detsq"] = py::make_tuple(to_py(r.detsq.p), to_py(r.detsq.q));
      out.append(d);
    }
    return out;
  });

  m.def("tau_convergents", [](const py::object& max_k) {
    py::list out;
    for (const Convergent& c : tau_convergents(from_py(max_k)))
      out.append(py::make_tuple(to_py(c.h), to_py(c.k), c.quality));
    return out;
  }, py::arg("max_k"), "[(h, k, k*|k*tau - h|), ...] starting at 2/1");

  m.def("fit_exponent", [](const std::vector<std::pair<double, double>>& pts) {
    const ExponentFit f = fit_exponent(pts);
    py::dict d;
    d["delta"] = f.delta;
    d["constant"] = f.constant;
    d["residual"] = f.residual;
    d["sample_count"] = f.sample_count;
    return d;
  }, py::arg("points"), "Least-squares fit of D = C * N^-delta to (N, D) pairs");

  m.def("dmt_optimality", [](const std::string& r, std::optional<std::string> delta) {
    DmtQuery q;
    q.r = parse_rational(r);
    if (delta) {
      q.mode = DeltaMode::empirical;
      q.empirical_delta = parse_rational(*delta);
    }
    const DmtResult res = dmt_optimality(q);
    return py::make_tuple(to_string(res.lhs), to_string(res.rhs), res.optimal);
  }, py::arg("r"), py::arg("delta") = py::none(), "(2r + delta, r_S(r), optimal) with exact rationals as 'n/d'");

  m.def("dmt_threshold", [](std::optional<std::string> delta) -> std::optional<std::string> {
    const auto t = delta ? dmt_threshold(DeltaMode::empirical, parse_rational(*delta))
                         : dmt_threshold(DeltaMode::theoretical_2r);
    if (!t) return std::nullopt;
    return to_string(*t);
  }, py::arg("delta") = py::none());

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "decaylab");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr)");
}
