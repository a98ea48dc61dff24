#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corot2d/io.hpp"

namespace py = pybind11;
using namespace corot2d;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// pybind11 holders cannot point to const, so grids cross the boundary boxed
struct Grid {
  GridPtr p;
  const PeriodicGrid* operator->() const { return p.get(); }
};

// physical samples as an (N2, N1) array, y rows and x fastest
Array to_array(const ScalarField& f) {
  const auto& g = f.grid();
  auto v = f.physical();
  Array out({g.n2(), g.n1()});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ScalarField from_array(const GridPtr& g, const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != g->n2() || a.shape(1) != g->n1())
    throw DimensionError("expected an array of shape (n2, n1)");
  return forward(g, std::span<const double>(a.data(), a.size()));
}

py::dict state_dict(const State& s) {
  py::dict d;
  d["t"] = s.t;
  d["v1"] = to_array(s.v.v1);
  d["v2"] = to_array(s.v.v2);
  d["s11"] = to_array(s.s.s11);
  d["s12"] = to_array(s.s.s12);
  d["s22"] = to_array(s.s.s22);
  return d;
}

State state_from(const Grid& grid, const Array& v1, const Array& v2, const Array& s11, const Array& s12,
                 const Array& s22, double t, bool project) {
  const GridPtr& g = grid.p;
  State s{{from_array(g, v1), from_array(g, v2)}, {from_array(g, s11), from_array(g, s12), from_array(g, s22)}, t};
  return project ? project_state(s) : s;
}

// diagnostic rows as a dict of column arrays
py::dict columns(const std::vector<DiagRecord>& rows) {
  const auto& names = diag_columns();
  std::vector<Array> cols;
  for (std::size_t j = 0; j < names.size(); ++j) cols.emplace_back(static_cast<py::ssize_t>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto v = diag_values(rows[i]);
    for (std::size_t j = 0; j < names.size(); ++j) cols[j].mutable_data()[i] = v[j];
  }
  py::dict d;
  for (std::size_t j = 0; j < names.size(); ++j) d[py::str(names[j])] = cols[j];
  return d;
}

SimConfig config_from(const std::string& text, const std::map<std::string, std::string>& overrides) {
  return parse_config_file(text, overrides).sim;
}

Theorem theorem_of(int which) {
  if (which == 1) return Theorem::Thm1;
  if (which == 2) return Theorem::Thm2;
  throw ConfigError("theorem must be 1 or 2");
}

LabInequality inequality_of(const std::string& name) {
  if (name == "bg") return LabInequality::BrezisGallouet;
  if (name == "ladyzhenskaya") return LabInequality::Ladyzhenskaya;
  if (name == "agmon") return LabInequality::Agmon;
  throw ConfigError("unknown inequality '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_corot2d, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  py::class_<Grid>(m, "Grid")
      .def(py::init([](double l1, double l2, int n1, int n2) { return Grid{make_grid(l1, l2, n1, n2)}; }),
           py::arg("l1"), py::arg("l2"), py::arg("n1"), py::arg("n2"))
      .def_property_readonly("l1", [](const Grid& g) { return g->l1(); })
      .def_property_readonly("l2", [](const Grid& g) { return g->l2(); })
      .def_property_readonly("n1", [](const Grid& g) { return g->n1(); })
      .def_property_readonly("n2", [](const Grid& g) { return g->n2(); })
      .def_property_readonly("dx", [](const Grid& g) { return g->dx(); })
      .def_property_readonly("dy", [](const Grid& g) { return g->dy(); })
      .def("__repr__", [](const Grid& g) {
        return "Grid(" + std::to_string(g->n1()) + "x" + std::to_string(g->n2()) + ")";
      });

  py::class_<RegularizationKind>(m, "Regime")
      .def(py::init(&parse_regime), py::arg("name"), py::arg("epsilon") = 0.0)
      .def_property_readonly("name", &RegularizationKind::name)
      .def_readonly("epsilon", &RegularizationKind::eps)
      .def("__repr__", [](const RegularizationKind& r) {
        return "Regime('" + r.name() + "', " + std::to_string(r.eps) + ")";
      });

  py::class_<State>(m, "State")
      .def(py::init(&state_from), py::arg("grid"), py::arg("v1"), py::arg("v2"), py::arg("s11"), py::arg("s12"),
           py::arg("s22"), py::arg("t") = 0.0, py::arg("project") = true)
      .def_static("zeros", [](const Grid& g) { return State::zeros(g.p); })
      .def_static(
          "random",
          [](const Grid& g, const InitSpec& spec, std::uint64_t seed) { return make_initial_state(g.p, spec, seed); },
          py::arg("grid"), py::arg("spec"), py::arg("seed"))
      .def_readwrite("t", &State::t)
      .def_property_readonly("grid", [](const State& s) { return Grid{s.grid_ptr()}; })
      .def("fields", &state_dict)
      .def("energy", [](const State& s) { return seminorm_sq(s.v, 0) + seminorm_sq(s.s, 0); })
      .def("x", [](const State& s) { return seminorm_sq(s.v, 1) + seminorm_sq(s.s, 1); })
      .def("vorticity", [](const State& s) { return to_array(vorticity(s.v)); })
      .def("divergence", [](const State& s) { return to_array(divergence(s.v)); });

  py::class_<InitSpec>(m, "InitSpec")
      .def(py::init([](const std::string& kind, double v_l2, double s_l2, double decay, bool trace_free) {
             InitSpec s;
             s.kind = parse_init_kind(kind);
             s.v_l2 = v_l2;
             s.s_l2 = s_l2;
             s.spectrum.decay = decay;
             s.trace_free = trace_free;
             return s;
           }),
           py::arg("kind") = "random", py::arg("v_l2") = 0.1, py::arg("s_l2") = 0.1, py::arg("decay") = 3.0,
           py::arg("trace_free") = true)
      .def_readwrite("v_l2", &InitSpec::v_l2)
      .def_readwrite("s_l2", &InitSpec::s_l2)
      .def_readwrite("trace_free", &InitSpec::trace_free);

  py::class_<SimConfig>(m, "Config")
      .def(py::init(&config_from), py::arg("text"), py::arg("overrides") = std::map<std::string, std::string>{})
      .def_readwrite("n1", &SimConfig::n1)
      .def_readwrite("n2", &SimConfig::n2)
      .def_readwrite("l1", &SimConfig::l1)
      .def_readwrite("l2", &SimConfig::l2)
      .def_readwrite("regime", &SimConfig::reg)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("t_final", &SimConfig::t_final)
      .def_readwrite("use_cfl", &SimConfig::use_cfl)
      .def_readwrite("diag_every", &SimConfig::diag_every)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("blowup_limit", &SimConfig::blowup_limit)
      .def_readwrite("init", &SimConfig::init)
      .def_property_readonly("grid", [](const SimConfig& c) { return Grid{c.grid()}; })
      .def_property_readonly("stepper", &stepper_identity)
      .def("validate", &SimConfig::validate);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("status", [](const Trajectory& t) { return to_string(t.status); })
      .def_readonly("blowup_time", &Trajectory::blowup_time)
      .def_readonly("message", &Trajectory::message)
      .def_readonly("stepper", &Trajectory::stepper)
      .def_readonly("regime", &Trajectory::reg)
      .def_property_readonly("diagnostics", [](const Trajectory& t) { return columns(t.rows); })
      .def_property_readonly("states", [](const Trajectory& t) { return t.states; })
      .def("csv", &diag_csv)
      .def("__len__", [](const Trajectory& t) { return t.rows.size(); });

  m.def(
      "run",
      [](const SimConfig& cfg, std::optional<State> initial, bool keep_states) {
        State s0 = initial ? *initial : make_initial_state(cfg.grid(), cfg.init, cfg.seed);
        py::gil_scoped_release nogil;
        return run(cfg, s0, nullptr, {.keep_states = keep_states});
      },
      py::arg("config"), py::arg("initial") = py::none(), py::arg("keep_states") = false);

  m.def(
      "tendency",
      [](const State& s, const RegularizationKind& reg) {
        auto k = tendency(s, reg, {.include_diffusion = true});
        return state_dict({k.dv, k.ds, s.t});
      },
      py::arg("state"), py::arg("regime"));

  m.def(
      "step",
      [](const State& s, double dt, const RegularizationKind& reg) { return rk4_step(s, dt, reg); },
      py::arg("state"), py::arg("dt"), py::arg("regime"));

  m.def("corotational", [](const State& s) {
    State out{s.v, corotational(s.s, s.v), s.t};
    py::dict d = state_dict(out);
    return py::make_tuple(d["s11"], d["s12"], d["s22"]);
  });

  m.def("orthogonality_residual", &orthogonality_residual);

  m.def(
      "appendix_monitor",
      [](const State& s, int order) {
        auto a = appendix_monitor(s, order);
        return py::dict(py::arg("b") = a.b, py::arg("d3v") = a.d3v, py::arg("d3s") = a.d3s);
      },
      py::arg("state"), py::arg("order") = 3);

  m.def(
      "theorem_bounds",
      [](const Trajectory& tr, int which, std::optional<double> c0_floor) {
        auto b = theorem_bounds(tr, theorem_of(which), c0_floor);
        py::dict d;
        d["c0"] = b.c0;
        d["c0_fitted"] = b.c0_fitted;
        d["x0"] = b.x0;
        d["horizon"] = b.horizon;
        d["small_data"] = b.small_data;
        d["c1"] = b.c1;
        d["t"] = b.t;
        d["monitored"] = b.monitored;
        d["curve"] = b.curve;
        d["max_ratio"] = b.max_ratio;
        d["max_ratio_c1"] = b.max_ratio_c1;
        d["holds"] = b.holds;
        return d;
      },
      py::arg("trajectory"), py::arg("theorem"), py::arg("c0_floor") = py::none());

  m.def("dual_norm", [](const Trajectory& tr) {
    auto d = dual_norm_estimate(tr);
    return py::make_tuple(d.finite_difference, d.a_priori_bound);
  });

  m.def(
      "mms",
      [](const SimConfig& cfg) {
        py::list out;
        for (const auto& r : manufactured_run(cfg)) {
          py::dict d;
          d["ladder"] = r.ladder;
          d["family"] = to_string(r.family);
          d["n"] = r.n;
          d["dt"] = r.dt;
          d["err_v"] = r.err_v;
          d["err_s"] = r.err_s;
          d["order_v"] = r.order_v;
          d["order_s"] = r.order_s;
          out.append(d);
        }
        return out;
      },
      py::arg("config"));

  m.def(
      "galerkin",
      [](const SimConfig& cfg, const std::vector<int>& ns) {
        py::list out;
        for (const auto& r : galerkin_ladder(cfg, ns)) {
          py::dict d;
          d["n_coarse"] = r.n_coarse;
          d["n_fine"] = r.n_fine;
          d["sup_dv"] = r.sup_dv;
          d["sup_ds"] = r.sup_ds;
          out.append(d);
        }
        return out;
      },
      py::arg("config"), py::arg("levels"));

  m.def(
      "inequality_lab",
      [](const std::string& which, const Grid& g, std::uint64_t seed, int count, double decay, double amp_min,
         double amp_max) {
        auto lab = inequality_lab(inequality_of(which), g.p, seed, count, decay, amp_min, amp_max);
        py::dict d;
        d["fitted_constant"] = lab.fitted_constant;
        d["heldout_max"] = lab.heldout_max;
        d["heldout_over_fit"] = lab.heldout_over_fit;
        d["split_violations"] = lab.split_violations;
        d["fit_ratios"] = lab.fit_ratios;
        d["heldout_ratios"] = lab.heldout_ratios;
        return d;
      },
      py::arg("inequality"), py::arg("grid"), py::arg("seed") = 1, py::arg("count") = 100, py::arg("decay") = 3.0,
      py::arg("amp_min") = 1.0, py::arg("amp_max") = 1.0);

  m.def(
      "brezis_gallouet_ratio",
      [](const Grid& g, const Array& a) { return brezis_gallouet_ratio(from_array(g.p, a)); }, py::arg("grid"),
      py::arg("samples"));

  m.def(
      "write_snapshot",
      [](const std::string& path, const Array& a, double l1, double l2, double t, const std::string& name) {
        if (a.ndim() != 2) throw DimensionError("snapshot samples must be 2-d");
        Snapshot s;
        s.n2 = static_cast<int>(a.shape(0));
        s.n1 = static_cast<int>(a.shape(1));
        s.l1 = l1;
        s.l2 = l2;
        s.t = t;
        s.name = name;
        s.samples.assign(a.data(), a.data() + a.size());
        write_snapshot(path, s);
      },
      py::arg("path"), py::arg("samples"), py::arg("l1"), py::arg("l2"), py::arg("t"), py::arg("name"));

  m.def("read_snapshot", [](const std::string& path) {
    auto s = read_snapshot(path);
    Array a({s.n2, s.n1});
    std::copy(s.samples.begin(), s.samples.end(), a.mutable_data());
    py::dict d;
    d["samples"] = a;
    d["l1"] = s.l1;
    d["l2"] = s.l2;
    d["t"] = s.t;
    d["name"] = s.name;
    return d;
  });
}
