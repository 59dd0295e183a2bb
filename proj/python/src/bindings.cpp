// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

// Python bindings. Physical samples are float arrays of shape (n3, n2, n1);
// spectral fields are complex arrays of shape (components, n3, n2, n1 // 2 + 1)
// in the library's r2c storage order.

#include <algorithm>
#include <cstring>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hypervisc/experiments.hpp"
#include "hypervisc/transform.hpp"

namespace py = pybind11;
using namespace hypervisc;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

void require_shape(const py::buffer_info& info, std::initializer_list<py::ssize_t> shape, const char* what) {
  const std::vector<py::ssize_t> want(shape);
  if (info.shape != want) {
    std::string s;
    for (auto d : want) s += (s.empty() ? "" : ", ") + std::to_string(d);
    throw InvalidArgument(std::string(what) + ": expected shape (" + s + ")");
  }
}

SpectralField scalar_from(const Grid& g, const ComplexArray& a) {
  const auto info = a.request();
  require_shape(info, {g.n3(), g.n2(), g.n1_half()}, "spectral scalar");
  SpectralField f(g);
  std::memcpy(f.coeffs().data(), info.ptr, g.spectral_size() * sizeof(Complex));
  return f;
}

ComplexArray scalar_to(const SpectralField& f) {
  const Grid& g = f.grid();
  ComplexArray out({g.n3(), g.n2(), g.n1_half()});
  std::memcpy(out.mutable_data(), f.coeffs().data(), g.spectral_size() * sizeof(Complex));
  return out;
}

VectorField field_from(const Grid& g, const ComplexArray& a) {
  const auto info = a.request();
  if (info.ndim != 4 || (info.shape[0] != 2 && info.shape[0] != 3)) {
    throw InvalidArgument("spectral field: expected shape (2 or 3, n3, n2, n1 // 2 + 1)");
  }
  require_shape(info, {info.shape[0], g.n3(), g.n2(), g.n1_half()}, "spectral field");
  const int c = static_cast<int>(info.shape[0]);
  VectorField f(g, c);
  const auto* src = static_cast<const Complex*>(info.ptr);
  for (int i = 0; i < c; ++i) {
    std::copy_n(src + static_cast<std::size_t>(i) * g.spectral_size(), g.spectral_size(), f[i].coeffs().data());
  }
  return f;
}

ComplexArray field_to(const VectorField& f) {
  const Grid& g = f.grid();
  ComplexArray out({static_cast<py::ssize_t>(f.size()), static_cast<py::ssize_t>(g.n3()),
                    static_cast<py::ssize_t>(g.n2()), static_cast<py::ssize_t>(g.n1_half())});
  for (int i = 0; i < f.size(); ++i) {
    std::copy_n(f[i].coeffs().data(), g.spectral_size(), out.mutable_data() + static_cast<std::size_t>(i) * g.spectral_size());
  }
  return out;
}

Equation equation_of(const VectorField& f) { return f.size() == 3 ? Equation::NavierStokes : Equation::Primitive; }

py::dict ledger_dict(const EnergyLedger& l) {
  py::dict d;
  d["time"] = py::array(py::cast(l.times));
  d["kinetic"] = py::array(py::cast(l.kinetic));
  d["dissipation_cum"] = py::array(py::cast(l.dissipation_cum));
  d["work_cum"] = py::array(py::cast(l.work_cum));
  d["residual"] = py::array(py::cast(l.residual));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "hyperviscous Navier-Stokes and primitive-equation spectral solver";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<Grid>(m, "Grid")
      .def(py::init([](int n1, int n2, int n3, const std::string& dealias) {
             return Grid(n1, n2, n3, Rational::parse(dealias));
           }),
           py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("dealias") = "2/3")
      .def_property_readonly("shape", [](const Grid& g) { return py::make_tuple(g.n3(), g.n2(), g.n1()); })
      .def_property_readonly("spectral_shape",
                             [](const Grid& g) { return py::make_tuple(g.n3(), g.n2(), g.n1_half()); })
      .def_property_readonly("dealias", [](const Grid& g) { return g.dealias_fraction().str(); })
      .def("coordinates", [](const Grid& g) {
        std::vector<double> x(g.n1()), y(g.n2()), z(g.n3());
        for (int i = 0; i < g.n1(); ++i) x[i] = g.x(i);
        for (int i = 0; i < g.n2(); ++i) y[i] = g.y(i);
        for (int i = 0; i < g.n3(); ++i) z[i] = g.z(i);
        return py::make_tuple(py::array(py::cast(x)), py::array(py::cast(y)), py::array(py::cast(z)));
      })
      .def("__repr__", [](const Grid& g) {
        return "Grid(" + std::to_string(g.n1()) + ", " + std::to_string(g.n2()) + ", " + std::to_string(g.n3()) +
               ", dealias='" + g.dealias_fraction().str() + "')";
      });

  py::class_<OperatorSpec>(m, "Operator")
      .def(py::init([](const std::string& variant, double nu, double epsilon, py::object l) {
             OperatorSpec op;
             op.variant = parse_variant(variant);
             op.nu = nu;
             op.epsilon = epsilon;
             if (l.is_none()) {
               op.l = op.variant == Variant::HorizontalHyper ? 2.0 : 1.25;
             } else if (py::isinstance<py::str>(l)) {
               op.l = Rational::parse(l.cast<std::string>()).value();
             } else {
               op.l = l.cast<double>();
             }
             op.validate();
             return op;
           }),
           py::arg("variant") = "full", py::arg("nu") = 1.0, py::arg("epsilon") = 0.0, py::arg("l") = py::none())
      .def_readonly("nu", &OperatorSpec::nu)
      .def_readonly("epsilon", &OperatorSpec::epsilon)
      .def_readonly("l", &OperatorSpec::l)
      .def_property_readonly("variant", [](const OperatorSpec& op) { return to_string(op.variant); })
      .def("symbol", [](const OperatorSpec& op, int k1, int k2, int k3) { return symbol(op, WaveIndex{k1, k2, k3}); },
           py::arg("k1"), py::arg("k2"), py::arg("k3"));

  m.def("set_deterministic", &set_deterministic_transforms, py::arg("enabled") = true);

  m.def(
      "forward",
      [](const Grid& g, const RealArray& samples) {
        const auto info = samples.request();
        require_shape(info, {g.n3(), g.n2(), g.n1()}, "forward");
        return scalar_to(forward_transform(
            g, std::span<const double>(static_cast<const double*>(info.ptr), g.physical_size())));
      },
      py::arg("grid"), py::arg("samples"), "Physical samples (n3, n2, n1) to spectral coefficients.");
  m.def(
      "inverse",
      [](const Grid& g, const ComplexArray& coeffs) {
        const auto s = inverse_transform(scalar_from(g, coeffs));
        RealArray out({g.n3(), g.n2(), g.n1()});
        std::copy(s.begin(), s.end(), out.mutable_data());
        return out;
      },
      py::arg("grid"), py::arg("coeffs"));

  m.def("norm_sq", [](const Grid& g, const ComplexArray& f) { return norm_sq(field_from(g, f)); });
  m.def("leray_project", [](const Grid& g, const ComplexArray& u) { return field_to(leray_project(field_from(g, u))); });
  m.def("hydrostatic_project",
        [](const Grid& g, const ComplexArray& v) { return field_to(hydrostatic_project(field_from(g, v))); });
  m.def("divergence", [](const Grid& g, const ComplexArray& u) { return scalar_to(divergence(field_from(g, u))); });
  m.def("nonlinearity", [](const Grid& g, const ComplexArray& u) {
    const VectorField f = field_from(g, u);
    return field_to(nonlinearity(State{equation_of(f), f, 0.0}));
  }, "Projected nonlinearity; 3 components select Navier-Stokes, 2 the primitive equations.");
  m.def("vertical_velocity",
        [](const Grid& g, const ComplexArray& v) { return scalar_to(vertical_velocity(field_from(g, v))); });

  m.def("beltrami", [](const Grid& g, double a) { return field_to(beltrami_field(g, a)); }, py::arg("grid"),
        py::arg("amplitude") = 1.0);
  m.def(
      "taylor_green",
      [](const Grid& g, const std::string& eq, double a) {
        return field_to(parse_equation(eq) == Equation::NavierStokes ? taylor_green_ns(g, a) : taylor_green_pe(g, a));
      },
      py::arg("grid"), py::arg("equation") = "ns", py::arg("amplitude") = 1.0);
  m.def(
      "single_mode",
      [](const Grid& g, const std::string& eq, std::array<int, 3> k, double a) {
        return field_to(single_mode(g, parse_equation(eq), WaveIndex{k[0], k[1], k[2]}, a));
      },
      py::arg("grid"), py::arg("equation"), py::arg("k"), py::arg("amplitude") = 1.0);
  m.def(
      "random_field",
      [](const Grid& g, const std::string& eq, double profile, std::uint64_t seed) {
        return field_to(random_field(g, constraint_for(parse_equation(eq)), profile, seed));
      },
      py::arg("grid"), py::arg("equation") = "ns", py::arg("spectrum_profile") = 1.5, py::arg("seed") = 0);

  m.def(
      "run",
      [](const Grid& g, const OperatorSpec& op, const ComplexArray& initial, double T, double dt, int record_every,
         bool nonlinear, py::object forcing, double omega) {
        RunConfig rc;
        rc.initial = field_from(g, initial);
        rc.equation = equation_of(rc.initial);
        rc.op = op;
        rc.T = T;
        rc.dt = dt;
        rc.record_every = record_every;
        rc.nonlinear = nonlinear;
        rc.keep_snapshots = false;
        if (!forcing.is_none()) {
          VectorField f = field_from(g, forcing.cast<ComplexArray>());
          rc.forcing = omega == 0.0 ? ForcingSpec::steady(std::move(f)) : ForcingSpec::modulated(std::move(f), omega);
        }
        State last;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(rc, [&](const State& s) { last = s; });
        }
        py::dict d;
        d["steps"] = r.steps;
        d["time"] = last.time;
        d["field"] = field_to(last.field);
        d["ledger"] = ledger_dict(r.ledger);
        return d;
      },
      py::arg("grid"), py::arg("op"), py::arg("initial"), py::arg("T"), py::arg("dt"), py::arg("record_every") = 1,
      py::arg("nonlinear") = true, py::arg("forcing") = py::none(), py::arg("omega") = 0.0,
      "Integrate to T; returns the final field and the energy ledger.");

  m.def(
      "existence_window",
      [](const Grid& g, const OperatorSpec& op, double u0_norm_sq, double f_norm_sq, double r, double C, double T) {
        const auto w = existence_window(u0_norm_sq, f_norm_sq, r, C, op, g, T);
        py::dict d;
        d["r"] = w.r;
        d["C"] = w.C;
        d["B"] = w.B;
        d["kmin"] = w.kmin;
        d["Ca"] = w.Ca;
        d["C1"] = w.C1;
        d["window"] = w.window;
        return d;
      },
      py::arg("grid"), py::arg("op"), py::arg("u0_norm_sq"), py::arg("f_norm_sq"), py::arg("r"), py::arg("C") = 1.0,
      py::arg("T") = 1.0);

  m.def(
      "verify_interpolation",
      [](const Grid& g, const OperatorSpec& op, int count, std::uint64_t seed, const std::string& equation,
         bool corrupt) {
        EnsembleSpec e;
        e.count = count;
        e.seed = seed;
        e.constraint = constraint_for(parse_equation(equation));
        const auto rep = verify_interpolation(g, e, op, corrupt ? NormCorruption::QuarterAsHalf : NormCorruption::None);
        py::dict d;
        d["passed"] = rep.passed;
        d["checked"] = rep.checked;
        d["violations"] = rep.violations;
        d["worst_margin"] = rep.worst_margin;
        return d;
      },
      py::arg("grid"), py::arg("op"), py::arg("count") = 100, py::arg("seed") = 0, py::arg("equation") = "ns",
      py::arg("corrupt") = false);

  m.def(
      "run_config",
      [](const std::filesystem::path& config, const std::filesystem::path& out) {
        const ExperimentConfig cfg = load_config(config);
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = run_experiment(cfg, out);
        }
        py::dict d;
        d["steps"] = s.steps;
        d["ledger"] = ledger_dict(s.ledger);
        d["energy_constant"] = s.estimate.constant;
        d["window"] = s.window.window;
        return d;
      },
      py::arg("config"), py::arg("out"), "Run a TOML experiment config, writing outputs under `out`.");
}
