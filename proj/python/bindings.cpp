// Python bindings for the kicked-oscillator core.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <optional>

#include "kho/config.hpp"
#include "kho/errors.hpp"
#include "kho/experiments.hpp"
#include "kho/frft.hpp"
#include "kho/phase_space.hpp"
#include "kho/propagators.hpp"
#include "kho/spectral.hpp"

namespace py = pybind11;
using namespace kho;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ComplexVector to_vector(const CArray& a) {
  if (a.ndim() != 1) throw DomainError("expected a one-dimensional array");
  return ComplexVector(a.data(), a.data() + a.size());
}

CArray to_array(std::span<const Complex> v) {
  CArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

RArray to_array(const std::vector<double>& v) {
  RArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

WaveFunction wave(const GridSpec& grid, const CArray& amplitudes) {
  return WaveFunction(grid, to_vector(amplitudes));
}

}  // namespace

PYBIND11_MODULE(_kho, m) {
  m.doc() = "Kicked harmonic oscillator: fractional Fourier propagation, Floquet spectra, "
            "classical map and experiment runner";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConfinementError>(m, "ConfinementError", PyExc_RuntimeError);
  py::register_exception<DecompositionError>(m, "DecompositionError", PyExc_RuntimeError);

  m.attr("GOLDEN_RATIO") = kGoldenRatio;

  m.def("frft", [](const CArray& v, double theta) { return to_array(frft(to_vector(v), TransformAngle{theta})); },
        py::arg("signal"), py::arg("theta"), "Fractional Fourier transform on a centered grid.");
  m.def("dft_centered", [](const CArray& v) { return to_array(dft_centered(to_vector(v))); });
  m.def("inverse_dft_centered",
        [](const CArray& v) { return to_array(inverse_dft_centered(to_vector(v))); });

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("hbar") = 1.0)
      .def_property_readonly("size", &GridSpec::size)
      .def_property_readonly("hbar", &GridSpec::hbar)
      .def_property_readonly("spacing", &GridSpec::spacing)
      .def_property_readonly("extent", &GridSpec::extent)
      .def("points", [](const GridSpec& g) {
        std::vector<double> x(g.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.point(i);
        return to_array(x);
      });

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double ratio, double mu, double k, double hbar, double omega) {
             SystemParams p;
             p.ratio = ratio;
             p.mu = mu;
             p.k = k;
             p.hbar = hbar;
             p.omega = omega;
             p.validate();
             return p;
           }),
           py::arg("ratio") = 0.25, py::arg("mu") = 0.0, py::arg("k") = 1.0,
           py::arg("hbar") = 1.0, py::arg("omega") = 1.0)
      .def_static("resonance", &SystemParams::resonance, py::arg("r"), py::arg("mu"),
                  py::arg("k") = 1.0, py::arg("hbar") = 1.0)
      .def_readwrite("ratio", &SystemParams::ratio)
      .def_readwrite("mu", &SystemParams::mu)
      .def_readwrite("k", &SystemParams::k)
      .def_readwrite("hbar", &SystemParams::hbar)
      .def_readwrite("omega", &SystemParams::omega)
      .def("theta_rot", &SystemParams::theta_rot)
      .def("t_kick", &SystemParams::t_kick);

  m.def("coherent_state",
        [](const GridSpec& g, double q0, double p0, double omega0) {
          return to_array(coherent_state(g, q0, p0, omega0).amplitudes());
        },
        py::arg("grid"), py::arg("q0"), py::arg("p0"), py::arg("omega0") = 1.0);

  m.def("observables", [](const GridSpec& g, const CArray& amp) {
    const auto o = observables(wave(g, amp));
    py::dict d;
    d["norm"] = o.norm;
    d["mean_q"] = o.mean_q;
    d["mean_p"] = o.mean_p;
    d["mean_q2"] = o.mean_q2;
    d["mean_p2"] = o.mean_p2;
    d["energy"] = o.energy;
    return d;
  });

  m.def("floquet_step", [](const GridSpec& g, const CArray& amp, const SystemParams& p) {
    return to_array(floquet_step(wave(g, amp), p).amplitudes());
  });

  m.def("split_step_floquet_step",
        [](const GridSpec& g, const CArray& amp, const SystemParams& p, double dt) {
          return to_array(split_step_floquet_step(wave(g, amp), p, dt).amplitudes());
        });
  m.def("split_step_bound", &split_step_bound);

  m.def("evolve_record",
        [](const GridSpec& g, const CArray& amp, const SystemParams& p, std::size_t n_kicks,
           std::size_t ensemble_m, std::pair<double, double> center, std::uint64_t seed) {
          const auto psi = wave(g, amp);
          EnergySeries s;
          {
            py::gil_scoped_release release;
            s = ensemble_m == 0
                    ? evolve_record(psi, p, n_kicks)
                    : evolve_record(psi, p, n_kicks,
                                    sample_ensemble({center.first, center.second}, ensemble_m,
                                                    p.hbar, seed));
          }
          py::dict d;
          d["quantum"] = to_array(s.quantum);
          d["classical"] = to_array(s.classical);
          return d;
        },
        py::arg("grid"), py::arg("amplitudes"), py::arg("params"), py::arg("n_kicks"),
        py::arg("ensemble_m") = 0, py::arg("center") = std::pair<double, double>{0.0, 0.0},
        py::arg("seed") = 1);

  m.def("floquet_spectrum",
        [](const SystemParams& p, std::size_t n) {
          const GridSpec g(n, p.hbar);
          std::optional<FloquetEigensystem> decomposed;
          {
            py::gil_scoped_release release;
            decomposed.emplace(eigendecompose(build_floquet_matrix(p, g), g));
          }
          const auto& sys = *decomposed;
          const auto metrics = eigenstate_metrics(sys);
          std::vector<double> ipr(metrics.size());
          for (std::size_t j = 0; j < ipr.size(); ++j) ipr[j] = metrics[j].ipr;
          py::dict d;
          d["quasi_energies"] = to_array(sys.quasi_energies);
          d["mean_energies"] = to_array(sys.mean_energies);
          d["ipr"] = to_array(ipr);
          d["residuals"] = to_array(sys.residuals);
          py::array_t<Complex, py::array::f_style> vecs(
              {static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
          std::copy(sys.eigenvectors.data(), sys.eigenvectors.data() + n * n,
                    vecs.mutable_data());
          d["eigenvectors"] = vecs;
          return d;
        },
        py::arg("params"), py::arg("n"),
        "Eigendecomposition of the one-period Floquet matrix, sorted by mean energy.");

  m.def("classical_map_step", [](double q, double p, const SystemParams& params) {
    const auto pt = classical_map_step({q, p}, params);
    return std::pair<double, double>{pt.q, pt.p};
  });

  m.def("ensemble_energy_series",
        [](std::pair<double, double> center, std::size_t m, const SystemParams& p,
           std::size_t n_kicks, std::uint64_t seed) {
          return to_array(ensemble_energy_series(
              sample_ensemble({center.first, center.second}, m, p.hbar, seed), p, n_kicks));
        },
        py::arg("center"), py::arg("m"), py::arg("params"), py::arg("n_kicks"),
        py::arg("seed") = 1);

  m.def("husimi", [](const GridSpec& g, const CArray& amp, const RArray& q_axis,
                     const RArray& p_axis) {
    const auto h = husimi(wave(g, amp), {q_axis.data(), static_cast<std::size_t>(q_axis.size())},
                          {p_axis.data(), static_cast<std::size_t>(p_axis.size())});
    RArray out({static_cast<py::ssize_t>(h.q_axis.size()), static_cast<py::ssize_t>(h.p_axis.size())});
    std::copy(h.values.begin(), h.values.end(), out.mutable_data());
    return out;
  });

  m.def("validate_config", [](const std::filesystem::path& path) {
    return std::string(to_string(load_config(path).experiment));
  });

  m.def("run_config",
        [](const std::filesystem::path& path, std::optional<std::filesystem::path> output_dir) {
          auto cfg = load_config(path);
          if (output_dir) cfg.output_dir = *output_dir;
          RunReport report;
          {
            py::gil_scoped_release release;
            report = run_experiment(cfg);
          }
          std::vector<std::filesystem::path> files;
          for (const auto& f : report.files) files.push_back(cfg.output_dir / f);
          py::dict d;
          d["files"] = files;
          d["truncated_at"] = report.truncated_at;
          return d;
        },
        py::arg("path"), py::arg("output_dir") = py::none(),
        "Run the experiment in a config file; returns the written paths.");
}
