#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nslit/channel.hpp"
#include "nslit/config.hpp"
#include "nslit/diffusion.hpp"
#include "nslit/error.hpp"
#include "nslit/gallery.hpp"
#include "nslit/oracle.hpp"
#include "nslit/run.hpp"
#include "nslit/superpose.hpp"
#include "nslit/trajectories.hpp"

namespace py = pybind11;
using namespace nslit;

namespace {

py::array_t<double> to_numpy(const Field2D& f) {
  py::array_t<double> out({f.rows, f.cols});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "n-slit interference from superposed ballistic diffusion";

  // leaked on purpose: the type must outlive interpreter teardown
  static auto* error = new py::exception<Error>(m, "NslitError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error->ptr(), e.describe().c_str());
    }
  });

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readonly("hbar", &PhysicalParams::hbar)
      .def_readonly("mass", &PhysicalParams::mass)
      .def_readonly("omega", &PhysicalParams::omega)
      .def_readonly("diffusivity", &PhysicalParams::diffusivity)
      .def_readonly("energy", &PhysicalParams::energy)
      .def_readonly("kT", &PhysicalParams::kT);
  m.def("derive_params", &derive_params, py::arg("hbar") = 2.0, py::arg("mass") = 1.0,
        py::arg("omega") = 1.0);

  py::class_<SlitSpec>(m, "SlitSpec")
      .def(py::init([](double center, double sigma0, double weight, double phase_offset,
                       double velocity_x) {
             return SlitSpec{center, sigma0, weight, phase_offset, velocity_x};
           }),
           py::arg("center") = 0.0, py::arg("sigma0") = 1.0, py::arg("weight") = 1.0,
           py::arg("phase_offset") = 0.0, py::arg("velocity_x") = 0.0)
      .def_readwrite("center", &SlitSpec::center)
      .def_readwrite("sigma0", &SlitSpec::sigma0)
      .def_readwrite("weight", &SlitSpec::weight)
      .def_readwrite("phase_offset", &SlitSpec::phase_offset)
      .def_readwrite("velocity_x", &SlitSpec::velocity_x);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](double x_min, double x_max, std::size_t nx, double t_max, std::size_t nt) {
             return GridSpec{x_min, x_max, nx, t_max, nt};
           }),
           py::arg("x_min"), py::arg("x_max"), py::arg("nx"), py::arg("t_max"), py::arg("nt"))
      .def_readwrite("x_min", &GridSpec::x_min)
      .def_readwrite("x_max", &GridSpec::x_max)
      .def_readwrite("nx", &GridSpec::nx)
      .def_readwrite("t_max", &GridSpec::t_max)
      .def_readwrite("nt", &GridSpec::nt)
      .def("x_at", &GridSpec::x_at)
      .def("t_at", &GridSpec::t_at);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_readonly("name", &ScenarioConfig::name)
      .def_readonly("params", &ScenarioConfig::params)
      .def_readonly("slits", &ScenarioConfig::slits)
      .def_readonly("grid", &ScenarioConfig::grid)
      .def_property_readonly("outputs",
                             [](const ScenarioConfig& c) {
                               std::vector<std::string> out;
                               for (Product p : c.outputs) out.emplace_back(product_name(p));
                               return out;
                             })
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  m.def("parse_config", [](const std::string& text) { return parse_config(text); });
  m.def("serialize_config", &serialize_config);
  m.def("gallery_scenarios", &gallery_scenarios);

  m.def("sigma_at", &sigma_at, py::arg("slit"), py::arg("params"), py::arg("t"));
  m.def("density_at", &density_at, py::arg("slit"), py::arg("params"), py::arg("x"), py::arg("t"));
  m.def("total_velocity", &total_velocity, py::arg("slit"), py::arg("params"), py::arg("x"),
        py::arg("t"));

  m.def(
      "superpose",
      [](const std::vector<SlitSpec>& slits, const PhysicalParams& params, const GridSpec& grid) {
        std::vector<Channel> ch;
        for (const SlitSpec& s : slits) ch.emplace_back(s, params);
        const SuperposedField f = sample(Superposition(std::move(ch)), grid);
        py::dict d;
        d["density"] = to_numpy(f.density);
        d["current"] = to_numpy(f.current);
        d["entangling"] = to_numpy(f.entangling);
        d["velocity"] = to_numpy(f.velocity);
        return d;
      },
      py::arg("slits"), py::arg("params"), py::arg("grid"));

  m.def(
      "oracle",
      [](const std::vector<SlitSpec>& slits, const PhysicalParams& params, const GridSpec& grid) {
        std::vector<Channel> ch;
        for (const SlitSpec& s : slits) ch.emplace_back(s, params);
        const WaveField f = sample(WaveFunction(std::move(ch)), grid);
        py::dict d;
        d["psi_re"] = to_numpy(f.psi_re);
        d["psi_im"] = to_numpy(f.psi_im);
        d["density"] = to_numpy(f.density);
        d["current"] = to_numpy(f.current);
        d["potential"] = to_numpy(f.potential);
        return d;
      },
      py::arg("slits"), py::arg("params"), py::arg("grid"));

  m.def(
      "run_diffusion",
      [](const SlitSpec& slit, const PhysicalParams& params, const GridSpec& grid) {
        const DiffusionHistory h = run_diffusion(slit, params, grid);
        return to_numpy(shifted_history(h, slit, grid));
      },
      py::arg("slit"), py::arg("params"), py::arg("grid"),
      "Lattice density at lab coordinates, one row per grid time.");

  m.def(
      "seed_positions",
      [](const std::vector<SlitSpec>& slits, std::size_t count) {
        std::vector<double> out;
        for (const Seed& s : seed_positions(slits, count)) out.push_back(s.x0);
        return out;
      },
      py::arg("slits"), py::arg("count"));

  m.def(
      "trajectories",
      [](const ScenarioConfig& cfg) {
        const TrajectorySet set = trace_scenario(cfg);
        py::list out;
        for (const Path& p : set.paths) {
          py::array_t<double> xs(static_cast<py::ssize_t>(p.x.size()));
          std::copy(p.x.begin(), p.x.end(), xs.mutable_data());
          out.append(xs);
        }
        return out;
      },
      py::arg("scenario"));

  m.def(
      "modular_decompose",
      [](double half_separation, double x, const SlitSpec& slit, const PhysicalParams& params,
         double t) {
        const ModularDecomposition d = modular_decompose(half_separation, x, slit, params, t);
        py::dict out;
        out["n"] = d.n;
        out["x_n"] = d.x_n;
        out["delta_x"] = d.delta_x;
        out["delta_p_mod"] = d.delta_p_mod;
        out["degenerate"] = d.degenerate;
        return out;
      },
      py::arg("half_separation"), py::arg("x"), py::arg("slit"), py::arg("params"), py::arg("t"));

  m.def(
      "run_scenario",
      [](const ScenarioConfig& cfg, const std::string& out_dir) {
        const RunManifest man = run_scenario(cfg, out_dir);
        py::dict files;
        for (const EmittedFile& f : man.files) files[py::str(f.name)] = f.sha256;
        return files;
      },
      py::arg("scenario"), py::arg("out_dir"));
}
