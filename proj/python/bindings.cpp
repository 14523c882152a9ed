#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "photonprop/cli.hpp"
#include "photonprop/errors.hpp"
#include "photonprop/media.hpp"
#include "photonprop/observables.hpp"
#include "photonprop/propagate.hpp"
#include "photonprop/scenario.hpp"
#include "photonprop/specfun.hpp"

namespace py = pybind11;
using namespace photonprop;

namespace {

py::dict trace_dict(const TimeSeries& ts) {
  py::array_t<double> tau(static_cast<py::ssize_t>(ts.size()));
  py::array_t<std::complex<double>> amp(static_cast<py::ssize_t>(ts.size()));
  auto t = tau.mutable_unchecked<1>();
  auto a = amp.mutable_unchecked<1>();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t(static_cast<py::ssize_t>(i)) = ts.tau(i);
    a(static_cast<py::ssize_t>(i)) = ts.amplitude[i];
  }
  py::dict d;
  d["tau"] = tau;
  d["amplitude"] = amp;
  d["provenance"] = std::string(to_string(ts.provenance));
  if (ts.jump) d["jump"] = py::make_tuple(ts.jump->index, ts.jump->left, ts.jump->right);
  if (ts.diagnostics) {
    py::dict diag;
    diag["fft_size"] = ts.diagnostics->fft_size;
    diag["refinements"] = ts.diagnostics->refinements;
    diag["drift"] = ts.diagnostics->drift;
    d["diagnostics"] = diag;
  }
  return d;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "photonprop");
  std::vector<char*> argv;
  for (auto& s : args) argv.push_back(s.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

PYBIND11_MODULE(_photonprop, m) {
  m.doc() = "Single-photon propagation through resonant absorbers";

  auto validity = py::register_exception<ValidityError>(m, "ValidityError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", validity.ptr());
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("bessel_j", &specfun::bessel_j, py::arg("order"), py::arg("x"));
  m.def("bessel_i", &specfun::bessel_i, py::arg("order"), py::arg("x"));
  m.def("scaled_bessel_i0", &specfun::scaled_bessel_i0, py::arg("x"));
  m.def("erf", &specfun::erf, py::arg("x"));

  py::enum_<WaveformKind>(m, "WaveformKind")
      .value("EXPONENTIAL", WaveformKind::ExponentialCausal)
      .value("SYMMETRIC", WaveformKind::SymmetricPart)
      .value("ANTISYMMETRIC", WaveformKind::AntisymmetricPart)
      .value("GAUSSIAN", WaveformKind::Gaussian);

  py::class_<PhotonWaveform>(m, "PhotonWaveform")
      .def(py::init<WaveformKind, double>(), py::arg("kind"), py::arg("delta_ph"))
      .def(py::init([](const std::string& kind, double d) { return PhotonWaveform(parse_waveform_kind(kind), d); }),
           py::arg("kind"), py::arg("delta_ph"))
      .def_property_readonly("kind", &PhotonWaveform::kind)
      .def_property_readonly("delta_ph", &PhotonWaveform::delta_ph)
      .def("time_amplitude", [](const PhotonWaveform& w, double t) { return time_amplitude(w, t); })
      .def("spectral_amplitude", [](const PhotonWaveform& w, double nu) { return spectral_amplitude(w, nu); });

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("t_start"), py::arg("t_end"), py::arg("n_points"))
      .def_property_readonly("spacing", &TimeGrid::spacing)
      .def("__len__", &TimeGrid::size);

  py::class_<AbsorberSpec>(m, "AbsorberSpec")
      .def_static("matched", &AbsorberSpec::matched, py::arg("gamma"), py::arg("thickness"))
      .def_static("broad", &AbsorberSpec::broad, py::arg("width"), py::arg("thickness"))
      .def_static("eit", &AbsorberSpec::eit, py::arg("width"), py::arg("gamma_m"), py::arg("omega"),
                  py::arg("thickness"))
      .def_static("fe57_siderite", &fe57_siderite, py::arg("omega") = 20.0, py::arg("thickness") = 30.0)
      .def_property_readonly("kind", [](const AbsorberSpec& a) { return std::string(a.kind_name()); })
      .def_property_readonly("thickness", &AbsorberSpec::thickness)
      .def_property_readonly("optical_depth", &AbsorberSpec::optical_depth)
      .def("spectral_response", [](const AbsorberSpec& a, double nu) { return spectral_response(a, nu); });

  py::class_<EitParams>(m, "EitParams")
      .def_readonly("t_eit", &EitParams::t_eit)
      .def_readonly("t_d", &EitParams::t_d)
      .def_readonly("delta_eff", &EitParams::delta_eff)
      .def_readonly("delta_eit", &EitParams::delta_eit);
  m.def("eit_params", &eit_params, py::arg("medium"));

  m.def(
      "propagate",
      [](const std::string& method, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a, const TimeGrid& g) {
        return trace_dict(propagate(parse_provenance(method), w, a, g));
      },
      py::arg("method"), py::arg("source"), py::arg("medium"), py::arg("grid"));

  m.def("pulse_area", [](const std::string& method, const PhotonWaveform& w, const std::optional<AbsorberSpec>& a,
                         const TimeGrid& g) { return pulse_area(propagate(parse_provenance(method), w, a, g)).value; });
  m.def("u_matched", [](double t) {
    const auto u = u_matched(t);
    return py::make_tuple(u.symmetric, u.antisymmetric, u.total());
  });
  m.def("u_broad", [](double d, double width, double tb) {
    const auto u = u_broad(d, width, tb);
    return py::make_tuple(u.symmetric, u.antisymmetric);
  });
  m.def("u_gaussian", &u_gaussian, py::arg("delta_ph"), py::arg("width"), py::arg("thickness"));
  m.def("u_eit_adiabatic", &u_eit_adiabatic, py::arg("delta_ph"), py::arg("params"));

  m.def("preset_names", &preset_names);
  m.def("figure_preset", [](const std::string& name) { return figure_preset(name); }, py::arg("name"));
  m.def("run_cli", &run_cli, py::arg("args"), "Runs the command-line front end and returns its exit code.");
}
