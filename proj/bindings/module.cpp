#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "oscillint/asymptotics.hpp"
#include "oscillint/besov.hpp"
#include "oscillint/opnorm.hpp"
#include "oscillint/runner.hpp"
#include "oscillint/transform.hpp"
#include "oscillint/version.hpp"

namespace py = pybind11;
using namespace oscillint;

namespace {

py::array_t<std::complex<double>> samples_array(const GridField& f) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(f.dim),
                                 static_cast<py::ssize_t>(f.n));
  py::array_t<std::complex<double>> out(shape);
  std::copy(f.samples.begin(), f.samples.end(), out.mutable_data());
  return out;
}

GridField field_from_array(int dim, double half_side, int side,
                           py::array_t<std::complex<double>, py::array::c_style> arr) {
  if (arr.ndim() != dim) throw ValidationError("samples array rank must match dimension");
  GridField f = make_grid(dim, arr.shape(0), half_side,
                          side == 0 ? Side::fourier : Side::space);
  if (static_cast<std::size_t>(arr.size()) != f.samples.size())
    throw ValidationError("samples array must be a cube of the grid size");
  std::copy(arr.data(), arr.data() + arr.size(), f.samples.begin());
  return f;
}

}  // namespace

PYBIND11_MODULE(_oscillint, m) {
  m.doc() = "oscillating-symbol multiplier laboratory (native core)";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<CoverageError>(m, "CoverageError", PyExc_RuntimeError);

  py::class_<SmoothBump>(m, "SmoothBump")
      .def(py::init<double, double, double, double, double>(), py::arg("support_lo"),
           py::arg("plateau_lo"), py::arg("plateau_hi"), py::arg("support_hi"),
           py::arg("height") = 1.0)
      .def("__call__", &SmoothBump::operator())
      .def_property_readonly("support_lo", &SmoothBump::support_lo)
      .def_property_readonly("support_hi", &SmoothBump::support_hi)
      .def_property_readonly("plateau_floor", &SmoothBump::plateau_floor);

  py::class_<BumpSet, std::shared_ptr<BumpSet>>(m, "BumpSet")
      .def_static("standard", [] { return std::const_pointer_cast<BumpSet>(BumpSet::standard()); })
      .def("phi", [](const BumpSet& b, double t) { return b.phi(t); })
      .def("chi", [](const BumpSet& b, double t) { return b.chi(t); })
      .def("phi_tilde", [](const BumpSet& b, double t) { return b.phi_tilde(t); })
      .def("phase", [](const BumpSet& b, double theta) { return b.phase(theta); })
      .def("sphere_phase",
           [](const BumpSet&, const std::array<double, 3>& z) {
             return SphericalPhase(3)(z);
           })
      .def("cap", [](const BumpSet& b, const std::array<double, 3>& z) { return b.cap3(z); });

  py::class_<GridField>(m, "GridField")
      .def_property_readonly("dim", [](const GridField& f) { return f.dim; })
      .def_property_readonly("n", [](const GridField& f) { return f.n; })
      .def_property_readonly("half_side", [](const GridField& f) { return f.half_side; })
      .def_property_readonly("side",
                             [](const GridField& f) {
                               return f.side == Side::fourier ? "fourier" : "space";
                             })
      .def_property_readonly("spacing", &GridField::spacing)
      .def("samples", &samples_array)
      .def_static("from_samples", &field_from_array, py::arg("dim"), py::arg("half_side"),
                  py::arg("side"), py::arg("samples"));

  py::class_<SymbolSpec>(m, "SymbolSpec")
      .def(py::init([](int dim, double lambda, std::shared_ptr<BumpSet> bumps) {
             return make_spec(dim, lambda,
                              bumps ? std::shared_ptr<const BumpSet>(bumps)
                                    : BumpSet::standard());
           }),
           py::arg("dim"), py::arg("lambda_"), py::arg("bumps") = nullptr)
      .def_property_readonly("dim", [](const SymbolSpec& s) { return s.dim; })
      .def_property_readonly("lambda_", [](const SymbolSpec& s) { return s.lambda; });

  m.def("required_points", &required_points, py::arg("spec"), py::arg("half_side") = 2.0);
  m.def(
      "sample_symbol",
      [](const SymbolSpec& spec, double half_side, std::int64_t n) {
        if (n == 0) n = required_points(spec, half_side);
        return sample_symbol(spec, half_side, n);
      },
      py::arg("spec"), py::arg("half_side") = 2.0, py::arg("n") = 0);
  m.def(
      "sample_homogeneous_symbol",
      [](const SymbolSpec& spec, double t, double half_side, std::int64_t n) {
        if (n == 0) n = required_points(spec, half_side);
        return sample_homogeneous_symbol(spec, t, spec.bumps->phi, half_side, n);
      },
      py::arg("spec"), py::arg("t"), py::arg("half_side") = 2.0, py::arg("n") = 0);

  m.def(
      "kernel_fft",
      [](const GridField& f, double min_dual_range) {
        return kernel_fft(f, min_dual_range);
      },
      py::arg("field"), py::arg("min_dual_range") = 0.0);

  m.def("kernel_reduction",
        [](const SymbolSpec& spec, double x, double y) {
          const TransformCache cache(spec.bumps);
          return Kernel1dReduction(spec, cache)(x, y);
        },
        "One-off reduced-route kernel value (builds the profile cache each call)");

  py::class_<Kernel1dReduction>(m, "KernelReduction")
      .def(py::init([](const SymbolSpec& spec) {
        static std::map<const BumpSet*, std::shared_ptr<TransformCache>> caches;
        auto& slot = caches[spec.bumps.get()];
        if (!slot) slot = std::make_shared<TransformCache>(spec.bumps);
        return Kernel1dReduction(spec, *slot);
      }))
      .def("__call__",
           [](const Kernel1dReduction& k, double x, double y) { return k(x, y); });

  m.def("stationary_phase_leading", &stationary_phase_leading, py::arg("hessian_det"),
        py::arg("psi0_at_origin"), py::arg("amplitude_at_origin"), py::arg("lambda_"),
        py::arg("n"));

  m.def("ball_indicator_ft", &ball_indicator_ft, py::arg("dim"), py::arg("radius"),
        py::arg("xi_norm"));
  m.def("ball_volume", &ball_volume);
  m.def(
      "ball_convolution",
      [](const GridField& symbol, double radius) { return ball_convolution(symbol, radius); },
      py::arg("symbol"), py::arg("radius") = 0.01);
  m.def("lp_lower_bound_from_convolution", &lp_lower_bound_from_convolution,
        py::arg("convolution"), py::arg("p"), py::arg("dim") = 2, py::arg("radius") = 0.01);
  m.def("kernel_l1_norm", &kernel_l1_norm, py::arg("kernel"), py::arg("min_coverage_radius"));

  m.def("fit_exponent", [](const std::vector<std::pair<double, double>>& ladder) {
    const ScalingReport rep = fit_exponent(ladder);
    return py::make_tuple(rep.slope, rep.intercept, rep.r_squared);
  });

  py::class_<DyadicSpectrum>(m, "DyadicSpectrum")
      .def(py::init([](std::vector<double> a, int dim) {
             DyadicSpectrum s;
             s.a = std::move(a);
             s.dim = dim;
             return s;
           }),
           py::arg("a"), py::arg("dim") = 2)
      .def_property_readonly("a", [](const DyadicSpectrum& s) { return s.a; })
      .def_property_readonly("truncation_tail",
                             [](const DyadicSpectrum& s) { return s.truncation_tail; });

  m.def(
      "dyadic_spectrum",
      [](const GridField& f, double min_coverage) {
        return dyadic_spectrum(f, min_coverage);
      },
      py::arg("field"), py::arg("min_coverage"));
  m.def("norms_from_spectrum", [](const DyadicSpectrum& s) {
    const SpectrumNorms n = norms_from_spectrum(s);
    return py::make_tuple(n.l2, n.sobolev, n.besov);
  });
  m.def("interpolation_check", &interpolation_check);
  m.def("sequence_inequality_check", [](const std::vector<double>& a, double A) {
    const SequenceCheck c = sequence_inequality_check(a, A);
    return py::make_tuple(c.lhs, c.rhs, c.ratio);
  });
  m.def("sequence_inequality_constant", &sequence_inequality_constant);

  m.def(
      "oscillatory_integral_d3",
      [](const SymbolSpec& spec, const std::array<double, 3>& x, int quad_points) {
        const TransformCache cache(spec.bumps);
        return oscillatory_integral_d3(spec, cache, x, quad_points);
      },
      py::arg("spec"), py::arg("x"), py::arg("quad_points") = 64);

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_json,
         const std::string& output_dir) {
        const Config cfg = config_json.empty()
                               ? Config()
                               : Config::from_json(nlohmann::json::parse(config_json));
        const RunResult r = run_command(command, cfg, output_dir);
        return py::make_tuple(r.exit_code, r.summary.dump(), r.artifacts);
      },
      py::arg("command"), py::arg("config_json") = "", py::arg("output_dir") = "out");
}
