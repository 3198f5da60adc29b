#include "specvar/asymptotics.hpp"
#include "specvar/cli.hpp"
#include "specvar/errors.hpp"
#include "specvar/fejer_variance.hpp"
#include "specvar/gallery.hpp"
#include "specvar/measure_json.hpp"
#include "specvar/simulate.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace specvar;

PYBIND11_MODULE(_specvar, m) {
    m.doc() = "Spectral-measure variance toolkit";

    auto base = py::register_exception<Error>(m, "SpecvarError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", base.ptr());
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<SpectralMeasure>(m, "SpectralMeasure")
        .def_static("from_json", &measure_from_string, py::arg("text"))
        .def("to_json", &measure_to_string)
        .def_property_readonly("atom_at_zero", &SpectralMeasure::atom_at_zero)
        .def_property_readonly("total_mass", &SpectralMeasure::total_mass)
        .def_property_readonly("name", [](const SpectralMeasure& s) { return s.info().name; })
        .def_property_readonly("atoms", [](const SpectralMeasure& s) {
            std::vector<std::pair<double, double>> out;
            for (const auto& a : s.atoms()) out.emplace_back(a.location, a.mass);
            return out;
        })
        .def("__repr__", [](const SpectralMeasure& s) {
            std::ostringstream os;
            os << "<SpectralMeasure '" << s.info().name << "' mass=" << s.total_mass() << '>';
            return os.str();
        });

    auto g = m.def_submodule("gallery", "named measures");
    g.def("counterexample", &gallery::counterexample, py::arg("k_max") = 60);
    g.def("power_law", &gallery::power_law, py::arg("gamma"), py::arg("scale") = 1.0);
    g.def("quadratic", &gallery::quadratic);
    g.def("nonergodic", &gallery::nonergodic, py::arg("k_max") = 40);
    g.def("whitenoise", &gallery::whitenoise);
    g.def("with_origin_atom", &gallery::with_origin_atom, py::arg("base"), py::arg("a"));
    g.def("make", &gallery::make, py::arg("name"), py::arg("params") = std::map<std::string, double>{});

    m.def("g_eval", &g_eval, py::arg("m"), py::arg("x"));
    m.def("autocovariances", &autocovariances, py::arg("m"), py::arg("count"));
    m.def("robinson_integral", &robinson_integral, py::arg("m"));
    m.def("fejer_kernel", &fejer_kernel, py::arg("n"), py::arg("y"));
    m.def("variance_spectral", &variance_spectral, py::arg("m"), py::arg("n"),
          py::call_guard<py::gil_scoped_release>());
    m.def("variance_covariance", &variance_covariance, py::arg("m"), py::arg("n"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "variance_many",
        [](const SpectralMeasure& s, const std::vector<std::int64_t>& ns) {
            py::gil_scoped_release release;
            return variance_many(s, ns);
        },
        py::arg("m"), py::arg("ns"));
    m.def(
        "sandwich",
        [](const SpectralMeasure& s, std::int64_t n, double A) {
            const auto r = sandwich(s, n, A);
            return py::dict(py::arg("n") = r.n, py::arg("A") = r.A, py::arg("lower") = r.lower,
                            py::arg("variance") = r.variance, py::arg("upper") = r.upper);
        },
        py::arg("m"), py::arg("n"), py::arg("A") = 1.0);
    m.def("c_gamma", &c_gamma, py::arg("gamma"));
    m.def("d_gamma", &d_gamma, py::arg("gamma"));

    m.def(
        "simulate",
        [](const SpectralMeasure& s, std::size_t N, std::size_t P, std::uint64_t seed) {
            PathBatch batch;
            {
                py::gil_scoped_release release;
                batch = simulate(s, N, P, seed);
            }
            py::array_t<double> arr({batch.paths, batch.length});
            std::copy(batch.values.begin(), batch.values.end(), arr.mutable_data());
            return py::make_tuple(arr, to_string(batch.method));
        },
        py::arg("m"), py::arg("N"), py::arg("paths"), py::arg("seed"),
        "Returns (paths x N array, method name).");
    m.def(
        "empirical_variance",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> paths, std::size_t n) {
            if (paths.ndim() != 2) throw DomainError("paths must be a 2-d array");
            PathBatch batch;
            batch.paths = static_cast<std::size_t>(paths.shape(0));
            batch.length = static_cast<std::size_t>(paths.shape(1));
            batch.values.assign(paths.data(), paths.data() + paths.size());
            const auto e = empirical_variance(batch, n);
            return py::make_tuple(e.estimate, e.standard_error);
        },
        py::arg("paths"), py::arg("n"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
