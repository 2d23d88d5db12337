#include "aaatrig/baselines.hpp"
#include "aaatrig/calculus.hpp"
#include "aaatrig/error.hpp"
#include "aaatrig/io.hpp"
#include "aaatrig/lightning.hpp"
#include "aaatrig/polezero.hpp"
#include "aaatrig/solver.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace aaatrig;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

std::vector<cplx> to_vec(const carray& a)
{
    if (a.ndim() != 1) throw InputError("expected a one-dimensional array");
    return std::vector<cplx>(a.data(), a.data() + a.size());
}

carray to_array(const std::vector<cplx>& v)
{
    return carray(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict report_dict(const PoleZeroReport& r)
{
    py::dict d;
    d["poles"] = to_array(r.poles);
    d["zeros"] = to_array(r.zeros);
    d["residues"] = to_array(r.residues);
    d["pf_constant"] = r.pf_constant;
    d["clustered"] = r.clustered;
    d["rejected"] = r.rejected;
    return d;
}

} // namespace

PYBIND11_MODULE(_aaatrig, m)
{
    m.doc() = "Trigonometric rational approximation of periodic functions";

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            py::set_error(input_error, e.what());
        } catch (const NumericalError& e) {
            py::set_error(numerical_error, e.what());
        }
    });

    py::enum_<Parity>(m, "Parity").value("odd", Parity::odd).value("even", Parity::even);

    py::class_<TrigModel>(m, "TrigModel")
        .def_property_readonly("parity", [](const TrigModel& t) { return t.parity; })
        .def_property_readonly("support", [](const TrigModel& t) { return to_array(t.support); })
        .def_property_readonly("fvals", [](const TrigModel& t) { return to_array(t.fvals); })
        .def_property_readonly("weights", [](const TrigModel& t) { return to_array(t.weights); })
        .def_readonly("err_history", &TrigModel::err_history)
        .def_readonly("scale", &TrigModel::scale)
        .def_readonly("converged", &TrigModel::converged)
        .def_property_readonly("order", &TrigModel::order)
        .def("__call__",
             [](const TrigModel& t, const carray& z) { return to_array(evaluate_batch(t, to_vec(z))); })
        .def("__repr__", [](const TrigModel& t) {
            return "<TrigModel " + std::string(to_string(t.parity)) + " m=" + std::to_string(t.order()) + ">";
        });

    m.def("make_model",
          [](const std::string& parity, const carray& z, const carray& f, const carray& w) {
              return TrigModel::make(parse_parity(parity), to_vec(z), to_vec(f), to_vec(w));
          },
          py::arg("parity"), py::arg("support"), py::arg("fvals"), py::arg("weights"));

    m.def("fit",
          [](const carray& z, const carray& f, const std::string& parity, double tol, std::size_t max_order,
             bool cleanup, std::optional<std::pair<cplx, cplx>> finf) {
              FitConfig c;
              c.parity = parse_parity(parity);
              c.rel_tol = tol;
              c.max_order = max_order;
              c.cleanup = cleanup;
              if (finf) c.far_field_constraint = FarField{finf->first, finf->second};
              return fit(SampleSet::make(to_vec(z), to_vec(f)), c);
          },
          py::arg("points"), py::arg("values"), py::arg("parity") = "odd", py::arg("tol") = 1e-13,
          py::arg("max_order") = 100, py::arg("cleanup") = true, py::arg("far_field") = py::none());

    m.def("far_field", [](const TrigModel& t) {
        const FarField ff = far_field(t);
        return std::make_pair(ff.plus, ff.minus);
    });
    m.def("poles_and_zeros", [](const TrigModel& t) { return report_dict(poles_and_zeros(t)); });
    m.def("diff_matrix", [](const TrigModel& t, int p) { return MatrixXc(diff_matrix(t, p).entries); },
          py::arg("model"), py::arg("order") = 1);
    m.def("derivative",
          [](const TrigModel& t, const carray& z, int p) {
              std::vector<cplx> out;
              for (cplx x : to_vec(z)) out.push_back(derivative_at(t, x, p));
              return to_array(out);
          },
          py::arg("model"), py::arg("points"), py::arg("order") = 1);

    m.def("aaa_errors",
          [](const carray& z, const carray& f, double tol, std::size_t max_order) {
              FitConfig c;
              c.rel_tol = tol;
              c.max_order = max_order;
              c.cleanup = false;
              return aaa_fit(SampleSet::make(to_vec(z), to_vec(f)), c).err_history;
          },
          py::arg("points"), py::arg("values"), py::arg("tol") = 1e-13, py::arg("max_order") = 100);

    m.def("fft_eval",
          [](const carray& f, std::size_t order, const std::vector<double>& x) {
              const std::vector<cplx> v = to_vec(f);
              std::vector<cplx> z;
              for (std::size_t k = 0; k < v.size(); ++k) z.push_back(two_pi * static_cast<double>(k) / v.size());
              const FourierInterpolant fi = fft_interpolant(SampleSet::make(z, v), order);
              std::vector<cplx> out;
              for (double t : x) out.push_back(evaluate(fi, t));
              return to_array(out);
          },
          py::arg("values"), py::arg("order"), py::arg("x"));

    m.def("to_json", [](const TrigModel& t, double period) { return write_model(ModelFile{t, period, std::nullopt}); },
          py::arg("model"), py::arg("period") = two_pi);
    m.def("from_json", [](const std::string& s) { return read_model(s).model; });

    m.def("lightning_demo", []() {
        const DemoResult r = run_demo(DemoConfig{});
        py::dict d;
        d["poles"] = r.lightning.pole_count();
        d["boundary_residual"] = r.lightning.boundary_residual;
        d["compressed"] = r.compressed;
        d["compressed_poles"] = to_array(r.compressed_poles);
        d["interior_error"] = r.interior_error;
        py::list tapers;
        for (const TaperFit& t : r.tapers) tapers.append(py::make_tuple(t.corner, t.sigma, t.r_squared));
        d["tapers"] = tapers;
        return d;
    });
}
