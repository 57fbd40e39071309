#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dii/exactnum.hpp"
#include "dii/forms1.hpp"
#include "dii/lift.hpp"
#include "dii/msym.hpp"
#include "dii/qforms.hpp"
#include "dii/siegel.hpp"

namespace py = pybind11;
using namespace dii;

namespace {

// Rationals cross the boundary as "num/den" strings; NFElem as a list of them.
std::string rat(const exactnum::Rational& x) { return exactnum::to_string(x); }

std::vector<std::string> elem(const exactnum::NFElem& x) {
    std::vector<std::string> out;
    for (auto& c : x.coords()) out.push_back(rat(c));
    return out;
}

qforms::HalfIntegralMatrix matrix(const std::vector<std::vector<long>>& twice) {
    int n = static_cast<int>(twice.size());
    std::vector<long> flat;
    for (auto& row : twice) {
        if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::precondition, "matrix must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return qforms::HalfIntegralMatrix(n, flat);
}

std::vector<std::string> minpoly(const exactnum::FieldPtr& K) {
    std::vector<std::string> out;
    for (auto& c : K->minpoly().coeffs()) out.push_back(rat(c));
    return out;
}

class PyLift {
public:
    PyLift(int n, int k, size_t which) : spec_(lift::make_lift(n, k, which)) {}

    std::vector<std::string> coefficient(const std::vector<std::vector<long>>& twice) const {
        return elem(lift::lift_coefficient(*spec_, matrix(twice)));
    }
    std::vector<std::string> maass(const std::vector<std::vector<long>>& twice) const {
        auto T = matrix(twice);
        spec_->g_coeff(T.det2().get_si());
        auto g = halfint::extend(spec_->g(), spec_->lambda(), static_cast<size_t>(T.det2().get_si()) + 1);
        return elem(lift::maass_coefficient(g, spec_->k(), T));
    }
    std::vector<std::string> f_coeff(long p) const { return elem(spec_->f_coeff(p)); }
    std::vector<std::string> g_coeff(long e) const { return elem(spec_->g_coeff(e)); }
    std::vector<std::string> spinor_eigenvalue(long p) const { return elem(lift::spinor_eigenvalue(*spec_, p)); }
    std::vector<std::string> satake_trace_scaled(long p) const { return elem(lift::satake_trace_scaled(*spec_, p)); }
    std::vector<std::string> field() const { return minpoly(spec_->field()); }
    int n() const { return spec_->n(); }
    int k() const { return spec_->k(); }

private:
    std::shared_ptr<lift::LiftSpec> spec_;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ikeda lifts, Siegel series and critical L-values";

    // the message starts with the failure kind, e.g. "precondition: ..."
    py::register_exception<Error>(m, "DiiError");

    m.def("xi_tilde", [](int mm) { return rat(exactnum::xi_tilde(mm)); });
    m.def("bernoulli", [](int mm) { return rat(exactnum::bernoulli(mm)); });
    m.def("h_poly", [](int n, long p) {
        std::vector<std::string> out;
        for (auto& c : lift::h_poly(n, p)) out.push_back(rat(c));
        return out;
    });

    m.def("eigenforms", [](int w, size_t prec) {
        py::list out;
        for (auto& f : forms1::eigenforms(w, prec)) {
            py::dict d;
            d["weight"] = f.weight;
            d["minpoly"] = minpoly(f.hecke_field);
            std::vector<std::vector<std::string>> cs;
            for (size_t i = 0; i < f.precision(); ++i) cs.push_back(elem(f.coeff(i)));
            d["coefficients"] = cs;
            out.append(d);
        }
        return out;
    }, py::arg("weight"), py::arg("prec") = 0);

    m.def("siegel_series", [](const std::vector<std::vector<long>>& twice, long p) {
        auto F = siegel::siegel_series(matrix(twice), p);
        py::dict d;
        std::vector<std::string> cs;
        for (auto& c : F.coeffs) cs.push_back(exactnum::to_string(c));
        d["coeffs"] = cs;
        d["family"] = F.family;
        d["nu"] = F.nu;
        d["serialized"] = F.serialize();
        d["functional_equation"] = F.n % 2 == 0 ? py::cast(siegel::check_functional_equation(F)) : py::none();
        return d;
    }, py::arg("twice"), py::arg("p"));

    m.def("critical_value_norms", [](int w, int l, long D) {
        auto S = msym::build_space(w);
        std::vector<std::string> out;
        for (auto& f : forms1::eigenforms(w)) {
            auto cv = msym::critical_Lvalue(S, msym::periods(S, f), l, D);
            out.push_back(cv.is_zero() ? "0" : rat(cv.norm()));
        }
        return out;
    }, py::arg("weight"), py::arg("l"), py::arg("D") = 1);

    py::class_<PyLift>(m, "Lift")
        .def(py::init<int, int, size_t>(), py::arg("n"), py::arg("k"), py::arg("which") = 0)
        .def_property_readonly("n", &PyLift::n)
        .def_property_readonly("k", &PyLift::k)
        .def_property_readonly("field", &PyLift::field)
        .def("coefficient", &PyLift::coefficient, py::arg("twice"))
        .def("maass", &PyLift::maass, py::arg("twice"))
        .def("f_coeff", &PyLift::f_coeff)
        .def("g_coeff", &PyLift::g_coeff)
        .def("spinor_eigenvalue", &PyLift::spinor_eigenvalue)
        .def("satake_trace_scaled", &PyLift::satake_trace_scaled);
}
