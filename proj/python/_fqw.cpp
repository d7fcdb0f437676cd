#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqw/carlitz.hpp"
#include "fqw/congruence.hpp"
#include "fqw/deriv.hpp"
#include "fqw/errors.hpp"
#include "fqw/factor.hpp"
#include "fqw/irr.hpp"
#include "fqw/survey.hpp"

namespace py = pybind11;
using namespace fqw;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
std::string dump(const nlohmann::json& j) { return j.dump(); }

PrimeContext context(const Poly& prime) { return make_prime_context(prime); }

} // namespace

PYBIND11_MODULE(_fqw, m)
{
    m.doc() = "Finite-field polynomial arithmetic and Fermat/Wilson congruence checks in F_q[t]";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NotMonic>(m, "NotMonic", base.ptr());
    py::register_exception<NotPrime>(m, "NotPrime", base.ptr());
    py::register_exception<Reducible>(m, "Reducible", base.ptr());
    py::register_exception<ZeroC>(m, "ZeroC", base.ptr());
    py::register_exception<BoundExceeded>(m, "BoundExceeded", base.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
    py::register_exception<EquivalenceViolation>(m, "EquivalenceViolation", base.ptr());
    py::register_exception<TheoremViolation>(m, "TheoremViolation", base.ptr());

    py::class_<Field>(m, "Field")
        .def(py::init(&parse_field), py::arg("descriptor"))
        .def_property_readonly("order", &Field::order)
        .def_property_readonly("characteristic", &Field::characteristic)
        .def_property_readonly("descriptor", &Field::descriptor)
        .def(py::self == py::self)
        .def("__repr__", [](const Field& f) { return "Field('" + f.descriptor() + "')"; });

    py::class_<Poly>(m, "Poly")
        .def(py::init([](const Field& f, const std::string& text) { return Poly::parse(f, text); }), py::arg("field"),
             py::arg("text"))
        .def(py::init([](const Field& f, std::vector<Elem> coeffs) { return Poly(f, std::move(coeffs)); }),
             py::arg("field"), py::arg("coeffs"))
        .def_property_readonly("field", &Poly::field)
        .def_property_readonly("degree",
                               [](const Poly& p) -> long long {
                                   return p.is_zero() ? -1 : static_cast<long long>(p.degree().value());
                               })
        .def_property_readonly("coeffs", [](const Poly& p) { return p.coeffs(); })
        .def("derivative", [](const Poly& p, unsigned i) { return derivative(p, i); }, py::arg("i") = 1)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("__mod__", [](const Poly& a, const Poly& b) { return rem(a, b); })
        .def("__pow__", [](const Poly& a, std::uint64_t e) { return pow(a, e); })
        .def("__str__", &Poly::to_string)
        .def("__repr__", [](const Poly& p) { return "Poly('" + p.to_string() + "')"; });

    m.def("gcd", [](const Poly& a, const Poly& b) { return gcd(a, b); });
    m.def("is_irreducible", &is_irreducible);
    m.def("count_irreducibles", py::overload_cast<const Field&, unsigned>(&count_irreducibles));
    m.def("monic_irreducibles", &monic_irreducible_polys, py::arg("field"), py::arg("degree"));
    m.def(
        "factorize_json", [](const Poly& f, std::uint64_t seed) { return dump(to_json(factorize(f, seed))); },
        py::arg("poly"), py::arg("seed") = 0);
    m.def(
        "trial_division_json",
        [](const Poly& f, unsigned max_degree, std::uint64_t seed) {
            return dump(to_json(trial_division(f, max_degree, seed)));
        },
        py::arg("poly"), py::arg("max_degree"), py::arg("seed") = 0);

    m.def(
        "wieferich_suite_json", [](const Poly& prime, const Poly& a) { return dump(to_json(wieferich_suite(context(prime), a))); },
        py::arg("prime"), py::arg("base"));
    m.def(
        "wilson_suite_json",
        [](const Poly& prime) {
            CarlitzCache cache(prime.field());
            return dump(to_json(wilson_suite(context(prime), cache)));
        },
        py::arg("prime"));
    m.def(
        "wilson_multiplicity",
        [](const Poly& prime) {
            CarlitzCache cache(prime.field());
            const auto r = wilson_multiplicity(context(prime), cache);
            return py::make_tuple(r.value, r.at_least);
        },
        py::arg("prime"));
    m.def("classify_base_json", [](const Poly& a) { return dump(to_json(classify_base(a))); }, py::arg("base"));
    m.def("is_special_wilson", py::overload_cast<const Poly&, Elem>(&is_special_wilson), py::arg("prime"), py::arg("c"));
    m.def("coefficient_characterization", &coefficient_characterization, py::arg("prime"));

    m.def(
        "carlitz",
        [](const Field& f, const std::string& which, unsigned n) {
            CarlitzCache cache(f);
            if (which == "bracket")
                return cache.bracket(n);
            if (which == "L")
                return cache.L(n);
            if (which == "D")
                return cache.D(n);
            if (which == "F")
                return cache.F(n);
            if (which == "wilson_sum")
                return cache.wilson_sum_poly(n);
            throw ParseError("unknown quantity '" + which + "'");
        },
        py::arg("field"), py::arg("which"), py::arg("n"));

    m.def(
        "fermat_quotient_mod",
        [](const Poly& a, const Poly& prime, unsigned k) { return fermat_quotient_mod(a, context(prime), k); },
        py::arg("a"), py::arg("prime"), py::arg("k") = 1);
    m.def(
        "deriv_report_json",
        [](const Poly& a, const Poly& prime, unsigned order) { return dump(to_json(deriv_report(a, context(prime), order))); },
        py::arg("a"), py::arg("prime"), py::arg("order") = 2);

    m.def(
        "survey_degree_json",
        [](const Field& f, unsigned d, bool multiplicities) {
            CarlitzCache cache(f);
            SurveyOptions o;
            o.multiplicities = multiplicities;
            return dump(to_json(survey_degree(f, d, cache, o)));
        },
        py::arg("field"), py::arg("degree"), py::arg("multiplicities") = true);
    m.def(
        "theorem7_json",
        [](const Field& f, unsigned d, Elem c, unsigned max_degree, std::uint64_t seed) {
            CarlitzCache cache(f);
            const auto mode = max_degree ? Theorem7Mode::Partial(max_degree) : Theorem7Mode::Full();
            return dump(to_json(theorem7_report(f, d, c, mode, cache, seed)));
        },
        py::arg("field"), py::arg("degree"), py::arg("c"), py::arg("max_degree") = 0, py::arg("seed") = 0);
    m.def(
        "special_wilson_primes", &special_wilson_primes, py::arg("field"), py::arg("degree"), py::arg("c"));

    m.attr("__version__") = kArtifactVersion;
}
