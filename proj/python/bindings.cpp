#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlc/mlc.hpp"

namespace py = pybind11;
using namespace mlc;

namespace {

std::string strip_newline(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multiplicative linear logic: calculi, cut elimination, links and term equality";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<TypeError>(m, "TermTypeError", PyExc_TypeError);
    py::register_exception<DerivationError>(m, "DerivationError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def("normalize", [](const std::string& s) { return to_string(parse_alpha(s)); },
          "Normalized alpha-form of a formula");
    m.def("normalize_sequent", [](const std::string& s) { return to_string(parse_sequent_il(s)); });
    m.def("is_proper", [](const std::string& s) { return is_proper(parse_sequent_il(s)); });
    m.def("is_balanced", [](const std::string& s) { return is_balanced(parse_sequent_il(s)); });

    m.def("term_type", [](const std::string& t) { return to_string(parse_term(t).type()); });
    m.def("is_central", [](const std::string& t) { return is_central(parse_term(t)); });
    m.def("links_json", [](const std::string& t) { return to_json(links_of(parse_term(t))); });
    m.def("render", [](const std::string& t, const std::string& fmt) {
        return render(links_of(parse_term(t)), parse_render_format(fmt));
    }, py::arg("term"), py::arg("format") = "dot");
    m.def("eq_terms", [](const std::string& a, const std::string& b) {
        return std::string(verdict_name(eq_terms(parse_term(a), parse_term(b))));
    });
    m.def("oracle_equal", [](const std::string& a, const std::string& b, std::size_t budget) {
        py::gil_scoped_release release;
        return oracle_equal(parse_term(a), parse_term(b), budget).verdict == OracleVerdict::Equal;
    }, py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultOracleBudget);
    m.def("generalize", [](const std::string& t) {
        Generalized g = generalize(parse_term(t));
        return py::make_tuple(to_string(g.term), g.subst);
    });

    m.def("derive", [](const std::string& seq, const std::string& system) -> std::optional<std::string> {
        if (system == "il") {
            if (auto d = derivable_il(parse_sequent_il(seq))) return strip_newline(to_string(**d));
            return std::nullopt;
        }
        if (system != "s") throw py::value_error("system must be 's' or 'il'");
        if (auto d = derivable_s(parse_sequent_s(seq))) return strip_newline(to_string(**d));
        return std::nullopt;
    }, py::arg("sequent"), py::arg("system") = "s");
    m.def("check_il", [](const std::string& d) { return to_string(check_derivation_il(*parse_derivation_il(d))); });
    m.def("check_s", [](const std::string& d) { return to_string(check_derivation_s(*parse_derivation_s(d))); });
    m.def("eliminate_cuts", [](const std::string& d) {
        return strip_newline(to_string(*eliminate_cuts(parse_derivation_il(d))));
    });
    m.def("is_cut_free", [](const std::string& d) { return is_cut_free(*parse_derivation_il(d)); });
    m.def("clean", [](const std::string& d) { return strip_newline(to_string(*clean(parse_derivation_il(d)))); });
    m.def("code", [](const std::string& d) { return to_string(code(*parse_derivation_il(d))); });
    m.def("decode", [](const std::string& t) { return strip_newline(to_string(*decode(parse_term(t)))); });

    m.def("perm_normal_form", [](const std::vector<int>& images) {
        std::vector<std::pair<int, int>> out;
        for (const auto& b : perm_normal_form(Perm{images}).blocks) out.emplace_back(b.i, b.j);
        return out;
    });
    m.def("perm_of", [](const std::string& t) { return perm_of(parse_term(t)).images; });
    m.def("central_equal", [](const std::string& a, const std::string& b) {
        return central_equal(parse_term(a), parse_term(b));
    });
}
