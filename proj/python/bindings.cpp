// Python bindings. Symbols cross the boundary as text or JSON strings;
// reports come back as JSON strings and are decoded by the package.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncd/cli.hpp"
#include "ncd/equivalence.hpp"
#include "ncd/errors.hpp"
#include "ncd/fock.hpp"
#include "ncd/geometry.hpp"
#include "ncd/matrixlevel.hpp"
#include "ncd/symbol.hpp"

namespace py = pybind11;
using namespace ncd;

namespace {

FreePolynomial sym(const std::string &text, std::optional<int> n = std::nullopt) { return read_symbol(text, n); }

MatrixTuple tuple_of(const std::vector<Eigen::MatrixXcd> &mats) { return MatrixTuple(mats); }

} // namespace

PYBIND11_MODULE(_ncdomain, m)
{
    m.doc() = "Classification of noncommutative domain algebras";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    m.def("parse_symbol", [](const std::string &text, std::optional<int> n) { return to_json(sym(text, n)).dump(); },
          py::arg("text"), py::arg("n") = py::none());
    m.def("to_text", [](const std::string &text) { return to_text(sym(text)); });

    m.def("validate", [](const std::string &text) {
        ValidationReport r = validate_regular_positive(sym(text));
        nlohmann::json issues = nlohmann::json::array();
        for (const auto &i : r.issues) {
            issues.push_back({{"clause", i.clause}, {"detail", i.detail}});
        }
        return nlohmann::json{{"valid", r.ok()}, {"issues", issues}}.dump();
    });

    m.def("normalize", [](const std::string &text) {
        Normalization r = normalize_degree_one(sym(text));
        nlohmann::json lambda = nlohmann::json::array();
        for (const auto &l : r.lambda) {
            lambda.push_back(to_string(l));
        }
        return nlohmann::json{{"symbol", to_json(r.symbol)}, {"lambda", lambda}}.dump();
    });

    m.def("canonical_form", [](const std::string &text) {
        CanonicalForm c = canonical_form(sym(text));
        return nlohmann::json{{"canonical", to_json(c.table)}, {"text", to_text(c.table)}, {"witness", c.witness()}}
            .dump();
    });

    m.def("decide_equivalence", [](const std::string &f, const std::string &g) {
        auto cert = decide_equivalence(sym(f), sym(g));
        if (!cert) {
            return nlohmann::json{{"equivalent", false}}.dump();
        }
        nlohmann::json out = to_json(*cert);
        out["equivalent"] = true;
        return out.dump();
    });

    m.def("decide_spherical", [](const std::string &f, double tol) { return to_json(decide_spherical(sym(f), tol)).dump(); },
          py::arg("symbol"), py::arg("tol") = kDefaultTolerance);

    m.def("weights", [](const std::string &f, int max_len) {
        FreePolynomial p = sym(f);
        require_regular_positive(p);
        return to_json(compute_weights(p, max_len)).dump();
    }, py::arg("symbol"), py::arg("max_len") = kDefaultMaxLength);

    m.def("shift_membership", [](const std::string &f, int max_len, double tol) {
        ShiftMembershipReport r = verify_shift_membership(sym(f), max_len, tol);
        return py::make_tuple(r.max_eigenvalue, r.pass);
    }, py::arg("symbol"), py::arg("max_len") = kDefaultMaxLength, py::arg("tol") = kDefaultTolerance);

    m.def("shift_norm", [](const std::string &f, const std::vector<int> &word, int max_len) {
        return shift_norm(sym(f), Word(word), max_len);
    }, py::arg("symbol"), py::arg("word"), py::arg("max_len") = kDefaultMaxLength);

    m.def("support_partition", [](const Eigen::MatrixXcd &u, double eps) {
        SupportPartition p = support_partition(u, eps);
        return py::make_tuple(p.sigma_blocks, p.psi_blocks);
    }, py::arg("u"), py::arg("eps") = kSupportEps);

    m.def("refute_product", [](const std::string &f, const std::vector<int> &block) {
        FreePolynomial p = sym(f);
        require_regular_positive(p);
        return to_json(refute_product(p, block)).dump();
    });

    m.def("refute_thullen", [](const std::string &f, double tol) { return to_json(refute_thullen(sym(f), tol)).dump(); },
          py::arg("symbol"), py::arg("tol") = kDefaultTolerance);

    m.def("matrix_membership", [](const std::string &f, const std::vector<Eigen::MatrixXcd> &t, bool strict) {
        MatrixMembership r = matrix_membership(sym(f), tuple_of(t), strict);
        return py::make_tuple(r.max_eigenvalue, r.member);
    }, py::arg("symbol"), py::arg("tuple"), py::arg("strict") = true);

    m.def("dual_map_apply", [](const Eigen::MatrixXcd &mat, const std::vector<Eigen::MatrixXcd> &t) {
        return dual_map_apply(mat, tuple_of(t)).matrices();
    });

    m.def("cartan_forced_zeros", [](const std::string &map_json, int levels, std::uint64_t seed) {
        return to_json(cartan_forced_zeros(free_map_from_json(nlohmann::json::parse(map_json)), levels, seed)).dump();
    }, py::arg("free_map"), py::arg("levels"), py::arg("seed") = 0);

    m.def("run_cli", [](const std::vector<std::string> &args) {
        cli::CommandResult r = cli::run(args);
        return py::make_tuple(r.exit_code, r.text.empty() ? r.payload.dump() : r.text);
    });
}
