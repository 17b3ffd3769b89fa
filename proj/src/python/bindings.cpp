#include "rgk/errors.hpp"
#include "rgk/invariants.hpp"
#include "rgk/report.hpp"
#include "rgk/theory.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rgk;

namespace {

// Python ints of any size cross the boundary as decimal strings.
py::int_ to_py(const BigInt& v) {
    PyObject* obj = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

py::list to_py(const std::vector<BigInt>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

IntMatrix matrix_from(const std::vector<std::vector<py::int_>>& rows) {
    if (rows.empty()) throw InvalidInput("matrix must have at least one row");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw InvalidInput("matrix rows must have equal length");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = BigInt(py::str(rows[i][j]).cast<std::string>());
    }
    return m;
}

AdjacencyMatrix adjacency_from(const std::vector<std::vector<std::uint32_t>>& rows) {
    return AdjacencyMatrix::from_rows(rows);
}

FinAbGroup group_from(const std::vector<py::int_>& factors) {
    std::vector<BigInt> d;
    for (const auto& f : factors) d.push_back(BigInt(py::str(f).cast<std::string>()));
    return from_diagonal(d);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "K-theory of random graph C*-algebras";
    m.attr("__version__") = kToolVersion;

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<Unsupported>(m, "Unsupported", PyExc_ValueError);

    m.def("snf_diagonal", [](const std::vector<std::vector<py::int_>>& rows) { return to_py(snf(matrix_from(rows), false).d); },
          py::arg("matrix"));
    m.def("det", [](const std::vector<std::vector<py::int_>>& rows) { return to_py(det_signed(matrix_from(rows))); },
          py::arg("matrix"));
    m.def(
        "cokernel",
        [](const std::vector<std::vector<py::int_>>& rows) {
            auto g = cokernel(matrix_from(rows));
            return py::make_tuple(to_py(g.invariant_factors()), g.free_rank());
        },
        py::arg("matrix"), "(invariant factors, free rank) of Z^n / M Z^n");

    m.def(
        "inspect_json", [](const std::vector<std::vector<std::uint32_t>>& adjacency) {
            return invariant_to_json(compute_invariant(adjacency_from(adjacency))).dump();
        },
        py::arg("adjacency"));
    m.def(
        "inspect_text", [](const std::vector<std::vector<std::uint32_t>>& adjacency) {
            return invariant_text(compute_invariant(adjacency_from(adjacency)));
        },
        py::arg("adjacency"));

    m.def("aut_order", [](const std::vector<py::int_>& f) { return to_py(aut_order(group_from(f))); }, py::arg("factors"));
    m.def(
        "same_orbit",
        [](const std::vector<py::int_>& f, const std::vector<py::int_>& x, const std::vector<py::int_>& y) {
            auto conv = [](const std::vector<py::int_>& c) {
                GroupElement e;
                for (const auto& v : c) e.coords.push_back(BigInt(py::str(v).cast<std::string>()));
                return e;
            };
            return same_orbit(group_from(f), conv(x), conv(y));
        },
        py::arg("factors"), py::arg("x"), py::arg("y"));

    m.def(
        "theory_constants",
        []() {
            py::dict out;
            for (const auto& [name, v] : theory_constants()) out[py::str(name)] = py::make_tuple(v.value, to_string(v.status));
            for (const auto& [name, v] : conjecture_constants()) out[py::str(name)] = py::make_tuple(v.value, to_string(v.status));
            return out;
        },
        "name -> (value, status)");
    m.def("gamma_r", [](std::uint32_t r) { return gamma_r(r); }, py::arg("r"));
    m.def("pi_pr", [](std::uint64_t p, std::uint32_t r) { return pi_pr(p, r); }, py::arg("p"), py::arg("r"));
    m.def(
        "p_sylow_symmetric", [](const std::vector<py::int_>& f, const std::vector<std::uint64_t>& primes) {
            return p_sylow_symmetric(group_from(f), primes);
        },
        py::arg("factors"), py::arg("primes"));
    m.def(
        "p_sylow_iid", [](const std::vector<py::int_>& f, const std::vector<std::uint64_t>& primes) {
            return p_sylow_iid(group_from(f), primes);
        },
        py::arg("factors"), py::arg("primes"));

    m.def(
        "simulate_json",
        [](const std::string& config_json) {
            auto config = config_from_json(Json::parse(config_json));
            config.validate();
            RunResult result;
            {
                py::gil_scoped_release release;
                result = run(config);
            }
            return make_summary(config, result).dump();
        },
        py::arg("config_json"), "Run a simulation from a config object as written in a manifest; returns summary JSON");
}
