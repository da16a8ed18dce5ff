#include "htk/hilbert.hpp"
#include "htk/render.hpp"
#include "htk/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using nlohmann::json;

namespace {

// Specs cross the boundary as JSON text; the Python side does json.dumps/loads.
htk::ProblemSpec parse_spec(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw htk::Error(htk::ErrorKind::InvalidSpec, std::string("malformed JSON: ") + e.what());
    }
    return htk::spec_from_json(j);
}

using Table = std::vector<std::vector<std::vector<std::int64_t>>>;

struct Loaded {
    htk::Arrangement arr;
    htk::ChamberEnumeration en;
};

Loaded load(const std::string &spec) {
    auto arr = parse_spec(spec).arrangement();
    auto en = htk::enumerate_classes(arr);
    return {std::move(arr), std::move(en)};
}

} // namespace

PYBIND11_MODULE(_htk, m) {
    m.doc() = "Chamber combinatorics and graded dimension tables for periodic hyperplane arrangements";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::exception<htk::Error>(m, "HtkError", PyExc_ValueError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const htk::Error &e) {
            const py::object &type = error_type.get_stored();
            py::object exc = type(e.what());
            exc.attr("kind") = htk::to_string(e.kind());
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    m.def("commands", &htk::commands);

    m.def(
        "run",
        [](const std::string &command, const std::string &spec, const std::string &format, bool timings) {
            const auto rep = htk::run(command, parse_spec(spec), {format, timings});
            return py::make_tuple(rep.json.dump(), rep.text, rep.ok);
        },
        py::arg("command"), py::arg("spec"), py::arg("format") = "json", py::arg("timings") = false,
        "Run one command; returns (report JSON text, svg/ascii text, ok).");

    m.def(
        "corpus",
        [](std::uint64_t seed, std::size_t count, std::size_t n_min, std::size_t n_max, std::size_t k_min,
           std::size_t k_max, std::int64_t p_max, std::int64_t entry_max) {
            htk::CorpusBounds b;
            b.n_min = n_min;
            b.n_max = n_max;
            b.k_min = k_min;
            b.k_max = k_max;
            b.p_max = p_max;
            b.entry_max = entry_max;
            json out = json::array();
            for (const auto &s : htk::corpus_generate(seed, count, b))
                out.push_back(htk::to_json(s));
            return out.dump();
        },
        py::arg("seed"), py::arg("count"), py::arg("n_min") = 1, py::arg("n_max") = 6, py::arg("k_min") = 0,
        py::arg("k_max") = 3, py::arg("p_max") = 11, py::arg("entry_max") = 3);

    m.def("chamber_classes", [](const std::string &spec) {
        const auto l = load(spec);
        std::vector<htk::Chamber> keys;
        for (const auto &c : l.en.classes())
            keys.push_back(c.key);
        return keys;
    });

    m.def("adjacency", [](const std::string &spec) {
        const auto l = load(spec);
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, int>> out;
        for (const auto &e : l.en.edges())
            out.emplace_back(e.from, e.to, e.coordinate, e.sign);
        return out;
    });

    m.def("is_smooth", [](const std::string &spec) {
        const auto s = parse_spec(spec);
        const auto arr = s.arrangement();
        return htk::is_smooth(arr, htk::enumerate_classes(arr), s.options.seed).smooth;
    });

    m.def("bases_count", [](const std::string &spec) {
        return htk::bases(parse_spec(spec).arrangement().embedding()).size();
    });

    m.def("hom_dims", [](const std::string &spec, std::size_t truncation) -> Table {
        const auto l = load(spec);
        return htk::hom_dims_H(l.arr, l.en, truncation).entries;
    });

    m.def("ext_dims", [](const std::string &spec, std::size_t truncation) -> Table {
        const auto l = load(spec);
        return htk::ext_dims_from_toric(l.arr, l.en, truncation).entries;
    });

    m.def(
        "oracle_dims",
        [](const std::string &spec, bool dual, std::size_t truncation) -> Table {
            const auto l = load(spec);
            const auto pres = dual ? htk::build_H_dual(l.arr, l.en) : htk::build_H(l.arr, l.en);
            return htk::truncated_dims_oracle(l.arr, l.en, pres, truncation).entries;
        },
        py::arg("spec"), py::arg("dual"), py::arg("truncation"));

    m.def("h_vector", [](const std::string &spec, const htk::Chamber &x, std::optional<htk::Chamber> y) {
        const auto s = parse_spec(spec);
        const auto arr = s.arrangement();
        htk::SeededRng rng(s.options.seed);
        return htk::h_vector(htk::vertices_and_edges(htk::polytope(arr, x, y)), rng);
    }, py::arg("spec"), py::arg("x"), py::arg("y") = std::nullopt);
}
