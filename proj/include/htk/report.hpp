#pragma once

#include "htk/hilbert.hpp"
#include "htk/problem.hpp"
#include "htk/tilting.hpp"

namespace htk {

struct RunOptions {
    std::string format = "json"; // json | svg | ascii (the last two only for render)
    bool timings = false;        // wall-clock per stage; off by default so reports are reproducible
};

struct RunReport {
    nlohmann::json json;
    std::string text; // svg or ascii payload of `render`
    bool ok = true;
};

const std::vector<std::string> &commands();

/// Dispatches analyze | chambers | quiver | ext | hilbert | koszul-check | tilting | render | oracle.
RunReport run(const std::string &command, const ProblemSpec &spec, const RunOptions &options = {});

nlohmann::json to_json(const HilbertMatrix &m, const std::string &route, const ChamberEnumeration &en);
nlohmann::json to_json(const QuadraticPresentation &pres);

} // namespace htk
