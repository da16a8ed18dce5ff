#pragma once

#include "htk/arrangement.hpp"

#include <json.hpp>

namespace htk {

struct ProblemOptions {
    std::size_t truncation = 4;
    std::uint64_t seed = 0;
    std::int64_t window = 2; // taxicab radius for lift tables
    bool operator==(const ProblemOptions &) const = default;
};

struct ProblemSpec {
    std::vector<IntVec> rho; // n rows of length k
    std::size_t k = 0;       // kept explicitly so k = 0 survives n empty rows
    IntVec lambda;
    std::int64_t p = 2;
    ProblemOptions options;
    bool operator==(const ProblemSpec &) const = default;

    Arrangement arrangement() const; // validates; throws InvalidSpec or module errors
};

nlohmann::json to_json(const ProblemSpec &spec);
ProblemSpec spec_from_json(const nlohmann::json &j); // throws InvalidSpec

struct CorpusBounds {
    std::size_t n_min = 1, n_max = 6;
    std::size_t k_min = 0, k_max = 3;
    std::int64_t p_max = 11;
    std::int64_t entry_max = 3;
    std::size_t budget = 5000; // rejected draws allowed per accepted spec
};

/// Random unimodular embeddings with smooth lambda; throws ExhaustedRejectionBudget.
std::vector<ProblemSpec> corpus_generate(std::uint64_t seed, std::size_t count, const CorpusBounds &bounds = {});

} // namespace htk
