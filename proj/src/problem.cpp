#include "htk/problem.hpp"

namespace htk {

using nlohmann::json;

Arrangement ProblemSpec::arrangement() const {
    if (p < 2)
        throw Error(ErrorKind::InvalidSpec, "p must be at least 2");
    if (lambda.size() != k)
        throw Error(ErrorKind::InvalidSpec, "lambda must have k = " + std::to_string(k) + " entries");
    IntMatrix m;
    try {
        m = make_matrix(rho, k);
    } catch (const Error &e) {
        throw Error(ErrorKind::InvalidSpec, e.what());
    }
    return Arrangement(validate_embedding(std::move(m)), Parameter{lambda, p});
}

json to_json(const ProblemSpec &spec) {
    return json{{"rho", spec.rho},
                {"k", spec.k},
                {"lambda", spec.lambda},
                {"p", spec.p},
                {"options",
                 {{"truncation", spec.options.truncation},
                  {"seed", spec.options.seed},
                  {"window", spec.options.window}}}};
}

namespace {

std::int64_t as_int(const json &v, const std::string &what) {
    if (v.is_number_integer())
        return v.get<std::int64_t>();
    if (v.is_string()) {
        try {
            std::size_t pos = 0;
            const std::string s = v.get<std::string>();
            const long long out = std::stoll(s, &pos);
            if (pos == s.size())
                return out;
        } catch (const std::exception &) {
        }
    }
    throw Error(ErrorKind::InvalidSpec, what + " must be an integer");
}

} // namespace

ProblemSpec spec_from_json(const json &j) {
    if (!j.is_object())
        throw Error(ErrorKind::InvalidSpec, "spec must be a JSON object");
    for (const char *key : {"rho", "lambda", "p"})
        if (!j.contains(key))
            throw Error(ErrorKind::InvalidSpec, std::string("missing field '") + key + "'");
    ProblemSpec spec;
    const json &rho = j.at("rho");
    if (!rho.is_array() || rho.empty())
        throw Error(ErrorKind::InvalidSpec, "rho must be a non-empty array of rows");
    for (const auto &row : rho) {
        if (!row.is_array())
            throw Error(ErrorKind::InvalidSpec, "rho rows must be arrays");
        IntVec r;
        for (const auto &v : row)
            r.push_back(as_int(v, "rho entry"));
        spec.rho.push_back(std::move(r));
    }
    spec.k = j.contains("k") ? static_cast<std::size_t>(as_int(j.at("k"), "k")) : spec.rho.front().size();
    for (const auto &r : spec.rho)
        if (r.size() != spec.k)
            throw Error(ErrorKind::InvalidSpec, "rho rows must all have k entries");
    if (!j.at("lambda").is_array())
        throw Error(ErrorKind::InvalidSpec, "lambda must be an array");
    for (const auto &v : j.at("lambda"))
        spec.lambda.push_back(as_int(v, "lambda entry"));
    spec.p = as_int(j.at("p"), "p");
    if (j.contains("options")) {
        const json &o = j.at("options");
        if (!o.is_object())
            throw Error(ErrorKind::InvalidSpec, "options must be an object");
        if (o.contains("truncation"))
            spec.options.truncation = static_cast<std::size_t>(as_int(o.at("truncation"), "truncation"));
        if (o.contains("seed"))
            spec.options.seed = static_cast<std::uint64_t>(as_int(o.at("seed"), "seed"));
        if (o.contains("window"))
            spec.options.window = as_int(o.at("window"), "window");
    }
    if (spec.lambda.size() != spec.k)
        throw Error(ErrorKind::InvalidSpec, "lambda must have k entries");
    if (spec.p < 2)
        throw Error(ErrorKind::InvalidSpec, "p must be at least 2");
    return spec;
}

namespace {

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = 2; q <= bound; ++q)
        if (Parameter{{}, q}.p_is_prime())
            out.push_back(q);
    return out;
}

} // namespace

std::vector<ProblemSpec> corpus_generate(std::uint64_t seed, std::size_t count, const CorpusBounds &b) {
    if (b.n_min < 1 || b.n_min > b.n_max || b.k_min > b.k_max || b.k_min > b.n_max)
        throw Error(ErrorKind::InvalidInput, "inconsistent corpus bounds");
    const auto primes = primes_up_to(b.p_max);
    if (primes.empty())
        throw Error(ErrorKind::InvalidInput, "no prime below the period bound");
    SeededRng rng(seed);
    std::vector<ProblemSpec> out;
    // The shape is fixed before the entries so that easy shapes (k = 0 is
    // always accepted) do not crowd out the rest. A shape that stays
    // unacceptable for a quarter of the budget is replaced.
    const std::size_t per_shape = std::max<std::size_t>(1, b.budget / 4);
    std::size_t spent = 0;
    while (out.size() < count) {
        if (spent >= b.budget)
            throw Error(ErrorKind::ExhaustedRejectionBudget,
                        "no acceptable spec after " + std::to_string(b.budget) + " draws");
        const auto n = static_cast<std::size_t>(
            rng.uniform(static_cast<std::int64_t>(std::max(b.n_min, b.k_min)), static_cast<std::int64_t>(b.n_max)));
        const auto k = static_cast<std::size_t>(
            rng.uniform(static_cast<std::int64_t>(b.k_min), static_cast<std::int64_t>(std::min(b.k_max, n))));
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < per_shape && spent < b.budget && !accepted; ++attempt, ++spent) {
            ProblemSpec spec;
            spec.k = k;
            spec.p = primes[rng.below(primes.size())];
            spec.rho.assign(n, IntVec(k));
            for (auto &row : spec.rho)
                for (auto &v : row)
                    v = rng.uniform(-b.entry_max, b.entry_max);
            spec.lambda.resize(k);
            for (auto &v : spec.lambda)
                v = rng.uniform(-spec.p, spec.p);
            spec.options.seed = rng.next() >> 16;
            try {
                const Arrangement arr = spec.arrangement();
                if (!is_unimodular(arr.embedding()))
                    continue;
                const auto en = enumerate_classes(arr);
                if (!is_smooth(arr, en, spec.options.seed).smooth)
                    continue;
            } catch (const Error &e) {
                if (e.kind() == ErrorKind::RankDeficient || e.kind() == ErrorKind::NonSaturated)
                    continue;
                throw;
            }
            out.push_back(std::move(spec));
            accepted = true;
        }
        if (accepted)
            spent = 0;
    }
    return out;
}

} // namespace htk
