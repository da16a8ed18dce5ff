#include "htk/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw std::runtime_error("cannot write " + out);
    f << text;
}

htk::ProblemSpec load_spec(const std::string &path) {
    std::ifstream f(path);
    if (!f)
        throw htk::Error(htk::ErrorKind::InvalidSpec, "cannot read " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception &e) {
        throw htk::Error(htk::ErrorKind::InvalidSpec, std::string("malformed JSON: ") + e.what());
    }
    return htk::spec_from_json(j);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Chamber combinatorics, quiver algebras and tilting checks for toroidal hyperplane arrangements"};
    app.require_subcommand(1);

    std::string spec_path, out, format = "json";
    std::optional<std::size_t> truncation;
    std::optional<std::uint64_t> seed;
    bool timings = false;

    for (const auto &name : htk::commands()) {
        auto *sub = app.add_subcommand(name, "run " + name + " on a problem spec");
        sub->add_option("--spec", spec_path, "problem spec (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--truncation", truncation, "highest degree Q of graded tables");
        sub->add_option("--seed", seed, "seed for every pseudo-random choice");
        sub->add_option("--out", out, "write the report here instead of stdout");
        sub->add_option("--format", format, "json, or svg/ascii for render")
            ->check(CLI::IsMember({"json", "svg", "ascii"}));
        sub->add_flag("--timings", timings, "include per-stage wall-clock times (breaks byte-identity)");
    }

    std::uint64_t corpus_seed = 0;
    std::size_t count = 1;
    htk::CorpusBounds bounds;
    auto *corpus = app.add_subcommand("corpus", "generate random smooth unimodular specs");
    corpus->add_option("--seed", corpus_seed, "generator seed");
    corpus->add_option("--count", count, "number of specs");
    corpus->add_option("--n-min", bounds.n_min);
    corpus->add_option("--n-max", bounds.n_max)->check(CLI::Range(1, 6));
    corpus->add_option("--k-min", bounds.k_min);
    corpus->add_option("--k-max", bounds.k_max)->check(CLI::Range(0, 3));
    corpus->add_option("--p-max", bounds.p_max)->check(CLI::Range(2, 11));
    corpus->add_option("--entry-max", bounds.entry_max)->check(CLI::Range(0, 3));
    corpus->add_option("--out", out, "write the corpus here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus->parsed()) {
            nlohmann::json list = nlohmann::json::array();
            for (const auto &s : htk::corpus_generate(corpus_seed, count, bounds))
                list.push_back(htk::to_json(s));
            emit(list.dump(2) + "\n", out);
            return 0;
        }
        const std::string command = app.get_subcommands().front()->get_name();
        htk::ProblemSpec spec = load_spec(spec_path);
        if (truncation)
            spec.options.truncation = *truncation;
        if (seed)
            spec.options.seed = *seed;
        const auto rep = htk::run(command, spec, {format, timings});
        emit(rep.text.empty() ? rep.json.dump(2) + "\n" : rep.text, out);
        if (!rep.ok)
            std::cerr << "htk: at least one check failed\n";
        return rep.ok ? 0 : 1;
    } catch (const htk::Error &e) {
        std::cerr << "htk: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "htk: " << e.what() << '\n';
        return 2;
    }
}
