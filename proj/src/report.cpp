#include "htk/report.hpp"

#include "htk/render.hpp"

#include <chrono>
#include <functional>

namespace htk {

using nlohmann::json;

const std::vector<std::string> &commands() {
    static const std::vector<std::string> all{"analyze", "chambers", "quiver", "ext", "hilbert",
                                              "koszul-check", "tilting", "render", "oracle"};
    return all;
}

json to_json(const HilbertMatrix &m, const std::string &route, const ChamberEnumeration &en) {
    json keys = json::array();
    for (const auto &c : en.classes())
        keys.push_back(c.key);
    return json{{"route", route}, {"truncation", m.truncation}, {"classes", keys}, {"entries", m.entries}};
}

json to_json(const QuadraticPresentation &pres) {
    json arrows = json::array();
    for (std::size_t a = 0; a < pres.arrows.size(); ++a) {
        const Arrow &ar = pres.arrows[a];
        arrows.push_back({{"name", pres.arrow_name(a)},
                          {"source", ar.source},
                          {"target", ar.target},
                          {"coordinate", ar.coordinate},
                          {"sign", ar.sign}});
    }
    const char base = pres.side == Side::H ? 's' : 't';
    json rels = json::array();
    for (const auto &r : pres.relations) {
        json terms = json::array();
        for (const auto &t : r.terms) {
            json term{{"coef", t.coef.get_str()}};
            if (t.base) {
                term["base"] = std::string(1, base) + std::to_string(*t.base + 1);
            } else {
                json path = json::array();
                for (auto a : t.path)
                    path.push_back(pres.arrow_name(a));
                term["path"] = path;
            }
            terms.push_back(term);
        }
        json rel{{"kind", to_string(r.kind)}, {"terms", terms}};
        if (r.source) {
            rel["source"] = *r.source;
            rel["displacement"] = r.displacement;
        }
        rels.push_back(rel);
    }
    return json{{"vertices", pres.vertices}, {"arrows", arrows}, {"relations", rels}, {"smooth", pres.smooth}};
}

namespace {

const char *status(bool ok) { return ok ? "pass" : "fail"; }

// Shared state for one run; every stage is computed on first use.
class Pipeline {
public:
    Pipeline(const ProblemSpec &spec, bool timings)
        : spec_(spec), timings_(timings), arr_(timed("validate", [&] { return spec.arrangement(); })) {}

    const Arrangement &arr() const { return arr_; }
    std::size_t truncation() const { return spec_.options.truncation; }

    const ChamberEnumeration &en() {
        if (!en_)
            en_ = timed("enumerate", [&] { return enumerate_classes(arr_); });
        return *en_;
    }
    const SmoothnessReport &smooth() {
        if (!smooth_)
            smooth_ = timed("smoothness", [&] { return is_smooth(arr_, en(), spec_.options.seed); });
        return *smooth_;
    }
    const QuadraticPresentation &H() {
        if (!h_)
            h_ = timed("build_H", [&] { return build_H(arr_, en(), smooth().smooth); });
        return *h_;
    }
    const QuadraticPresentation &Hdual() {
        if (!hd_)
            hd_ = timed("build_H_dual", [&] { return build_H_dual(arr_, en(), smooth().smooth); });
        return *hd_;
    }

    json chambers(json &checks) {
        const auto &e = en();
        const auto &sm = smooth();
        json classes = json::array();
        for (const auto &c : e.classes())
            classes.push_back({{"key", c.key}, {"representative", c.key}, {"witness", c.witness}});
        json edges = json::array();
        for (const auto &ed : e.edges())
            edges.push_back({{"from", ed.from}, {"to", ed.to}, {"coordinate", ed.coordinate}, {"sign", ed.sign}});
        const std::size_t real = timed("real_classes", [&] { return real_class_count(arr_, spec_.options.seed); });
        // the bound counts one toric vertex per basis, which needs unimodularity
        checks["bases_bound"] = sm.unimodular ? status(real <= sm.bases_count) : "skipped";
        json out{{"classes", classes},
                 {"edges", edges},
                 {"smooth", sm.smooth},
                 {"bases_count", sm.bases_count},
                 {"real_class_count", real},
                 {"smoothness",
                  {{"reason", to_string(sm.reason)},
                   {"class_count", sm.class_count},
                   {"unimodular", sm.unimodular},
                   {"perturbed_counts", sm.perturbed_counts}}},
                 {"p_is_prime", arr_.parameter().p_is_prime()}};
        json sizes = json::object();
        for (std::size_t x = 0; x < e.size(); ++x)
            for (std::size_t i = 0; i < arr_.n(); ++i)
                if (e.alpha(x, i).size() > 1)
                    sizes.push_back({class_letter(x) + "/" + std::to_string(i + 1), e.alpha(x, i).size()});
        if (!sizes.empty())
            out["double_adjacencies"] = sizes;
        return out;
    }

    json quiver(json &checks) {
        json out{{"H", to_json(H())}, {"H_dual", to_json(Hdual())}};
        const auto rep = timed("duality", [&] { return quadratic_duality_check(H(), Hdual()); });
        json pairs = json::array();
        for (const auto &p : rep.pairs)
            pairs.push_back({{"source", p.source},
                             {"target", p.target},
                             {"paths", p.paths},
                             {"dim_R_H", p.dim_h},
                             {"dim_R_H_dual", p.dim_dual},
                             {"orthogonal", p.orthogonal},
                             {"ok", p.ok()}});
        out["duality"] = {{"pairs", pairs}, {"pass", rep.pass()}};
        checks["duality"] = smooth().smooth ? status(rep.pass()) : "skipped";
        return out;
    }

    const HilbertMatrix &closed(std::size_t q) {
        auto &slot = closed_[q];
        if (!slot)
            slot = timed("hom_dims_H", [&] { return hom_dims_H(arr_, en(), q); });
        return *slot;
    }
    const HilbertMatrix &toric(std::size_t q) {
        auto &slot = toric_[q];
        if (!slot)
            slot = timed("ext_dims_from_toric", [&] { return ext_dims_from_toric(arr_, en(), q); });
        return *slot;
    }

    json hilbert(json &checks) {
        const auto &m = closed(truncation());
        bool agree = true;
        json counts = json::array();
        for (std::size_t x = 0; x < en().size(); ++x)
            for (std::size_t y = 0; y < en().size(); ++y)
                if (section_count_dims(arr_, en(), x, y, truncation()) != m.entries[x][y])
                    agree = false;
        checks["section_count"] = status(agree);
        return {{"H", to_json(m, "closed-form", en())}, {"section_count_agrees", agree}};
    }

    json ext(json &checks) {
        json out;
        if (!smooth().smooth) {
            checks["toric_oracle"] = "skipped";
            out["note"] = "parameter is not smooth; Betti numbers of intersections are not claimed";
            return out;
        }
        out["H_dual"] = to_json(toric(truncation()), "toric", en());
        const auto cc = timed("core_complex", [&] { return core_complex(arr_, en()); });
        SeededRng rng(spec_.options.seed ^ 0x5e11);
        bool ok = true;
        json pieces = json::array();
        for (const auto &piece : cc.pieces) {
            const auto graph =
                vertices_and_edges(polytope(arr_, en().classes()[piece.from].key, piece.lift));
            const HVector h = h_vector(graph, rng);
            const HVector sr = sr_dims(graph);
            std::int64_t total = 0;
            for (auto v : h)
                total += v;
            const bool good = graph.simple && h == sr && is_palindromic(h) &&
                              total == static_cast<std::int64_t>(graph.vertices.size());
            ok = ok && good;
            pieces.push_back({{"from", piece.from},
                              {"to", piece.to},
                              {"lift", piece.lift},
                              {"dim", piece.dim},
                              {"vertices", graph.vertices.size()},
                              {"h", h},
                              {"sr", sr}});
        }
        out["intersections"] = pieces;
        out["codim_profile"] = cc.codim_profile;
        out["codim_violations"] = cc.expected_codim_violations;
        checks["toric_oracle"] = status(ok && cc.expected_codim_violations == 0);
        return out;
    }

    json koszul(json &checks) {
        if (!smooth().smooth) {
            checks["reciprocity"] = "skipped";
            return {{"note", "parameter is not smooth"}};
        }
        const auto rep = timed("reciprocity", [&] {
            return koszulity_check(closed(truncation()), toric(truncation()), truncation());
        });
        json fails = json::array();
        for (const auto &f : rep.failures)
            fails.push_back({{"x", f.x}, {"y", f.y}, {"q", f.q}, {"value", f.value}});
        checks["reciprocity"] = status(rep.pass());
        return {{"truncation", truncation()},
                {"routes", {{"H", "closed-form"}, {"H_dual", "toric"}}},
                {"failures", fails},
                {"pass", rep.pass()}};
    }

    json oracle(json &checks) {
        if (!smooth().smooth) {
            checks["oracle_agreement"] = "skipped";
            return {{"note", "parameter is not smooth; the quadratic presentation need not generate"}};
        }
        try {
            const auto oh = timed("oracle_H", [&] { return truncated_dims_oracle(arr_, en(), H(), truncation()); });
            const auto od =
                timed("oracle_H_dual", [&] { return truncated_dims_oracle(arr_, en(), Hdual(), truncation()); });
            const bool agree_h = oh == closed(truncation());
            const bool agree_d = od == toric(truncation());
            checks["oracle_agreement"] = status(agree_h && agree_d);
            return {{"H", {{"oracle", to_json(oh, "oracle", en())}, {"agrees_with_closed_form", agree_h}}},
                    {"H_dual", {{"oracle", to_json(od, "oracle", en())}, {"agrees_with_toric", agree_d}}}};
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::TruncationTooLarge)
                throw;
            checks["oracle_agreement"] = "skipped";
            return {{"note", e.what()}};
        }
    }

    json tilting(json &checks) {
        const auto &sm = smooth();
        const auto summands = tilting_summands(en(), sm.smooth);
        const auto iso = timed("end_iso", [&] { return verify_end_iso(H()); });
        json sections = json::array();
        for (const auto &e : en().edges()) {
            Chamber to = en().classes()[e.from].key;
            to[e.coordinate] += e.sign;
            sections.push_back({{"from", e.from},
                                {"to", e.to},
                                {"monomial", section(en().classes()[e.from].key, to).str()}});
        }
        const auto table = timed("degree_table", [&] { return degree_table(arr_, en(), spec_.options.window); });
        bool degrees_ok = true, reverse_ok = true;
        json rows = json::array();
        for (const auto &r : table) {
            const Chamber &x = en().classes()[r.from].key;
            reverse_ok = reverse_ok && reverse_shadow_holds(x, r.lift);
            degrees_ok = degrees_ok && r.section_degree == r.path_degree;
            rows.push_back({{"from", r.from},
                            {"to", r.to},
                            {"lift", r.lift},
                            {"section_degree", r.section_degree},
                            {"path_degree", r.path_degree}});
        }
        json mism = json::array();
        for (auto r : iso.mismatches)
            mism.push_back(r);
        const bool pass = iso.pass() && reverse_ok && (!sm.smooth || degrees_ok);
        checks["tilting"] = sm.smooth ? status(pass) : "skipped";
        return {{"summands", summands.labels},
                {"generator", summands.generator},
                {"sections", sections},
                {"verification",
                 {{"relations_checked", iso.checked},
                  {"base_relations_skipped", iso.skipped},
                  {"mismatches", mism},
                  {"reverse_shadow", reverse_ok},
                  {"degrees_match", degrees_ok},
                  {"pass", pass}}},
                {"degree_table", rows}};
    }

    json render(const std::string &format, std::string &text) {
        if (format == "svg") {
            text = render_svg(arr_, en());
            return {{"format", "svg"}};
        }
        if (format == "ascii") {
            text = render_ascii(arr_, en());
            return {{"format", "ascii"}};
        }
        const Plot plot = plot_layout(arr_, en());
        json lines = json::array();
        for (const auto &l : plot.lines)
            lines.push_back({{"coordinate", l.coordinate}, {"level", rational_str(l.level)}});
        return {{"format", "json"},
                {"axes", plot.axes},
                {"lines", lines},
                {"svg", render_svg(arr_, en())}};
    }

    json timing_json() const { return stage_ms_; }

private:
    template <class F>
    auto timed(const char *stage, F &&f) -> decltype(f()) {
        if (!timings_)
            return f();
        const auto t0 = std::chrono::steady_clock::now();
        auto out = f();
        const auto t1 = std::chrono::steady_clock::now();
        stage_ms_[stage] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return out;
    }

    const ProblemSpec &spec_;
    bool timings_;
    json stage_ms_ = json::object();
    Arrangement arr_;
    std::optional<ChamberEnumeration> en_;
    std::optional<SmoothnessReport> smooth_;
    std::optional<QuadraticPresentation> h_, hd_;
    std::map<std::size_t, std::optional<HilbertMatrix>> closed_, toric_;
};

} // namespace

RunReport run(const std::string &command, const ProblemSpec &spec, const RunOptions &options) {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
        throw Error(ErrorKind::InvalidSpec, "unknown command '" + command + "'");
    if (options.format != "json" && options.format != "svg" && options.format != "ascii")
        throw Error(ErrorKind::InvalidSpec, "format must be json, svg or ascii");
    if (options.format != "json" && command != "render")
        throw Error(ErrorKind::InvalidSpec, "svg and ascii output only apply to render");

    Pipeline pipe(spec, options.timings);
    RunReport rep;
    json checks = json::object();
    json results = json::object();

    if (command == "analyze") {
        results["chambers"] = pipe.chambers(checks);
        results["quiver"] = pipe.quiver(checks);
        results["hilbert"] = pipe.hilbert(checks);
        results["ext"] = pipe.ext(checks);
        results["koszul"] = pipe.koszul(checks);
        results["oracle"] = pipe.oracle(checks);
        results["tilting"] = pipe.tilting(checks);
    } else if (command == "chambers") {
        results = pipe.chambers(checks);
    } else if (command == "quiver") {
        results = pipe.quiver(checks);
    } else if (command == "ext") {
        results = pipe.ext(checks);
    } else if (command == "hilbert") {
        results = pipe.hilbert(checks);
    } else if (command == "koszul-check") {
        results = pipe.koszul(checks);
    } else if (command == "tilting") {
        results = pipe.tilting(checks);
    } else if (command == "render") {
        results = pipe.render(options.format, rep.text);
    } else if (command == "oracle") {
        results = pipe.oracle(checks);
    }

    for (const auto &[name, value] : checks.items())
        if (value == "fail")
            rep.ok = false;
    rep.json = {{"command", command},
                {"spec", to_json(spec)},
                {"smooth", pipe.smooth().smooth},
                {"results", results},
                {"checks", checks},
                {"ok", rep.ok}};
    if (options.timings)
        rep.json["timings_ms"] = pipe.timing_json();
    return rep;
}

} // namespace htk
