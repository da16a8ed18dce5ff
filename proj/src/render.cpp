#include "htk/render.hpp"

#include "htk/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace htk {

std::string class_letter(std::size_t cls) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('A' + cls % 26));
        cls /= 26;
    } while (cls-- > 0);
    return s;
}

std::string rational_str(const Rational &q) { return q.get_str(); }

namespace {

// a = alpha + beta * u + gamma * v on the coset.
struct AffineChart {
    std::array<std::size_t, 2> axes{};
    std::vector<Rational> alpha, beta, gamma;

    std::vector<Rational> at(const Rational &u, const Rational &v) const {
        std::vector<Rational> a(alpha.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = alpha[i] + beta[i] * u + gamma[i] * v;
        return a;
    }
};

AffineChart chart(const Arrangement &arr) {
    const auto &emb = arr.embedding();
    if (emb.d() != 2)
        throw Error(ErrorKind::InvalidInput, "rendering needs a two-dimensional coset (n - k = 2)");
    const auto &piv = emb.tperp_pivots();
    const auto &tp = emb.tperp64();
    const IntVec &a0 = arr.basepoint();
    AffineChart c;
    c.axes = {piv[0], piv[1]};
    RatMatrix mt(2, 2);
    for (std::size_t col = 0; col < 2; ++col)
        for (std::size_t r = 0; r < 2; ++r)
            mt(col, r) = static_cast<long>(tp[r][piv[col]]);
    auto z_of = [&](const Rational &u, const Rational &v) {
        const std::vector<Rational> rhs{u, v};
        return *solve(mt, rhs);
    };
    const auto z0 = z_of(-Rational(static_cast<long>(a0[piv[0]])), -Rational(static_cast<long>(a0[piv[1]])));
    const auto zu = z_of(1, 0), zv = z_of(0, 1);
    const std::size_t n = arr.n();
    c.alpha.assign(n, 0);
    c.beta.assign(n, 0);
    c.gamma.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        c.alpha[i] = static_cast<long>(a0[i]);
        for (std::size_t r = 0; r < 2; ++r) {
            const Rational t = static_cast<long>(tp[r][i]);
            c.alpha[i] += t * z0[r];
            c.beta[i] += t * zu[r];
            c.gamma[i] += t * zv[r];
        }
    }
    return c;
}

} // namespace

Plot plot_layout(const Arrangement &arr, const ChamberEnumeration &en, double margin) {
    const AffineChart c = chart(arr);
    Plot plot;
    plot.axes = c.axes;

    Rational ulo, uhi, vlo, vhi;
    bool first = true;
    for (std::size_t cls = 0; cls < en.size(); ++cls) {
        const auto graph = vertices_and_edges(polytope(arr, en.classes()[cls].key));
        PlotRegion reg;
        reg.cls = cls;
        for (const auto &vx : graph.vertices) {
            const Rational &u = vx.a[c.axes[0]], &v = vx.a[c.axes[1]];
            if (first || u < ulo) ulo = u;
            if (first || u > uhi) uhi = u;
            if (first || v < vlo) vlo = v;
            if (first || v > vhi) vhi = v;
            first = false;
            reg.polygon.push_back({u.get_d(), v.get_d()});
        }
        double cx = 0, cy = 0;
        for (const auto &pt : reg.polygon) {
            cx += pt[0];
            cy += pt[1];
        }
        if (!reg.polygon.empty()) {
            cx /= static_cast<double>(reg.polygon.size());
            cy /= static_cast<double>(reg.polygon.size());
        }
        reg.centroid = {cx, cy};
        std::sort(reg.polygon.begin(), reg.polygon.end(), [&](const auto &p, const auto &q) {
            return std::atan2(p[1] - cy, p[0] - cx) < std::atan2(q[1] - cy, q[0] - cx);
        });
        plot.regions.push_back(std::move(reg));
    }
    const Rational m(static_cast<long>(std::lround(margin * 1000)), 1000);
    const Rational lo_u = ulo - m, hi_u = uhi + m, lo_v = vlo - m, hi_v = vhi + m;
    plot.lo = {lo_u.get_d(), lo_v.get_d()};
    plot.hi = {hi_u.get_d(), hi_v.get_d()};

    const Rational half(1, 2);
    const std::array<std::array<Rational, 2>, 4> corners{{{lo_u, lo_v}, {hi_u, lo_v}, {hi_u, hi_v}, {lo_u, hi_v}}};
    for (std::size_t i = 0; i < arr.n(); ++i) {
        if (c.beta[i] == 0 && c.gamma[i] == 0)
            continue;
        Rational amin, amax;
        for (std::size_t k = 0; k < 4; ++k) {
            const Rational val = c.alpha[i] + c.beta[i] * corners[k][0] + c.gamma[i] * corners[k][1];
            if (k == 0 || val < amin) amin = val;
            if (k == 0 || val > amax) amax = val;
        }
        const Rational p(static_cast<long>(arr.p()));
        Integer kk = ceil_of((amin + half) / p);
        for (Rational level = kk * p - half; level < amax; level += p) {
            if (level <= amin)
                continue;
            // clip against the four window edges
            std::vector<std::array<Rational, 2>> hits;
            for (std::size_t e = 0; e < 4; ++e) {
                const auto &P = corners[e], &Q = corners[(e + 1) % 4];
                const Rational fp = c.alpha[i] + c.beta[i] * P[0] + c.gamma[i] * P[1] - level;
                const Rational fq = c.alpha[i] + c.beta[i] * Q[0] + c.gamma[i] * Q[1] - level;
                if ((fp > 0 && fq > 0) || (fp < 0 && fq < 0) || fp == fq)
                    continue;
                const Rational t = fp / (fp - fq);
                std::array<Rational, 2> hit{P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])};
                if (std::find(hits.begin(), hits.end(), hit) == hits.end())
                    hits.push_back(hit);
            }
            if (hits.size() < 2)
                continue;
            std::sort(hits.begin(), hits.end());
            plot.lines.push_back(
                {i, level, {{{hits.front()[0].get_d(), hits.front()[1].get_d()},
                             {hits.back()[0].get_d(), hits.back()[1].get_d()}}}});
        }
    }

    for (Integer u = ceil_of(lo_u); u <= floor_of(hi_u); ++u)
        for (Integer v = ceil_of(lo_v); v <= floor_of(hi_v); ++v) {
            const auto a = c.at(u, v);
            if (std::all_of(a.begin(), a.end(), [](const Rational &q) { return q.get_den() == 1; }))
                plot.lattice_points.push_back({u.get_d(), v.get_d()});
        }
    return plot;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

const char *palette[] = {"#cfe3f7", "#f7dccf", "#d6efcf", "#efe6b8", "#e3d1f0", "#f0d1dd"};

} // namespace

std::string render_svg(const Arrangement &arr, const ChamberEnumeration &en) {
    const Plot plot = plot_layout(arr, en);
    const double size = 480, pad = 20;
    const double su = (size - 2 * pad) / (plot.hi[0] - plot.lo[0]);
    const double sv = (size - 2 * pad) / (plot.hi[1] - plot.lo[1]);
    auto X = [&](double u) { return num(pad + (u - plot.lo[0]) * su); };
    auto Y = [&](double v) { return num(size - pad - (v - plot.lo[1]) * sv); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto &reg : plot.regions) {
        o << "<polygon class=\"chamber\" data-class=\"" << reg.cls << "\" fill=\""
          << palette[reg.cls % std::size(palette)] << "\" stroke=\"none\" points=\"";
        for (std::size_t k = 0; k < reg.polygon.size(); ++k)
            o << (k ? " " : "") << X(reg.polygon[k][0]) << ',' << Y(reg.polygon[k][1]);
        o << "\"/>\n";
    }
    for (const auto &pt : plot.lattice_points)
        o << "<circle cx=\"" << X(pt[0]) << "\" cy=\"" << Y(pt[1]) << "\" r=\"1.2\" fill=\"gray\"/>\n";
    for (const auto &ln : plot.lines) {
        o << "<line class=\"hyperplane\" x1=\"" << X(ln.ends[0][0]) << "\" y1=\"" << Y(ln.ends[0][1])
          << "\" x2=\"" << X(ln.ends[1][0]) << "\" y2=\"" << Y(ln.ends[1][1])
          << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        o << "<text x=\"" << X(ln.ends[1][0]) << "\" y=\"" << Y(ln.ends[1][1]) << "\">a" << ln.coordinate + 1
          << " = " << rational_str(ln.level) << "</text>\n";
    }
    for (const auto &reg : plot.regions) {
        const auto &key = en.classes()[reg.cls].key;
        o << "<text class=\"label\" text-anchor=\"middle\" x=\"" << X(reg.centroid[0]) << "\" y=\""
          << Y(reg.centroid[1]) << "\">" << class_letter(reg.cls) << " (";
        for (std::size_t i = 0; i < key.size(); ++i)
            o << (i ? "," : "") << key[i];
        o << ")</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string render_ascii(const Arrangement &arr, const ChamberEnumeration &en) {
    const AffineChart c = chart(arr);
    const Plot plot = plot_layout(arr, en);
    const auto &emb = arr.embedding();
    std::ostringstream o;
    o << "axes: a" << c.axes[0] + 1 << " (right), a" << c.axes[1] + 1 << " (up)\n";
    for (std::size_t cls = 0; cls < en.size(); ++cls) {
        o << class_letter(cls) << " = (";
        const auto &key = en.classes()[cls].key;
        for (std::size_t i = 0; i < key.size(); ++i)
            o << (i ? "," : "") << key[i];
        o << ")\n";
    }
    const auto ulo = static_cast<long>(std::ceil(plot.lo[0])), uhi = static_cast<long>(std::floor(plot.hi[0]));
    const auto vlo = static_cast<long>(std::ceil(plot.lo[1])), vhi = static_cast<long>(std::floor(plot.hi[1]));
    for (long v = vhi; v >= vlo; --v) {
        std::string line;
        for (long u = ulo; u <= uhi; ++u) {
            const auto a = c.at(Rational(u), Rational(v));
            char ch = ' ';
            if (std::all_of(a.begin(), a.end(), [](const Rational &q) { return q.get_den() == 1; })) {
                Chamber x(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    x[i] = floor_div(to_int64(a[i].get_num()), arr.p());
                const auto cls = en.class_of(emb, x);
                ch = cls ? class_letter(*cls)[0] : '.';
            }
            line += ch;
            if (u < uhi)
                line += ' ';
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        o << line << '\n';
    }
    return o.str();
}

} // namespace htk
