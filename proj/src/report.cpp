#include "fk/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fk {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* kind_name(GeometryKind k) {
    switch (k) {
        case GeometryKind::Point: return "point";
        case GeometryKind::Segment: return "segment";
        case GeometryKind::WholePolytope: return "whole";
    }
    return "?";
}

GeometryKind kind_from(const std::string& s) {
    if (s == "point") return GeometryKind::Point;
    if (s == "segment") return GeometryKind::Segment;
    if (s == "whole") return GeometryKind::WholePolytope;
    throw std::runtime_error("export parse: unknown geometry kind '" + s + "'");
}

std::string pack(std::string s) {
    if (s.empty()) return "-";
    std::replace(s.begin(), s.end(), ' ', '_');
    return s;
}

std::string unpack(std::string s) {
    if (s == "-") return "";
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
}

void expect(std::istream& in, const char* word) {
    std::string t;
    in >> t;
    if (t != word)
        throw std::runtime_error("export parse: expected '" + std::string(word) + "', got '" +
                                 t + "'");
}

}  // namespace

bool operator==(const ExportGenerator& a, const ExportGenerator& b) {
    return a.source == b.source && a.target == b.target && a.index == b.index &&
           a.degree == b.degree && a.kind == b.kind && a.p0.q1 == b.p0.q1 &&
           a.p0.q2 == b.p0.q2 && a.p1.q1 == b.p1.q1 && a.p1.q2 == b.p1.q2 &&
           a.offset == b.offset && a.bounded == b.bounded && a.admissible == b.admissible &&
           a.reject_reason == b.reject_reason;
}

bool operator==(const ExportM1& a, const ExportM1& b) {
    return a.source == b.source && a.target == b.target && a.index == b.index &&
           a.from == b.from && a.to == b.to && a.coefficient == b.coefficient &&
           a.area == b.area;
}

bool operator==(const ExportM2& a, const ExportM2& b) {
    return a.L1 == b.L1 && a.L2 == b.L2 && a.L3 == b.L3 && a.I == b.I && a.J == b.J &&
           a.K == b.K && a.coefficient == b.coefficient && a.z.q1 == b.z.q1 &&
           a.z.q2 == b.z.q2;
}

bool operator==(const ExportVerification& a, const ExportVerification& b) {
    return a.c == b.c && a.pass == b.pass && a.worst_residual == b.worst_residual &&
           a.pairs_checked == b.pairs_checked && a.triples_checked == b.triples_checked &&
           a.failures == b.failures;
}

bool operator==(const CategoryExport& a, const CategoryExport& b) {
    return a.k == b.k && a.C1 == b.C1 && a.C2 == b.C2 && a.generators == b.generators &&
           a.m1 == b.m1 && a.m2 == b.m2 && a.verification == b.verification;
}

void CategoryExport::add(const HomSpace& hs) {
    for (const auto& g : hs.generators) {
        ExportGenerator e;
        e.source = g.source;
        e.target = g.target;
        e.index = g.index;
        e.degree = g.degree;
        e.kind = g.geometry.kind;
        e.p0 = g.geometry.p0;
        e.p1 = g.geometry.p1;
        e.offset = g.potential.offset;
        e.bounded = g.potential.bounded_below;
        generators.push_back(e);
    }
    for (const auto& r : hs.rejected) {
        ExportGenerator e;
        e.source = hs.source;
        e.target = hs.target;
        e.index = r.index;
        e.degree = r.degree;
        e.kind = r.geometry.kind;
        e.p0 = r.geometry.p0;
        e.p1 = r.geometry.p1;
        e.admissible = false;
        e.reject_reason = r.reason;
        generators.push_back(e);
    }
}

void CategoryExport::add(const HomSpace& hs, const M1Result& d) {
    add(hs);
    for (const auto& en : d.entries) {
        ExportM1 e;
        e.source = hs.source;
        e.target = hs.target;
        e.index = en.index;
        e.from = en.from;
        e.to = en.to;
        e.coefficient = en.coefficient;
        e.area = en.trees.empty() ? -std::log(en.coefficient) : en.trees.front().area;
        m1.push_back(e);
    }
}

void CategoryExport::add(const LagrangianLabel& L1, const LagrangianLabel& L2,
                         const LagrangianLabel& L3, const MorphismIndex& I,
                         const MorphismIndex& J, const M2Result& r) {
    ExportM2 e;
    e.L1 = L1;
    e.L2 = L2;
    e.L3 = L3;
    e.I = I;
    e.J = J;
    e.K = r.target_index;
    e.coefficient = r.coefficient;
    e.z = r.z;
    m2.push_back(e);
}

void CategoryExport::add(const VerificationReport& rep) {
    ExportVerification e;
    e.c = rep.c;
    e.pass = rep.pass;
    e.worst_residual = rep.worst_residual;
    e.pairs_checked = static_cast<int>(rep.pairs.size());
    e.triples_checked = static_cast<int>(rep.triples.size());
    e.failures = static_cast<int>(rep.failures.size());
    verification.push_back(e);
}

std::string to_text(const CategoryExport& ex) {
    std::ostringstream out;
    out << "fk-category 1\n";
    out << "model k " << ex.k << " C1 " << g17(ex.C1) << " C2 " << g17(ex.C2) << "\n";
    for (const auto& g : ex.generators) {
        out << "generator src " << g.source.a << " " << g.source.b << " dst " << g.target.a
            << " " << g.target.b << " index " << g.index.i1 << " " << g.index.i2
            << " degree " << g.degree << " kind " << kind_name(g.kind) << " p0 "
            << g17(g.p0.q1) << " " << g17(g.p0.q2) << " p1 " << g17(g.p1.q1) << " "
            << g17(g.p1.q2) << " offset " << g17(g.offset) << " bounded " << g.bounded
            << " admissible " << g.admissible << " reason " << pack(g.reject_reason)
            << "\n";
    }
    for (const auto& e : ex.m1) {
        out << "m1 src " << e.source.a << " " << e.source.b << " dst " << e.target.a << " "
            << e.target.b << " index " << e.index.i1 << " " << e.index.i2 << " from "
            << e.from << " to " << e.to << " coefficient " << g17(e.coefficient) << " area "
            << g17(e.area) << "\n";
    }
    for (const auto& e : ex.m2) {
        out << "m2 L1 " << e.L1.a << " " << e.L1.b << " L2 " << e.L2.a << " " << e.L2.b
            << " L3 " << e.L3.a << " " << e.L3.b << " I " << e.I.i1 << " " << e.I.i2
            << " J " << e.J.i1 << " " << e.J.i2 << " K " << e.K.i1 << " " << e.K.i2
            << " coefficient " << g17(e.coefficient) << " z " << g17(e.z.q1) << " "
            << g17(e.z.q2) << "\n";
    }
    for (const auto& v : ex.verification) {
        out << "verification c " << v.c << " pass " << v.pass << " worst "
            << g17(v.worst_residual) << " pairs " << v.pairs_checked << " triples "
            << v.triples_checked << " failures " << v.failures << "\n";
    }
    out << "end\n";
    return out.str();
}

CategoryExport parse_export(const std::string& text) {
    std::istringstream in(text);
    CategoryExport ex;
    expect(in, "fk-category");
    int version;
    in >> version;
    if (version != 1) throw std::runtime_error("export parse: unsupported version");
    std::string tag;
    while (in >> tag) {
        if (tag == "end") return ex;
        if (tag == "model") {
            expect(in, "k");
            in >> ex.k;
            expect(in, "C1");
            in >> ex.C1;
            expect(in, "C2");
            in >> ex.C2;
        } else if (tag == "generator") {
            ExportGenerator g;
            std::string kind, reason;
            expect(in, "src");
            in >> g.source.a >> g.source.b;
            expect(in, "dst");
            in >> g.target.a >> g.target.b;
            expect(in, "index");
            in >> g.index.i1 >> g.index.i2;
            expect(in, "degree");
            in >> g.degree;
            expect(in, "kind");
            in >> kind;
            g.kind = kind_from(kind);
            expect(in, "p0");
            in >> g.p0.q1 >> g.p0.q2;
            expect(in, "p1");
            in >> g.p1.q1 >> g.p1.q2;
            expect(in, "offset");
            in >> g.offset;
            expect(in, "bounded");
            in >> g.bounded;
            expect(in, "admissible");
            in >> g.admissible;
            expect(in, "reason");
            in >> reason;
            g.reject_reason = unpack(reason);
            ex.generators.push_back(g);
        } else if (tag == "m1") {
            ExportM1 e;
            expect(in, "src");
            in >> e.source.a >> e.source.b;
            expect(in, "dst");
            in >> e.target.a >> e.target.b;
            expect(in, "index");
            in >> e.index.i1 >> e.index.i2;
            expect(in, "from");
            in >> e.from;
            expect(in, "to");
            in >> e.to;
            expect(in, "coefficient");
            in >> e.coefficient;
            expect(in, "area");
            in >> e.area;
            ex.m1.push_back(e);
        } else if (tag == "m2") {
            ExportM2 e;
            expect(in, "L1");
            in >> e.L1.a >> e.L1.b;
            expect(in, "L2");
            in >> e.L2.a >> e.L2.b;
            expect(in, "L3");
            in >> e.L3.a >> e.L3.b;
            expect(in, "I");
            in >> e.I.i1 >> e.I.i2;
            expect(in, "J");
            in >> e.J.i1 >> e.J.i2;
            expect(in, "K");
            in >> e.K.i1 >> e.K.i2;
            expect(in, "coefficient");
            in >> e.coefficient;
            expect(in, "z");
            in >> e.z.q1 >> e.z.q2;
            ex.m2.push_back(e);
        } else if (tag == "verification") {
            ExportVerification v;
            expect(in, "c");
            in >> v.c;
            expect(in, "pass");
            in >> v.pass;
            expect(in, "worst");
            in >> v.worst_residual;
            expect(in, "pairs");
            in >> v.pairs_checked;
            expect(in, "triples");
            in >> v.triples_checked;
            expect(in, "failures");
            in >> v.failures;
            ex.verification.push_back(v);
        } else {
            throw std::runtime_error("export parse: unknown record '" + tag + "'");
        }
        if (!in) throw std::runtime_error("export parse: truncated record");
    }
    throw std::runtime_error("export parse: missing end marker");
}

// ---------------------------------------------------------------------------
// SVG rendering.  80 px per moment-coordinate unit, y axis flipped.

namespace {

constexpr double kScale = 80.0;
constexpr double kMargin = 48.0;

struct Canvas {
    double q1max, q2max;
    std::ostringstream body;

    explicit Canvas(const HirzebruchModel& m)
        : q1max(2.0 * (m.C1 + m.k * m.C2)), q2max(2.0 * m.C2) {}

    double X(double q1) const { return kMargin + kScale * q1; }
    double Y(double q2) const { return kMargin + kScale * (q2max - q2); }
    double W() const { return 2.0 * kMargin + kScale * q1max; }
    double H() const { return 2.0 * kMargin + kScale * q2max; }

    std::string finish() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W() << "\" height=\""
            << H() << "\" viewBox=\"0 0 " << W() << " " << H() << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

void draw_polytope(Canvas& cv, const HirzebruchModel& m, bool labels) {
    MomentPolytope poly(m);
    auto vs = poly.vertices();
    cv.body << "<polygon points=\"";
    for (const auto& v : vs) cv.body << cv.X(v.q1) << "," << cv.Y(v.q2) << " ";
    cv.body << "\" fill=\"#f5f5f5\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    if (!labels) return;
    // edge labels at outward-shifted midpoints: E1 left, E2 bottom, E3
    // slanted right, E4 top
    auto text = [&](double x, double y, const char* s) {
        cv.body << "<text x=\"" << x << "\" y=\"" << y
                << "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
                << s << "</text>\n";
    };
    text(cv.X(0.0) - 18.0, cv.Y(0.5 * cv.q2max), "E1");
    text(cv.X(0.5 * cv.q1max), cv.Y(0.0) + 24.0, "E2");
    MomentPoint e3m{0.5 * (vs[1].q1 + vs[2].q1), 0.5 * (vs[1].q2 + vs[2].q2)};
    text(cv.X(e3m.q1) + 22.0, cv.Y(e3m.q2), "E3");
    text(cv.X(0.5 * 2.0 * m.C1), cv.Y(cv.q2max) - 12.0, "E4");
}

void draw_marker(Canvas& cv, const ComponentGeometry& g, int degree, bool admissible) {
    const char* color = admissible ? (degree == 0 ? "#1f6fb2" : "#b2501f") : "#888888";
    if (g.kind == GeometryKind::WholePolytope) {
        cv.body << "<rect x=\"" << cv.X(0.0) << "\" y=\"" << cv.Y(cv.q2max) << "\" width=\""
                << kScale * cv.q1max << "\" height=\"" << kScale * cv.q2max
                << "\" fill=\"#1f6fb2\" fill-opacity=\"0.12\"/>\n";
        return;
    }
    if (g.kind == GeometryKind::Segment) {
        cv.body << "<line x1=\"" << cv.X(g.p0.q1) << "\" y1=\"" << cv.Y(g.p0.q2)
                << "\" x2=\"" << cv.X(g.p1.q1) << "\" y2=\"" << cv.Y(g.p1.q2)
                << "\" stroke=\"" << color << "\" stroke-width=\"4\"/>\n";
        return;
    }
    double x = cv.X(g.p0.q1), y = cv.Y(g.p0.q2);
    if (!admissible) {
        cv.body << "<path d=\"M " << x - 6 << " " << y - 6 << " L " << x + 6 << " " << y + 6
                << " M " << x - 6 << " " << y + 6 << " L " << x + 6 << " " << y - 6
                << "\" stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";
    } else if (degree == 0) {
        cv.body << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"" << color
                << "\"/>\n";
    } else {
        cv.body << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"white\" "
                << "stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";
    }
}

}  // namespace

std::string svg_polytope(const HirzebruchModel& m) {
    Canvas cv(m);
    draw_polytope(cv, m, true);
    auto vs = MomentPolytope(m).vertices();
    for (const auto& v : vs)
        cv.body << "<circle cx=\"" << cv.X(v.q1) << "\" cy=\"" << cv.Y(v.q2)
                << "\" r=\"3.5\" fill=\"black\"/>\n";
    return cv.finish();
}

std::string svg_hom(const HirzebruchModel& m, const HomSpace& hs) {
    Canvas cv(m);
    draw_polytope(cv, m, true);
    for (const auto& r : hs.rejected) draw_marker(cv, r.geometry, r.degree, false);
    for (const auto& g : hs.generators) draw_marker(cv, g.geometry, g.degree, true);
    return cv.finish();
}

std::string svg_flow(const HirzebruchModel& m, const LagrangianLabel& l,
                     const MorphismIndex& I, const std::vector<GradientTree>& trees) {
    Canvas cv(m);
    draw_polytope(cv, m, false);
    MomentPolytope poly(m);

    // quiver: arrows on a regular grid, length scaled to the largest field
    const int nx = 28, ny = 18;
    struct Arrow {
        MomentPoint p;
        Vec2 f;
    };
    std::vector<Arrow> arrows;
    double fmax = 0.0;
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            MomentPoint p{cv.q1max * i / nx, cv.q2max * j / ny};
            if (!poly.contains(p)) continue;
            p = clamp_to_polytope(poly, p);
            Vec2 f = gradient_field(m, l, I, p);
            fmax = std::max(fmax, f.norm());
            arrows.push_back({p, f});
        }
    }
    double unit = fmax > 0.0 ? 18.0 / fmax : 0.0;
    for (const auto& a : arrows) {
        double x0 = cv.X(a.p.q1), y0 = cv.Y(a.p.q2);
        double dx = unit * a.f.v1, dy = -unit * a.f.v2;
        double n = std::hypot(dx, dy);
        cv.body << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 + dx
                << "\" y2=\"" << y0 + dy << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
        if (n > 2.0) {  // arrowhead
            double ux = dx / n, uy = dy / n;
            cv.body << "<path d=\"M " << x0 + dx << " " << y0 + dy << " L "
                    << x0 + dx - 4 * ux + 2 * uy << " " << y0 + dy - 4 * uy - 2 * ux << " L "
                    << x0 + dx - 4 * ux - 2 * uy << " " << y0 + dy - 4 * uy + 2 * ux
                    << " Z\" fill=\"#555555\"/>\n";
        }
    }

    for (const auto& t : trees) {
        if (t.path.size() < 2) continue;
        cv.body << "<polyline fill=\"none\" stroke=\"#c22222\" stroke-width=\"2.5\" points=\"";
        size_t stride = std::max<size_t>(1, t.path.size() / 400);
        for (size_t i = 0; i < t.path.size(); i += stride)
            cv.body << cv.X(t.path[i].q1) << "," << cv.Y(t.path[i].q2) << " ";
        cv.body << cv.X(t.path.back().q1) << "," << cv.Y(t.path.back().q2) << "\"/>\n";
    }

    for (const auto& comp : solve_components(m, l, I)) {
        try {
            DegreeResult deg = degree_of(m, l, I, comp);
            draw_marker(cv, comp, deg.degree, check_M2(m, comp, deg));
        } catch (const M1ViolationError&) {
            draw_marker(cv, comp, 0, false);
        }
    }
    return cv.finish();
}

}  // namespace fk
