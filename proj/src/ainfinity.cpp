#include "fk/ainfinity.hpp"

#include <algorithm>
#include <cmath>

namespace fk {

namespace {

constexpr double kConvField = 1e-9;
constexpr double kConvDist = 1e-6;
constexpr double kStepTol = 1e-10;   // local error per step
constexpr double kExitTol = 1e-8;    // outward normal component => transversal exit
constexpr long kMaxSteps = 400000;
constexpr double kMaxArc = 1e5;

double dist_to_geometry(const ComponentGeometry& g, const MomentPoint& X) {
    switch (g.kind) {
        case GeometryKind::WholePolytope:
            return 0.0;
        case GeometryKind::Point:
            return std::hypot(X.q1 - g.p0.q1, X.q2 - g.p0.q2);
        case GeometryKind::Segment: {
            double dx = g.p1.q1 - g.p0.q1, dy = g.p1.q2 - g.p0.q2;
            double len2 = dx * dx + dy * dy;
            double u = len2 > 0.0
                           ? std::clamp(((X.q1 - g.p0.q1) * dx + (X.q2 - g.p0.q2) * dy) / len2,
                                        0.0, 1.0)
                           : 0.0;
            return std::hypot(X.q1 - (g.p0.q1 + u * dx), X.q2 - (g.p0.q2 + u * dy));
        }
    }
    return 0.0;
}

struct Facet {
    double slack;
    Vec2 n_out;  // unit outward normal
};

std::array<Facet, 4> facets_at(const MomentPolytope& poly, const MomentPoint& X) {
    double nk = std::hypot(1.0, static_cast<double>(poly.k));
    return {Facet{poly.slack_e1(X), {-1.0, 0.0}}, Facet{poly.slack_e2(X), {0.0, -1.0}},
            Facet{poly.slack_e3(X), {1.0 / nk, poly.k / nk}},
            Facet{poly.slack_e4(X), {0.0, 1.0}}};
}

}  // namespace

GradientTree trace_trajectory(const HirzebruchModel& m, const LagrangianLabel& l,
                              const MorphismIndex& I, const MomentPoint& start,
                              const std::vector<ComponentGeometry>& targets,
                              double direction) {
    MomentPolytope poly(m);
    GradientTree tree;

    // Field with facets the state sits on treated as constraints: any
    // outward component there is projected away (sliding); a decisively
    // outward field flags a transversal exit instead.
    bool exit_flag = false;
    auto field_at = [&](const MomentPoint& Xraw) -> Vec2 {
        MomentPoint X = clamp_to_polytope(poly, Xraw);
        Vec2 F = gradient_field(m, l, I, X);
        F = {direction * F.v1, direction * F.v2};
        for (const Facet& fc : facets_at(poly, X)) {
            if (fc.slack > kBoundaryTol) continue;
            double nc = F.v1 * fc.n_out.v1 + F.v2 * fc.n_out.v2;
            if (nc > kExitTol) exit_flag = true;
            if (nc > 0.0) F = {F.v1 - nc * fc.n_out.v1, F.v2 - nc * fc.n_out.v2};
        }
        return F;
    };

    auto rk4 = [&](const MomentPoint& X, double h) -> MomentPoint {
        Vec2 k1 = field_at(X);
        Vec2 k2 = field_at({X.q1 + 0.5 * h * k1.v1, X.q2 + 0.5 * h * k1.v2});
        Vec2 k3 = field_at({X.q1 + 0.5 * h * k2.v1, X.q2 + 0.5 * h * k2.v2});
        Vec2 k4 = field_at({X.q1 + h * k3.v1, X.q2 + h * k3.v2});
        return {X.q1 + h / 6.0 * (k1.v1 + 2.0 * k2.v1 + 2.0 * k3.v1 + k4.v1),
                X.q2 + h / 6.0 * (k1.v2 + 2.0 * k2.v2 + 2.0 * k3.v2 + k4.v2)};
    };

    MomentPoint X = clamp_to_polytope(poly, start);
    tree.path.push_back(X);
    double h = 1e-4;
    double arc = 0.0;

    for (long step = 0; step < kMaxSteps; ++step) {
        exit_flag = false;
        Vec2 F = field_at(X);
        if (exit_flag) {
            tree.status = TraceStatus::Exited;
            return tree;
        }
        if (F.norm() < kConvField) {
            for (size_t ti = 0; ti < targets.size(); ++ti) {
                if (dist_to_geometry(targets[ti], X) < kConvDist) {
                    tree.status = TraceStatus::Converged;
                    tree.arrival = static_cast<int>(ti);
                    return tree;
                }
            }
            if (F.norm() < 1e-14) {  // stationary away from every target
                tree.status = TraceStatus::Exited;
                return tree;
            }
        }

        // Step doubling: full step vs two halves, classical RK4.
        MomentPoint X1, X2;
        double err;
        for (;;) {
            exit_flag = false;
            X1 = rk4(X, h);
            X2 = rk4(rk4(X, 0.5 * h), 0.5 * h);
            err = std::hypot(X1.q1 - X2.q1, X1.q2 - X2.q2) / 15.0;
            if (err < kStepTol || h <= 1e-12) break;
            h = std::max(1e-12, 0.25 * h);
        }
        if (exit_flag) {
            tree.status = TraceStatus::Exited;
            return tree;
        }
        MomentPoint Xn = clamp_to_polytope(
            poly, {X2.q1 + (X2.q1 - X1.q1) / 15.0, X2.q2 + (X2.q2 - X1.q2) / 15.0});
        // Snap exactly onto facets we are sliding on.
        if (Xn.q1 < kBoundaryTol) Xn.q1 = 0.0;
        if (Xn.q2 < kBoundaryTol) Xn.q2 = 0.0;
        if (std::abs(Xn.q2 - 2.0 * m.C2) < kBoundaryTol) Xn.q2 = 2.0 * m.C2;
        double s3 = poly.slack_e3(Xn);
        if (std::abs(s3) < kBoundaryTol) Xn.q1 += s3;

        arc += std::hypot(Xn.q1 - X.q1, Xn.q2 - X.q2);
        X = Xn;
        tree.path.push_back(X);
        if (arc > kMaxArc) break;

        double grow = err > 0.0 ? 0.9 * std::pow(kStepTol / err, 0.2) : 4.0;
        h = std::clamp(h * std::clamp(grow, 0.2, 4.0), 1e-12, 1e8);
    }
    tree.status = TraceStatus::BudgetExceeded;
    return tree;
}

namespace {

// Homotopy surrogate: run-length-encoded strata sequence of the path
// (up to 200 samples) plus the arrival component.
std::vector<int> path_signature(const MomentPolytope& poly, const GradientTree& t) {
    std::vector<int> sig{t.arrival};
    size_t n = t.path.size();
    size_t stride = std::max<size_t>(1, n / 200);
    int prev = -1;
    for (size_t i = 0; i < n; i += stride) {
        MomentPoint p = clamp_to_polytope(poly, t.path[i]);
        int s = static_cast<int>(poly.classify(p));
        if (s != prev) sig.push_back(s);
        prev = s;
    }
    return sig;
}

}  // namespace

namespace {

// df_I contracted with a moment-coordinate displacement: the base-coord
// gradient pulled back through the (pseudo-)inverse Hessian of psi.
double df_dot(const HirzebruchModel& m, const LagrangianLabel& l, const MorphismIndex& I,
              const MomentPoint& X, const Vec2& dq) {
    Fractions fr = fractions_at(m, X);
    Vec2 gx{l.a * fr.sigma + l.b * m.k * fr.kappa - I.i1, l.b * fr.tau - I.i2};
    Mat2 M = metric_inverse(m, BasePoint{fr.x1, fr.x2});
    Eigen2 e = eigen2(M);
    double tol = 1e-10 * (std::abs(e.lambda1) + std::abs(e.lambda2) + 1e-30);
    double out = 0.0;
    for (auto [lam, v] : {std::pair{e.lambda1, e.v1}, std::pair{e.lambda2, e.v2}}) {
        if (std::abs(lam) <= tol) continue;
        out += (gx.v1 * v.v1 + gx.v2 * v.v2) * (dq.v1 * v.v1 + dq.v2 * v.v2) / lam;
    }
    return out;
}

}  // namespace

double path_area_integral(const HirzebruchModel& m, const LagrangianLabel& l,
                          const MorphismIndex& I, const std::vector<MomentPoint>& path) {
    MomentPolytope poly(m);
    double total = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        MomentPoint A = clamp_to_polytope(poly, path[i]);
        MomentPoint B = clamp_to_polytope(poly, path[i + 1]);
        // composite Simpson with 4 subintervals per polyline segment
        constexpr int ns = 4;
        for (int j = 0; j < ns; ++j) {
            MomentPoint a{A.q1 + (B.q1 - A.q1) * j / ns, A.q2 + (B.q2 - A.q2) * j / ns};
            MomentPoint b{A.q1 + (B.q1 - A.q1) * (j + 1) / ns,
                          A.q2 + (B.q2 - A.q2) * (j + 1) / ns};
            MomentPoint mid{0.5 * (a.q1 + b.q1), 0.5 * (a.q2 + b.q2)};
            Vec2 dq{b.q1 - a.q1, b.q2 - a.q2};
            total += (df_dot(m, l, I, a, dq) + 4.0 * df_dot(m, l, I, mid, dq) +
                      df_dot(m, l, I, b, dq)) /
                     6.0;
        }
    }
    return 2.0 * M_PI * total;
}

M1Result m1(const HirzebruchModel& m, const HomSpace& hom) {
    MomentPolytope poly(m);
    M1Result res;
    const auto& gens = hom.generators;
    const int ngen = static_cast<int>(gens.size());

    std::vector<ComponentGeometry> targets;
    for (const auto& g : gens) targets.push_back(g.geometry);
    for (const auto& r : hom.rejected) targets.push_back(r.geometry);

    // entry lookup per ordered pair, plus collected signatures
    std::vector<M1Entry> entries;
    std::vector<std::vector<std::vector<int>>> sigs;

    for (int gi = 0; gi < ngen; ++gi) {
        const MorphismGenerator& V = gens[gi];
        if (V.geometry.kind == GeometryKind::WholePolytope) continue;
        DegreeResult dr = degree_of(m, V.label, V.index, V.geometry);

        for (const Vec2& u : dr.unstable) {
            for (double sgn : {1.0, -1.0}) {
                constexpr double eps = 1e-4;
                auto shoot = [&](double e) {
                    MomentPoint seed{dr.rep.q1 + sgn * e * u.v1, dr.rep.q2 + sgn * e * u.v2};
                    return trace_trajectory(m, V.label, V.index, seed, targets);
                };
                GradientTree t = shoot(eps);
                if (t.status == TraceStatus::BudgetExceeded)
                    throw BudgetExceededError("m1 trajectory exceeded its step budget");
                if (t.status != TraceStatus::Converged) continue;
                GradientTree half = shoot(0.5 * eps);  // Richardson guard
                if (half.status != TraceStatus::Converged || half.arrival != t.arrival)
                    continue;
                int a = t.arrival;
                if (a < 0 || a >= ngen || a == gi) continue;
                const MorphismGenerator& W = gens[a];
                if (!(W.index == V.index)) continue;  // same potential f_I only
                if (W.degree != V.degree + 1) continue;

                std::vector<int> sig = path_signature(poly, t);
                int ei = -1;
                for (size_t i = 0; i < entries.size(); ++i)
                    if (entries[i].from == gi && entries[i].to == a) ei = static_cast<int>(i);
                if (ei < 0) {
                    entries.push_back({gi, a, V.index, 0.0, {}});
                    sigs.emplace_back();
                    ei = static_cast<int>(entries.size()) - 1;
                }
                bool dup = false;
                for (const auto& s : sigs[ei]) dup = dup || s == sig;
                if (dup) continue;
                sigs[ei].push_back(sig);

                double fv = V.potential.f(m, V.geometry.representative());
                double fw = V.potential.f(m, W.geometry.representative());
                t.area = 2.0 * M_PI * (fw - fv);
                entries[ei].coefficient += std::exp(-t.area);
                entries[ei].trees.push_back(std::move(t));
            }
        }
    }
    std::sort(entries.begin(), entries.end(), [](const M1Entry& x, const M1Entry& y) {
        return x.from != y.from ? x.from < y.from : x.to < y.to;
    });
    res.entries = std::move(entries);
    return res;
}

M1Result m1(const HirzebruchModel& m, const LagrangianLabel& L1,
            const LagrangianLabel& L2) {
    return m1(m, hom_space(m, L1, L2));
}

M1Entry m1_pair(const HirzebruchModel& m, const HomSpace& hom, int from, int to) {
    const auto& gens = hom.generators;
    if (gens.at(to).degree != gens.at(from).degree + 1)
        throw NonAdjacentDegreesError("m1 requires degree(to) == degree(from) + 1");
    M1Result all = m1(m, hom);
    for (auto& e : all.entries)
        if (e.from == from && e.to == to) return e;
    return {from, to, gens.at(from).index, 0.0, {}};
}

namespace {

// Point of a component on the horizontal line q2 = y (components are
// points, straight segments, or horizontal segments in moment coords).
MomentPoint on_line(const ComponentGeometry& g, double y) {
    if (g.kind == GeometryKind::Point) return g.p0;
    double dy = g.p1.q2 - g.p0.q2;
    if (std::abs(dy) < 1e-12) return g.representative();  // horizontal: any point
    double u = std::clamp((y - g.p0.q2) / dy, 0.0, 1.0);
    return {g.p0.q1 + u * (g.p1.q1 - g.p0.q1), g.p0.q2 + u * (g.p1.q2 - g.p0.q2)};
}

}  // namespace

M2Result m2(const HirzebruchModel& m, const MorphismGenerator& V12,
            const MorphismGenerator& V23, const HomSpace& hom13) {
    const LagrangianLabel l12 = V12.label, l23 = V23.label;
    if (l12.b < 0 || l12.b > 1 || l23.b < 0 || l23.b > 1)
        throw CompositionTypeError("m2 factors must be of type 0 or 1");
    if (l12.b == 1 && l23.b == 1)
        throw CompositionTypeError("m2 of two type-1 morphisms leaves the collection");
    if (V12.degree != 0 || V23.degree != 0)
        throw std::invalid_argument("m2 expects degree-0 generators");

    M2Result res;

    // Identity units pass straight through.
    if (l12.a == 0 && l12.b == 0) {
        res.target = hom13.find(V23.index);
        if (!res.target) throw MissingTargetError("identity composition target missing");
        res.target_index = V23.index;
        res.coefficient = 1.0;
        res.z = res.target->geometry.representative();
        res.tree.path = {res.z};
        return res;
    }
    if (l23.a == 0 && l23.b == 0) {
        res.target = hom13.find(V12.index);
        if (!res.target) throw MissingTargetError("identity composition target missing");
        res.target_index = V12.index;
        res.coefficient = 1.0;
        res.z = res.target->geometry.representative();
        res.tree.path = {res.z};
        return res;
    }

    MorphismIndex K = V12.index + V23.index;
    const MorphismGenerator* tgt = hom13.find(K);
    if (!tgt) throw MissingTargetError("no generator carries the composite index");
    res.target = tgt;
    res.target_index = K;

    // The tree runs on a horizontal line: q2 pinned by the type-1 factor,
    // free (take the target's height) when both factors are type 0.
    double y;
    if (l12.b == 1) y = V12.index.i2 == 0 ? 0.0 : 2.0 * m.C2;
    else if (l23.b == 1) y = V23.index.i2 == 0 ? 0.0 : 2.0 * m.C2;
    else y = tgt->geometry.representative().q2;

    std::vector<ComponentGeometry> targets{tgt->geometry};
    MomentPoint s12 = on_line(V12.geometry, y), s23 = on_line(V23.geometry, y);
    double d12 = dist_to_geometry(tgt->geometry, s12);
    double d23 = dist_to_geometry(tgt->geometry, s23);
    // Descending flow of the composite potential: the degree-0 target is
    // attracting.  Start from the farther input point for the fuller path.
    for (const MomentPoint& s : {d12 >= d23 ? s12 : s23, d12 >= d23 ? s23 : s12}) {
        GradientTree t = trace_trajectory(m, tgt->label, K, s, targets, -1.0);
        if (t.status == TraceStatus::Converged) {
            res.tree = std::move(t);
            break;
        }
        if (t.status == TraceStatus::BudgetExceeded)
            throw BudgetExceededError("m2 tree trace exceeded its step budget");
    }
    if (res.tree.status != TraceStatus::Converged || res.tree.path.empty())
        throw MissingTargetError("composition tree did not reach the target component");

    res.z = res.tree.path.back();
    res.tree.area = V12.potential.f(m, res.z) + V23.potential.f(m, res.z);
    res.coefficient = std::exp(-res.tree.area);
    return res;
}

M2Result m2(const HirzebruchModel& m, const LagrangianLabel& L1,
            const LagrangianLabel& L2, const LagrangianLabel& L3,
            const MorphismGenerator& V12, const MorphismGenerator& V23) {
    if (!(V12.label == L2 - L1) || !(V23.label == L3 - L2))
        throw std::invalid_argument("m2: generators do not match the labels");
    HomSpace hom13 = hom_space(m, L1, L3);
    M2Result res = m2(m, V12, V23, hom13);
    res.target = nullptr;  // hom13 is local; keep only the index and data
    return res;
}

}  // namespace fk
