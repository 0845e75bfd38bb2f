#include "fk/morse.hpp"

#include <algorithm>
#include <cmath>

#include "fk/detail/roots.hpp"

namespace fk {

namespace {

double sigma_of(double x1) { return 1.0 / (1.0 + std::exp(-2.0 * x1)); }

void cluster_components(std::vector<ComponentGeometry>& comps) {
    // Merge point components closer than 1e-8 in moment coordinates.
    std::vector<ComponentGeometry> out;
    for (const auto& c : comps) {
        bool merged = false;
        if (c.kind == GeometryKind::Point) {
            for (const auto& o : out) {
                if (o.kind == GeometryKind::Point &&
                    std::hypot(o.p0.q1 - c.p0.q1, o.p0.q2 - c.p0.q2) < 1e-8) {
                    merged = true;
                    break;
                }
            }
        }
        if (!merged) out.push_back(c);
    }
    comps = std::move(out);
}

}  // namespace

std::vector<ComponentGeometry> solve_components(const HirzebruchModel& m,
                                                const LagrangianLabel& l,
                                                const MorphismIndex& I) {
    MomentPolytope poly(m);
    const double twoC1 = 2.0 * m.C1, twoC2 = 2.0 * m.C2;
    std::vector<ComponentGeometry> comps;

    if (l.a == 0 && l.b == 0) {
        if (I.i1 == 0 && I.i2 == 0) {
            ComponentGeometry g;
            g.kind = GeometryKind::WholePolytope;
            g.p0 = {0.0, 0.0};
            g.p1 = {twoC1 + twoC2 * m.k, twoC2};
            comps.push_back(g);
        }
        return comps;
    }

    if (l.b == 0) {
        // Straight segments at constant s: sigma = i1/a, t free.
        if (I.i2 != 0 || l.a == 0) return comps;
        double sig = static_cast<double>(I.i1) / l.a;
        if (sig < 0.0 || sig > 1.0) return comps;
        ComponentGeometry g;
        g.kind = GeometryKind::Segment;
        if (sig == 0.0) {
            g.p0 = {0.0, 0.0};
            g.p1 = {0.0, twoC2};
            g.stratum = Stratum::E1;
        } else if (sig == 1.0) {
            g.p0 = {twoC1 + twoC2 * m.k, 0.0};
            g.p1 = {twoC1, twoC2};
            g.stratum = Stratum::E3;
        } else {
            double x1 = 0.5 * (std::log(sig) - std::log1p(-sig));
            double gam = 1.0 / (1.0 + std::exp(-2.0 * m.k * x1));
            g.p0 = {twoC1 * sig + twoC2 * m.k * gam, 0.0};
            g.p1 = {twoC1 * sig, twoC2};
            g.stratum = Stratum::Interior;
        }
        comps.push_back(g);
        return comps;
    }

    // b != 0: the second equation pins tau = i2/b in [0, 1].
    if (static_cast<long long>(I.i2) * l.b < 0 || std::abs(I.i2) > std::abs(l.b))
        return comps;
    double tau = static_cast<double>(I.i2) / l.b;
    auto scan = detail::scan_phi_roots(m.k, l.a, m.k * (l.b - I.i2), I.i1);

    auto point_comp = [&](MomentPoint p, Stratum st) {
        ComponentGeometry g;
        g.kind = GeometryKind::Point;
        g.p0 = g.p1 = clamp_to_polytope(poly, p);
        g.stratum = st;
        comps.push_back(g);
    };

    if (tau == 0.0) {
        // Solutions on the closed edge E2.
        if (scan.identical) {
            ComponentGeometry g;
            g.kind = GeometryKind::Segment;
            g.p0 = {0.0, 0.0};
            g.p1 = {twoC1 + twoC2 * m.k, 0.0};
            g.stratum = Stratum::E2;
            comps.push_back(g);
            return comps;
        }
        if (scan.root_at_minus_inf) point_comp({0.0, 0.0}, Stratum::V1);
        for (double x1 : scan.roots_x1) {
            double sig = sigma_of(x1);
            double gam = 1.0 / (1.0 + std::exp(-2.0 * m.k * x1));
            point_comp({twoC1 * sig + twoC2 * m.k * gam, 0.0}, Stratum::E2);
        }
        if (scan.root_at_plus_inf) point_comp({twoC1 + twoC2 * m.k, 0.0}, Stratum::V2);
    } else if (tau == 1.0) {
        // Solutions on the closed edge E4 (kappa vanishes there).
        if (scan.identical) {
            ComponentGeometry g;
            g.kind = GeometryKind::Segment;
            g.p0 = {0.0, twoC2};
            g.p1 = {twoC1, twoC2};
            g.stratum = Stratum::E4;
            comps.push_back(g);
            return comps;
        }
        if (scan.root_at_minus_inf) point_comp({0.0, twoC2}, Stratum::V4);
        for (double x1 : scan.roots_x1)
            point_comp({twoC1 * sigma_of(x1), twoC2}, Stratum::E4);
        if (scan.root_at_plus_inf) point_comp({twoC1, twoC2}, Stratum::V3);
    } else {
        // Interior horizontal slice q2 = 2 C2 tau.
        double q2 = twoC2 * tau;
        if (scan.identical) {
            ComponentGeometry g;
            g.kind = GeometryKind::Segment;
            g.p0 = {0.0, q2};
            g.p1 = {twoC1 + twoC2 * m.k - m.k * q2, q2};
            g.stratum = Stratum::Interior;
            comps.push_back(g);
            return comps;
        }
        if (scan.root_at_minus_inf) point_comp({0.0, q2}, Stratum::E1);
        for (double x1 : scan.roots_x1) {
            double sig = sigma_of(x1);
            double gam = 1.0 / (1.0 + std::exp(-2.0 * m.k * x1));
            point_comp({twoC1 * sig + twoC2 * m.k * (1.0 - tau) * gam, q2},
                       Stratum::Interior);
        }
        if (scan.root_at_plus_inf)
            point_comp({twoC1 + twoC2 * m.k - m.k * q2, q2}, Stratum::E3);
    }
    cluster_components(comps);
    // Deterministic order: ascending q1.
    std::sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) {
        return x.p0.q1 < y.p0.q1;
    });
    return comps;
}

DegreeResult degree_of(const HirzebruchModel& m, const LagrangianLabel& l,
                       const MorphismIndex& I, const ComponentGeometry& geom) {
    DegreeResult res;
    if (geom.kind == GeometryKind::WholePolytope) {
        res.rep = geom.representative();
        return res;  // identity: zero field, degree 0
    }

    std::vector<MomentPoint> samples;
    if (geom.kind == GeometryKind::Point) {
        samples.push_back(geom.p0);
    } else {
        for (double u : {0.5, 1.0 / 6.0, 1.0 / 3.0, 2.0 / 3.0, 5.0 / 6.0})
            samples.push_back({geom.p0.q1 + u * (geom.p1.q1 - geom.p0.q1),
                               geom.p0.q2 + u * (geom.p1.q2 - geom.p0.q2)});
    }

    Vec2 tangent{geom.p1.q1 - geom.p0.q1, geom.p1.q2 - geom.p0.q2};
    double tn = tangent.norm();
    if (tn > 0.0) tangent = {tangent.v1 / tn, tangent.v2 / tn};

    int degree = -1;
    for (size_t si = 0; si < samples.size(); ++si) {
        Mat2 J = field_jacobian(m, l, I, samples[si]);
        Eigen2 e = eigen2(J);
        double eps = 1e-7 * (std::max(std::abs(e.lambda1), std::abs(e.lambda2)) + 1.0);
        int d;
        std::vector<Vec2> stable, unstable;
        if (geom.kind == GeometryKind::Segment) {
            double a1 = std::abs(e.v1.v1 * tangent.v1 + e.v1.v2 * tangent.v2);
            double a2 = std::abs(e.v2.v1 * tangent.v1 + e.v2.v2 * tangent.v2);
            double lam_t = a1 >= a2 ? e.lambda1 : e.lambda2;
            double lam_n = a1 >= a2 ? e.lambda2 : e.lambda1;
            Vec2 v_n = a1 >= a2 ? e.v2 : e.v1;
            if (std::abs(lam_t) > eps)
                throw M1ViolationError("segment tangent eigenvalue not zero", l, I);
            if (std::abs(lam_n) <= eps)
                throw M1ViolationError("transverse eigenvalue within threshold of zero",
                                       l, I);
            d = lam_n < -eps ? 1 : 0;
            if (lam_n < -eps) stable.push_back(v_n);
            else unstable.push_back(v_n);
        } else {
            d = 0;
            for (auto [lam, v] : {std::pair{e.lambda1, e.v1}, std::pair{e.lambda2, e.v2}}) {
                if (lam < -eps) {
                    ++d;
                    stable.push_back(v);
                } else if (lam > eps) {
                    unstable.push_back(v);
                }
            }
        }
        if (si == 0) {
            degree = d;
            res.rep = samples[0];
            res.stable = stable;
            res.unstable = unstable;
        } else if (d != degree) {
            throw M1ViolationError("degree not constant along component", l, I);
        }
    }
    res.degree = degree;
    return res;
}

bool check_M2(const HirzebruchModel& m, const ComponentGeometry& geom,
              const DegreeResult& deg) {
    if (geom.kind == GeometryKind::WholePolytope) return true;
    if (deg.degree == 0) return true;  // stable manifold is the point itself
    MomentPolytope poly(m);
    if (poly.classify(deg.rep) == Stratum::Interior) return true;

    constexpr double eps = 1e-5;
    std::vector<Vec2> dirs = deg.stable;
    if (deg.stable.size() == 2) {
        const Vec2& u = deg.stable[0];
        const Vec2& v = deg.stable[1];
        double n1 = std::hypot(u.v1 + v.v1, u.v2 + v.v2);
        double n2 = std::hypot(u.v1 - v.v1, u.v2 - v.v2);
        if (n1 > 1e-12) dirs.push_back({(u.v1 + v.v1) / n1, (u.v2 + v.v2) / n1});
        if (n2 > 1e-12) dirs.push_back({(u.v1 - v.v1) / n2, (u.v2 - v.v2) / n2});
    }
    for (const Vec2& u : dirs) {
        MomentPoint plus{deg.rep.q1 + eps * u.v1, deg.rep.q2 + eps * u.v2};
        MomentPoint minus{deg.rep.q1 - eps * u.v1, deg.rep.q2 - eps * u.v2};
        if (!poly.contains(plus) || !poly.contains(minus)) return false;
    }
    return true;
}

HomSpace hom_space(const HirzebruchModel& m, const LagrangianLabel& L1,
                   const LagrangianLabel& L2) {
    HomSpace hs;
    hs.source = L1;
    hs.target = L2;
    hs.label = L2 - L1;
    const LagrangianLabel d = hs.label;

    if (d.a == 0 && d.b == 0) {
        MorphismGenerator id;
        id.source = L1;
        id.target = L2;
        id.label = d;
        id.index = {0, 0};
        id.geometry = solve_components(m, d, id.index).at(0);
        id.degree = 0;
        id.potential = normalize(m, d, id.index);
        hs.generators.push_back(id);
        return hs;
    }

    int i2_lo = std::min(0, d.b), i2_hi = std::max(0, d.b);
    int i1_lo = std::min(0, d.a) + std::min(0, m.k * d.b);
    int i1_hi = std::max(0, d.a) + std::max(0, m.k * d.b);

    for (int i2 = i2_lo; i2 <= i2_hi; ++i2) {
        for (int i1 = i1_lo; i1 <= i1_hi; ++i1) {
            MorphismIndex I{i1, i2};
            for (const auto& comp : solve_components(m, d, I)) {
                DegreeResult deg = degree_of(m, d, I, comp);
                if (check_M2(m, comp, deg)) {
                    MorphismGenerator g;
                    g.source = L1;
                    g.target = L2;
                    g.label = d;
                    g.index = I;
                    g.geometry = comp;
                    g.degree = deg.degree;
                    g.potential = normalize(m, d, I);
                    hs.generators.push_back(g);
                } else {
                    MomentPolytope poly(m);
                    bool vert = is_vertex(poly.classify(comp.representative()));
                    hs.rejected.push_back(
                        {I, comp, deg.degree, vert ? "M2 (vertex)" : "M2"});
                }
            }
        }
    }
    std::sort(hs.generators.begin(), hs.generators.end(), [](const auto& x, const auto& y) {
        if (x.degree != y.degree) return x.degree < y.degree;
        if (x.index.i2 != y.index.i2) return x.index.i2 < y.index.i2;
        if (x.index.i1 != y.index.i1) return x.index.i1 < y.index.i1;
        return x.geometry.p0.q1 < y.geometry.p0.q1;
    });
    return hs;
}

}  // namespace fk
