// End-to-end acceptance checks.  Each criterion prints exactly one
// "pass"/"FAIL" line; the process exits nonzero if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fk/hms.hpp"
#include "fk/report.hpp"

using namespace fk;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;
int failures = 0;

void report(int num, const char* title, bool ok, double ms, const std::string& detail) {
    std::printf("[%d] %-42s %s  (%.0f ms)%s%s\n", num, title, ok ? "pass" : "FAIL", ms,
                detail.empty() ? "" : "  ", detail.c_str());
    if (!ok) ++failures;
}

void run(int num, const char* title, const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report(num, title, ok, ms, detail);
}

char buf[256];
std::string fmt(const char* f, double a, double b = 0.0) {
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

}  // namespace

int main() {
    HirzebruchModel f2(2, 1.0, 1.0);
    const double r2 = std::sqrt(2.0);
    const double closed_area =
        3.0 * kPi * std::log((12.0 + 6.0 * r2) / (12.0 - 6.0 * r2)) -
        7.0 * kPi * std::log((4.0 + r2) / (4.0 - r2));

    std::vector<ComponentGeometry> comps;

    run(1, "three intersection components on F_2", [&](std::string& detail) {
        auto t0 = Clock::now();
        comps = solve_components(f2, {-7, 3}, {0, 0});
        double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (comps.size() != 3) {
            detail = "got " + std::to_string(comps.size()) + " components";
            return false;
        }
        double want[3] = {0.0, (100.0 - 10.0 * r2) / 21.0, (100.0 + 10.0 * r2) / 21.0};
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            worst = std::max({worst, std::abs(comps[i].p0.q1 - want[i]),
                              std::abs(comps[i].p0.q2)});
        detail = fmt("worst |dq| = %.2e", worst);
        return worst < 1e-9 && ms < 1000.0;
    });

    run(2, "degrees and admissibility of the example", [&](std::string& detail) {
        if (comps.size() != 3) return false;
        DegreeResult d0 = degree_of(f2, {-7, 3}, {0, 0}, comps[0]);
        DegreeResult d1 = degree_of(f2, {-7, 3}, {0, 0}, comps[1]);
        DegreeResult d2 = degree_of(f2, {-7, 3}, {0, 0}, comps[2]);
        bool vertex_rejected = !check_M2(f2, comps[0], d0);
        bool ok = vertex_rejected && d1.degree == 0 && check_M2(f2, comps[1], d1) &&
                  d2.degree == 1 && check_M2(f2, comps[2], d2);
        detail = "degrees " + std::to_string(d0.degree) + "/" + std::to_string(d1.degree) +
                 "/" + std::to_string(d2.degree) +
                 (vertex_rejected ? ", vertex rejected" : ", vertex NOT rejected");
        return ok;
    });

    run(3, "differential coefficient on F_2", [&](std::string& detail) {
        NonminimalityReport rep = nonminimality_demo(f2);
        if (rep.components.size() != 3 || !rep.pass) {
            detail = "demo did not reproduce the closed form";
            return false;
        }
        // the traced polyline's integrated area, independently of the
        // potential-difference shortcut
        HomSpace hs;
        hs.label = {-7, 3};
        PotentialData pot = normalize(f2, {-7, 3}, {0, 0});
        for (size_t i = 1; i < 3; ++i)
            hs.generators.push_back({{0, 0}, {-7, 3}, {-7, 3}, {0, 0}, rep.components[i],
                                     rep.degrees[i], pot});
        hs.rejected.push_back({{0, 0}, rep.components[0], rep.degrees[0], "M2"});
        M1Result d = m1(f2, hs);
        if (d.entries.size() != 1 || d.entries[0].trees.size() != 1) return false;
        double traced =
            path_area_integral(f2, {-7, 3}, {0, 0}, d.entries[0].trees[0].path);
        double cerr = std::abs(rep.coefficient - std::exp(-closed_area)) /
                      std::exp(-closed_area);
        double aerr = std::abs(traced - closed_area);
        detail = fmt("coeff rel err %.1e, path-integral err %.1e", cerr, aerr);
        return cerr < 1e-9 && aerr < 1e-7;
    });

    // criteria 4-6 share one sweep over k in {1..4}, c in {0..3}
    std::vector<VerificationReport> sweep;
    double sweep_ms = 0.0;
    {
        auto t0 = Clock::now();
        for (int k = 1; k <= 4; ++k) {
            HirzebruchModel m(k, 1.0, 1.0);
            for (int c = 0; c <= 3; ++c) sweep.push_back(verify_hms(m, c));
        }
        sweep_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    run(4, "dimension match over all collections", [&](std::string& detail) {
        bool ok = sweep_ms < 60000.0;
        for (const auto& rep : sweep)
            for (const auto& p : rep.pairs) {
                ok = ok && p.match;
                if (p.i > p.j) ok = ok && p.morse_dim == 0 && p.sheaf_dim == 0;
            }
        detail = fmt("16 collections, sweep %.1f s", sweep_ms / 1000.0);
        return ok;
    });

    run(5, "composition coefficients match products", [&](std::string& detail) {
        bool ok = true;
        double worst = 0.0;
        int n = 0;
        for (const auto& rep : sweep)
            for (const auto& t : rep.triples) {
                worst = std::max(worst, t.residual);
                ok = ok && t.residual < 1e-8;
                ++n;
            }
        detail = fmt("%.0f compositions, worst residual %.1e", double(n), worst);
        return ok && n > 0;
    });

    run(6, "differential vanishes inside collections", [&](std::string& detail) {
        bool ok = true;
        for (const auto& rep : sweep)
            for (const auto& p : rep.pairs) ok = ok && p.m1_zero;
        detail = "m1 = 0 on all 256 ordered pairs";
        return ok;
    });

    run(7, "(-1,1) spaces have exactly k generators", [&](std::string& detail) {
        bool ok = true;
        for (int k : {2, 3, 4, 5}) {
            HirzebruchModel m(k, 1.0, 1.0);
            HomSpace hs = hom_space(m, {0, 0}, {-1, 1});
            ok = ok && hs.generators.size() == static_cast<size_t>(k);
            for (const auto& g : hs.generators)
                ok = ok && g.degree == 0 && g.index.i2 == 0;
            // the i2 = 1 candidates must appear as rejected vertices
            int vrej = 0;
            for (const auto& r : hs.rejected) {
                if (r.index.i2 != 1) continue;
                bool at_v3 = std::abs(r.geometry.p0.q1 - 2.0) < 1e-9 &&
                             std::abs(r.geometry.p0.q2 - 2.0) < 1e-9;
                bool at_v4 = std::abs(r.geometry.p0.q1) < 1e-9 &&
                             std::abs(r.geometry.p0.q2 - 2.0) < 1e-9;
                ok = ok && (at_v3 || at_v4) && r.reason.rfind("M2", 0) == 0;
                ++vrej;
            }
            ok = ok && vrej == 2;
        }
        detail = "k = 2,3,4,5";
        return ok;
    });

    run(8, "model-independent property suite", [&](std::string& detail) {
        bool ok = true;
        std::string why;
        std::mt19937 rng(2026);
        std::uniform_real_distribution<double> U(-3.0, 3.0);

        // gradient field vs finite differences of the raw potential
        for (int k : {1, 2, 3}) {
            HirzebruchModel m(k, 1.0, 1.0);
            std::uniform_int_distribution<int> L(-5, 5);
            for (int trial = 0; trial < 40; ++trial) {
                LagrangianLabel l{L(rng), L(rng)};
                MorphismIndex I{L(rng), L(rng)};
                BasePoint p{U(rng), U(rng)};
                const double h = 1e-5;
                double d1 = (f_raw(m, l, I, {p.x1 + h, p.x2}) -
                             f_raw(m, l, I, {p.x1 - h, p.x2})) / (2.0 * h);
                double d2 = (f_raw(m, l, I, {p.x1, p.x2 + h}) -
                             f_raw(m, l, I, {p.x1, p.x2 - h})) / (2.0 * h);
                Vec2 g = gradient_field(m, l, I, moment_map(m, p));
                if (std::abs(2.0 * kPi * d1 - g.v1) > 1e-6 ||
                    std::abs(2.0 * kPi * d2 - g.v2) > 1e-6)
                    ok = false, why = "field/d(f) mismatch";
            }
        }

        // Hessian of the Kaehler potential vs the inverse metric
        for (int k : {1, 2, 3}) {
            HirzebruchModel m(k, 1.2, 0.8);
            for (int trial = 0; trial < 30; ++trial) {
                BasePoint p{U(rng), U(rng)};
                const double h = 1e-4;
                auto psi = [&](double a, double b) {
                    return kaehler_potential(m, {p.x1 + a, p.x2 + b});
                };
                Mat2 g = metric_inverse(m, p);
                double scale = std::abs(g.a) + std::abs(g.d) + 1.0;
                double h11 = (psi(h, 0) - 2.0 * psi(0, 0) + psi(-h, 0)) / (h * h);
                double h22 = (psi(0, h) - 2.0 * psi(0, 0) + psi(0, -h)) / (h * h);
                double h12 = (psi(h, h) - psi(h, -h) - psi(-h, h) + psi(-h, -h)) /
                             (4.0 * h * h);
                if (std::abs(h11 - g.a) / scale > 1e-6 ||
                    std::abs(h12 - g.b) / scale > 1e-6 ||
                    std::abs(h22 - g.d) / scale > 1e-6)
                    ok = false, why = "Hessian/metric mismatch";
            }
        }

        // moment map round-trip
        for (int k : {1, 2, 3}) {
            HirzebruchModel m(k, 1.0, 1.0);
            for (int trial = 0; trial < 40; ++trial) {
                BasePoint p{U(rng), U(rng)};
                MomentPoint q = moment_map(m, p);
                MomentPoint q2 = moment_map(m, invert_moment(m, q).base);
                if (std::hypot(q2.q1 - q.q1, q2.q2 - q.q2) > 1e-10)
                    ok = false, why = "round-trip drift";
            }
        }

        // degree-0 zero loci: descent-polished near-zero grid points land
        // on the reported component geometry
        {
            HirzebruchModel m(2, 1.0, 1.0);
            MomentPolytope poly(m);
            for (LagrangianLabel l : {LagrangianLabel{1, 1}, LagrangianLabel{2, 0}}) {
                HomSpace hs = hom_space(m, {0, 0}, l);
                for (const auto& g : hs.generators) {
                    if (g.degree != 0) continue;
                    std::vector<ComponentGeometry> tgt{g.geometry};
                    double worst = 0.0;
                    for (int i = 0; i <= 60; ++i)
                        for (int j = 0; j <= 60; ++j) {
                            MomentPoint q =
                                clamp_to_polytope(poly, {6.0 * i / 60.0, 2.0 * j / 60.0});
                            double v = g.potential.f(m, q);
                            if (!std::isfinite(v) || v > 1e-3) continue;
                            MomentPoint x = q;
                            for (int it = 0; it < 200; ++it) {
                                Vec2 f = gradient_field(m, g.label, g.index, x);
                                double nrm = f.norm();
                                if (nrm < 1e-12) break;
                                double s = std::min(0.05, nrm) / nrm * 0.05;
                                x = clamp_to_polytope(
                                    poly, {x.q1 - s * f.v1, x.q2 - s * f.v2});
                            }
                            ComponentGeometry cg = g.geometry;
                            double d;
                            if (cg.kind == GeometryKind::Point) {
                                d = std::hypot(x.q1 - cg.p0.q1, x.q2 - cg.p0.q2);
                            } else {
                                double dx = cg.p1.q1 - cg.p0.q1, dy = cg.p1.q2 - cg.p0.q2;
                                double u = std::clamp(((x.q1 - cg.p0.q1) * dx +
                                                       (x.q2 - cg.p0.q2) * dy) /
                                                          (dx * dx + dy * dy),
                                                      0.0, 1.0);
                                d = std::hypot(x.q1 - cg.p0.q1 - u * dx,
                                               x.q2 - cg.p0.q2 - u * dy);
                            }
                            worst = std::max(worst, d);
                        }
                    if (worst > 1e-4) ok = false, why = "zero locus drift";
                }
            }
        }

        // generator combinatorics are independent of the Kaehler constants
        {
            for (LagrangianLabel l :
                 {LagrangianLabel{1, 1}, LagrangianLabel{-1, 1}, LagrangianLabel{-7, 3}}) {
                std::vector<std::pair<MorphismIndex, int>> ref;
                bool first = true;
                for (auto [c1, c2] :
                     {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 3.0}}) {
                    HirzebruchModel m(2, c1, c2);
                    HomSpace hs = hom_space(m, {0, 0}, l);
                    std::vector<std::pair<MorphismIndex, int>> cur;
                    for (const auto& g : hs.generators) cur.push_back({g.index, g.degree});
                    if (first) {
                        ref = cur;
                        first = false;
                    } else if (cur != ref) {
                        ok = false;
                        why = "Kaehler-constant dependence";
                    }
                }
            }
        }

        // index symmetry of the intersection components
        {
            HirzebruchModel m(2, 1.0, 1.0);
            struct C {
                LagrangianLabel l;
                MorphismIndex I;
            } cs[] = {{{1, 1}, {1, 0}}, {{-7, 3}, {0, 0}}, {{2, 0}, {1, 0}}};
            for (const auto& c : cs) {
                auto a = solve_components(m, c.l, c.I);
                auto b = solve_components(m, -c.l, -c.I);
                if (a.size() != b.size()) {
                    ok = false;
                    why = "index symmetry";
                    continue;
                }
                for (size_t i = 0; i < a.size(); ++i)
                    if (std::hypot(a[i].p0.q1 - b[i].p0.q1, a[i].p0.q2 - b[i].p0.q2) >
                        1e-10)
                        ok = false, why = "index symmetry";
            }
        }

        detail = ok ? "all invariants hold" : why;
        return ok;
    });

    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 8 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
