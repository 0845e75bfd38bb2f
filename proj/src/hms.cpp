#include "fk/hms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fk {

std::vector<MorphismIndex> sheaf_basis(const HirzebruchModel& m, int a, int b) {
    std::vector<MorphismIndex> out;
    for (int i2 = 0; i2 <= b; ++i2)
        for (int i1 = 0; i1 <= a + m.k * (b - i2); ++i1) out.push_back({i1, i2});
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isnan(v) ? kInf : v; }

}  // namespace

double product_coefficient(const HirzebruchModel& m, const LagrangianLabel& l1,
                           const MorphismIndex& I, const LagrangianLabel& l2,
                           const MorphismIndex& J) {
    MomentPolytope poly(m);
    PotentialData p1 = normalize(m, l1, I);
    PotentialData p2 = normalize(m, l2, J);

    auto h = [&](const MomentPoint& X) {
        return finite_or_inf(p1.f(m, X) + p2.f(m, X));
    };

    // Interior sweep in base coordinates (no moment-map inversion needed).
    double best = kInf;
    MomentPoint bestX{m.C1, m.C2};
    constexpr int n = 160;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            BasePoint x{-12.0 + 24.0 * i / n, -12.0 + 24.0 * j / n};
            double v = f_raw(m, l1, I, x) - p1.offset + f_raw(m, l2, J, x) - p2.offset;
            if (v < best) {
                best = v;
                bestX = moment_map(m, x);
            }
        }
    }
    // Boundary sweep (closed strata carry their own closed forms).
    auto edge_point = [&](int e, double u) -> MomentPoint {
        double q2max = 2.0 * m.C2, q1max = 2.0 * (m.C1 + m.k * m.C2);
        switch (e) {
            case 0: return {0.0, u * q2max};                                  // E1
            case 1: return {u * q1max, 0.0};                                  // E2
            case 2: return {q1max - m.k * u * q2max, u * q2max};              // E3
            default: return {u * 2.0 * m.C1, q2max};                          // E4
        }
    };
    for (int e = 0; e < 4; ++e) {
        for (int i = 0; i <= 800; ++i) {
            MomentPoint X = edge_point(e, static_cast<double>(i) / 800.0);
            double v = h(X);
            if (v < best) {
                best = v;
                bestX = X;
            }
        }
    }
    for (const MomentPoint& V : poly.vertices()) {
        double v = h(V);
        if (v < best) {
            best = v;
            bestX = V;
        }
    }

    // Compass-search refinement in moment coordinates.
    double delta = 0.05 * (m.C1 + m.k * m.C2);
    MomentPoint cur = clamp_to_polytope(poly, bestX);
    double fcur = h(cur);
    while (delta > 1e-11) {
        bool improved = false;
        const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                   {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (const auto& d : dirs) {
            MomentPoint cand = clamp_to_polytope(
                poly, {cur.q1 + delta * d[0], cur.q2 + delta * d[1]});
            double v = h(cand);
            if (v < fcur) {
                fcur = v;
                cur = cand;
                improved = true;
            }
        }
        if (!improved) delta *= 0.5;
    }
    return std::exp(-fcur);
}

VerificationReport verify_hms(const HirzebruchModel& m, int c, double tol) {
    ExceptionalCollection E(c);
    VerificationReport rep;
    rep.k = m.k;
    rep.c = c;
    rep.tolerance = tol;

    std::array<std::array<HomSpace, 4>, 4> homs;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) homs[i][j] = hom_space(m, E.members[i], E.members[j]);

    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const HomSpace& hs = homs[i][j];
            PairDimension pd;
            pd.i = i;
            pd.j = j;
            pd.diff = E.members[j] - E.members[i];
            pd.morse_dim = hs.count_degree(0);
            pd.sheaf_dim = static_cast<int>(sheaf_basis(m, pd.diff.a, pd.diff.b).size());
            pd.match = pd.morse_dim == pd.sheaf_dim &&
                       pd.morse_dim == static_cast<int>(hs.generators.size());
            if (i > j && (pd.morse_dim != 0 || pd.sheaf_dim != 0)) {
                pd.match = false;
                rep.failures.push_back("strong exceptionality fails for pair (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
            } else if (!pd.match) {
                rep.failures.push_back(
                    "dimension mismatch for pair (" + std::to_string(i) + "," +
                    std::to_string(j) + "): Morse " + std::to_string(pd.morse_dim) +
                    " (of " + std::to_string(hs.generators.size()) + ") vs sheaf " +
                    std::to_string(pd.sheaf_dim));
            }
            try {
                pd.m1_zero = m1(m, hs).zero();
            } catch (const std::exception& ex) {
                pd.m1_zero = false;
                rep.failures.push_back("m1 failed for pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + "): " + ex.what());
            }
            if (!pd.m1_zero)
                rep.failures.push_back("nonzero differential in pair (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")");
            rep.pairs.push_back(pd);
        }
    }

    const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& t : triples) {
        int i = t[0], j = t[1], l = t[2];
        for (const auto& V12 : homs[i][j].generators) {
            for (const auto& V23 : homs[j][l].generators) {
                TripleResidual tr;
                tr.i = i;
                tr.j = j;
                tr.l = l;
                tr.I = V12.index;
                tr.J = V23.index;
                try {
                    M2Result r = m2(m, V12, V23, homs[i][l]);
                    tr.morse_coeff = r.coefficient;
                    tr.sheaf_coeff = product_coefficient(m, V12.label, V12.index,
                                                         V23.label, V23.index);
                    tr.residual = std::abs(tr.morse_coeff - tr.sheaf_coeff);
                } catch (const std::exception& ex) {
                    tr.residual = kInf;
                    rep.failures.push_back("m2 failed in triple (" + std::to_string(i) + "," +
                                           std::to_string(j) + "," + std::to_string(l) +
                                           "): " + ex.what());
                }
                rep.worst_residual = std::max(rep.worst_residual, tr.residual);
                if (tr.residual > tol)
                    rep.failures.push_back(
                        "coefficient residual " + std::to_string(tr.residual) +
                        " in triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(l) + ")");
                rep.triples.push_back(tr);
            }
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

NonminimalityReport nonminimality_demo(const HirzebruchModel& m) {
    if (m.k != 2)
        throw std::invalid_argument("nonminimality_demo: the example lives on F_2");
    NonminimalityReport rep;
    const LagrangianLabel l = rep.label;
    const MorphismIndex I = rep.index;

    rep.components = solve_components(m, l, I);
    HomSpace hs;
    hs.source = {0, 0};
    hs.target = l;
    hs.label = l;
    PotentialData pot = normalize(m, l, I);
    for (const auto& comp : rep.components) {
        DegreeResult deg = degree_of(m, l, I, comp);
        bool adm = check_M2(m, comp, deg);
        rep.degrees.push_back(deg.degree);
        rep.admissible.push_back(adm);
        if (adm) {
            MorphismGenerator g;
            g.source = hs.source;
            g.target = hs.target;
            g.label = l;
            g.index = I;
            g.geometry = comp;
            g.degree = deg.degree;
            g.potential = pot;
            hs.generators.push_back(g);
        } else {
            hs.rejected.push_back({I, comp, deg.degree, "M2"});
        }
    }

    const double r2 = std::sqrt(2.0);
    rep.area_closed_form = 3.0 * M_PI * std::log((12.0 + 6.0 * r2) / (12.0 - 6.0 * r2)) -
                           7.0 * M_PI * std::log((4.0 + r2) / (4.0 - r2));

    M1Result d = m1(m, hs);
    if (!d.entries.empty()) {
        rep.area = -std::log(d.entries.front().coefficient);
        rep.coefficient = d.entries.front().coefficient;
        rep.pass = std::abs(rep.coefficient - std::exp(-rep.area_closed_form)) <=
                   1e-9 * std::exp(-rep.area_closed_form);
    }
    return rep;
}

}  // namespace fk
