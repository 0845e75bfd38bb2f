#include "fk/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fk/detail/roots.hpp"

namespace fk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sigma_of(double x1) {
    if (x1 == kInf) return 1.0;
    if (x1 == -kInf) return 0.0;
    return 1.0 / (1.0 + std::exp(-2.0 * x1));
}

// Extended-real limit value encoded by a divergence coefficient:
// the function behaves like coef * u with u -> +infinity.
double diverge(double coef) {
    if (coef > 0) return kInf;
    if (coef < 0) return -kInf;
    return 0.0;
}

}  // namespace

Vec2 section_map(const HirzebruchModel& m, const LagrangianLabel& l, const BasePoint& p) {
    double sig = sigma_of(p.x1);
    double lse = log1p_exp2(2.0 * m.k * p.x1, 2.0 * p.x2);
    double kap = lse == kInf ? (2.0 * m.k * p.x1 > 2.0 * p.x2 ? 1.0 : 0.0)
                             : std::exp(2.0 * m.k * p.x1 - lse);
    double tau = lse == kInf ? 1.0 - kap : std::exp(2.0 * p.x2 - lse);
    return {kTwoPi * (l.a * sig + l.b * m.k * kap), kTwoPi * (l.b * tau)};
}

double potential(const HirzebruchModel& m, const LagrangianLabel& l, const BasePoint& p) {
    return std::numbers::pi *
           (l.a * log1p_exp(2.0 * p.x1) + l.b * log1p_exp2(2.0 * m.k * p.x1, 2.0 * p.x2));
}

double f_raw(const HirzebruchModel& m, const LagrangianLabel& l, const MorphismIndex& I,
             const BasePoint& p) {
    return 0.5 * l.a * log1p_exp(2.0 * p.x1) +
           0.5 * l.b * log1p_exp2(2.0 * m.k * p.x1, 2.0 * p.x2) - I.i1 * p.x1 - I.i2 * p.x2;
}

int edge_divergence(const HirzebruchModel& m, const LagrangianLabel& l,
                    const MorphismIndex& I, Stratum edge) {
    switch (edge) {
        case Stratum::E1: return I.i1;
        case Stratum::E2: return I.i2;
        case Stratum::E3: return l.a + m.k * (l.b - I.i2) - I.i1;
        case Stratum::E4: return l.b - I.i2;
        default: throw std::invalid_argument("edge_divergence: not an edge");
    }
}

double f_value(const HirzebruchModel& m, const LagrangianLabel& l, const MorphismIndex& I,
               const MomentPoint& X, double tol) {
    MomentPolytope poly(m);
    Stratum st = poly.classify(X, tol);
    auto edge_coef = [&](Stratum e) { return edge_divergence(m, l, I, e); };
    auto vertex_value = [&](Stratum ea, Stratum eb) {
        int ca = edge_coef(ea), cb = edge_coef(eb);
        if (ca < 0 || cb < 0) return -kInf;
        if (ca > 0 || cb > 0) return kInf;
        return 0.0;
    };
    switch (st) {
        case Stratum::V1: return vertex_value(Stratum::E1, Stratum::E2);
        case Stratum::V2: return vertex_value(Stratum::E2, Stratum::E3);
        case Stratum::V3: return vertex_value(Stratum::E3, Stratum::E4);
        case Stratum::V4: return vertex_value(Stratum::E4, Stratum::E1);
        case Stratum::E1: {
            int c = edge_coef(Stratum::E1);
            if (c != 0) return diverge(c);
            Fractions fr = fractions_at(m, X, tol);
            return 0.5 * l.b * log1p_exp(2.0 * fr.x2) - I.i2 * fr.x2;
        }
        case Stratum::E2: {
            int c = edge_coef(Stratum::E2);
            if (c != 0) return diverge(c);
            Fractions fr = fractions_at(m, X, tol);
            return 0.5 * l.a * log1p_exp(2.0 * fr.x1) +
                   0.5 * l.b * log1p_exp(2.0 * m.k * fr.x1) - I.i1 * fr.x1;
        }
        case Stratum::E3: {
            int c = edge_coef(Stratum::E3);
            if (c != 0) return diverge(c);
            // rho = t/s^k = q2 / (2 C2 - q2); w = (log rho)/2
            double rho = X.q2 / (2.0 * m.C2 - X.q2);
            double w = 0.5 * std::log(rho);
            return 0.5 * l.b * log1p_exp(2.0 * w) - I.i2 * w;
        }
        case Stratum::E4: {
            int c = edge_coef(Stratum::E4);
            if (c != 0) return diverge(c);
            Fractions fr = fractions_at(m, X, tol);
            return 0.5 * l.a * log1p_exp(2.0 * fr.x1) - I.i1 * fr.x1;
        }
        case Stratum::Interior: {
            Fractions fr = fractions_at(m, X, tol);
            return f_raw(m, l, I, {fr.x1, fr.x2});
        }
    }
    return 0.0;
}

Vec2 gradient_field(const HirzebruchModel& m, const LagrangianLabel& l,
                    const MorphismIndex& I, const MomentPoint& X) {
    Fractions fr = fractions_at(m, X);
    return {kTwoPi * (l.a * fr.sigma + l.b * m.k * fr.kappa - I.i1),
            kTwoPi * (l.b * fr.tau - I.i2)};
}

Mat2 field_jacobian(const HirzebruchModel& m, const LagrangianLabel& l,
                    const MorphismIndex& I, const MomentPoint& X, double h) {
    MomentPolytope poly(m);
    auto F = [&](double q1, double q2) { return gradient_field(m, l, I, {q1, q2}); };
    // Per-direction stencil: central when both neighbors are inside,
    // second-order one-sided into P otherwise.
    auto column = [&](int dir) {
        double d1 = dir == 0 ? h : 0.0, d2 = dir == 0 ? 0.0 : h;
        MomentPoint plus{X.q1 + d1, X.q2 + d2}, minus{X.q1 - d1, X.q2 - d2};
        bool pin = poly.contains(plus, 0.0), min_in = poly.contains(minus, 0.0);
        Vec2 g;
        if (pin && min_in) {
            Vec2 fp = F(plus.q1, plus.q2), fm = F(minus.q1, minus.q2);
            g = {(fp.v1 - fm.v1) / (2.0 * h), (fp.v2 - fm.v2) / (2.0 * h)};
        } else {
            double sgn = pin ? 1.0 : -1.0;
            Vec2 f0 = F(X.q1, X.q2);
            Vec2 f1 = F(X.q1 + sgn * d1, X.q2 + sgn * d2);
            Vec2 f2 = F(X.q1 + 2.0 * sgn * d1, X.q2 + 2.0 * sgn * d2);
            g = {sgn * (-3.0 * f0.v1 + 4.0 * f1.v1 - f2.v1) / (2.0 * h),
                 sgn * (-3.0 * f0.v2 + 4.0 * f1.v2 - f2.v2) / (2.0 * h)};
        }
        return g;
    };
    Vec2 c1 = column(0);
    // The q2 column: near V2/V3 neither axis-aligned q2 step stays in P
    // (E3 is slanted), so differentiate along E3 and correct with c1.
    Vec2 c2;
    bool q2_plus = poly.contains({X.q1, X.q2 + h}, 0.0) &&
                   poly.contains({X.q1, X.q2 + 2.0 * h}, 0.0);
    bool q2_minus = poly.contains({X.q1, X.q2 - h}, 0.0) &&
                    poly.contains({X.q1, X.q2 - 2.0 * h}, 0.0);
    if (q2_plus || q2_minus) {
        c2 = column(1);
    } else {
        double kk = m.k;
        // d = (-k, 1) h (up E3) if available, else (k, -1) h (down E3)
        double sgn = poly.contains({X.q1 - 2.0 * h * kk, X.q2 + 2.0 * h}, 0.0) ? 1.0 : -1.0;
        Vec2 f0 = F(X.q1, X.q2);
        Vec2 f1 = F(X.q1 - sgn * h * kk, X.q2 + sgn * h);
        Vec2 f2 = F(X.q1 - 2.0 * sgn * h * kk, X.q2 + 2.0 * sgn * h);
        // directional derivative along (-k, 1), per unit q2
        Vec2 Dd{sgn * (-3.0 * f0.v1 + 4.0 * f1.v1 - f2.v1) / (2.0 * h),
                sgn * (-3.0 * f0.v2 + 4.0 * f1.v2 - f2.v2) / (2.0 * h)};
        c2 = {Dd.v1 + kk * c1.v1, Dd.v2 + kk * c1.v2};
    }
    return {c1.v1, c2.v1, c1.v2, c2.v2};
}

Eigen2 eigen2(const Mat2& J) {
    Eigen2 e;
    double tr = J.trace(), det = J.det();
    double disc = tr * tr - 4.0 * det;
    disc = disc < 0.0 ? 0.0 : disc;  // roundoff guard; spectra are real here
    double r = std::sqrt(disc);
    e.lambda1 = 0.5 * (tr - r);
    e.lambda2 = 0.5 * (tr + r);
    auto eigvec = [&](double lam) {
        // rows of (J - lam I) are orthogonal to the eigenvector
        double r1n = std::hypot(J.a - lam, J.b), r2n = std::hypot(J.c, J.d - lam);
        Vec2 v;
        if (r1n >= r2n && r1n > 1e-300) v = {-J.b / r1n, (J.a - lam) / r1n};
        else if (r2n > 1e-300) v = {-(J.d - lam) / r2n, J.c / r2n};
        else v = {1.0, 0.0};
        return v;
    };
    e.v1 = eigvec(e.lambda1);
    e.v2 = eigvec(e.lambda2);
    if (std::abs(e.lambda1 - e.lambda2) < 1e-12 * (std::abs(e.lambda1) + 1.0)) {
        e.v1 = {1.0, 0.0};
        e.v2 = {0.0, 1.0};
    }
    return e;
}

namespace {

struct Candidate {
    MomentPoint p;
    double value;
};

}  // namespace

PotentialData normalize(const HirzebruchModel& m, const LagrangianLabel& l,
                        const MorphismIndex& I) {
    PotentialData out;
    out.label = l;
    out.index = I;

    const double twoC1 = 2.0 * m.C1, twoC2 = 2.0 * m.C2;

    // Identity datum: f identically zero, minimum locus the whole polytope.
    if (l.a == 0 && l.b == 0 && I.i1 == 0 && I.i2 == 0) {
        out.offset = 0.0;
        out.minimum_locus.push_back({{0, 0}, {0, 0}, true, false});
        return out;
    }

    int cE1 = edge_divergence(m, l, I, Stratum::E1);
    int cE2 = edge_divergence(m, l, I, Stratum::E2);
    int cE3 = edge_divergence(m, l, I, Stratum::E3);
    int cE4 = edge_divergence(m, l, I, Stratum::E4);
    if (cE1 < 0 || cE2 < 0 || cE3 < 0 || cE4 < 0) {
        out.bounded_below = false;
        out.offset = 0.0;
        return out;
    }

    std::vector<Candidate> cands;
    std::vector<MinimumLocusPart> segment_cands;  // constant loci, value tagged
    std::vector<double> segment_vals;

    auto vertex = [&](Stratum v, MomentPoint p) {
        double val = f_value(m, l, I, p);
        if (std::isfinite(val)) cands.push_back({p, val});
        (void)v;
    };
    auto verts = MomentPolytope(m).vertices();
    vertex(Stratum::V1, verts[0]);
    vertex(Stratum::V2, verts[1]);
    vertex(Stratum::V3, verts[2]);
    vertex(Stratum::V4, verts[3]);

    // Interior critical points: zeros of the gradient field.
    if (l.b == 0) {
        if (I.i2 == 0 && l.a != 0) {
            double sig = static_cast<double>(I.i1) / l.a;
            if (sig > 0.0 && sig < 1.0) {
                // vertical critical segment at constant s
                double x1 = 0.5 * (std::log(sig) - std::log1p(-sig));
                double gam = 1.0 / (1.0 + std::exp(-2.0 * m.k * x1));
                MomentPoint bot{twoC1 * sig + twoC2 * m.k * gam, 0.0};
                MomentPoint top{twoC1 * sig, twoC2};
                double val = f_value(m, l, I, {0.5 * (bot.q1 + top.q1), m.C2});
                segment_cands.push_back({bot, top, false, true});
                segment_vals.push_back(val);
            }
        }
    } else if (I.i2 * l.b > 0 && std::abs(I.i2) < std::abs(l.b)) {
        double tau = static_cast<double>(I.i2) / l.b;
        auto scan = detail::scan_phi_roots(m.k, l.a, m.k * (l.b - I.i2), I.i1);
        for (double x1 : scan.roots_x1) {
            double sig = sigma_of(x1);
            double gam = 1.0 / (1.0 + std::exp(-2.0 * m.k * x1));
            MomentPoint p{twoC1 * sig + twoC2 * m.k * (1.0 - tau) * gam, twoC2 * tau};
            cands.push_back({p, f_value(m, l, I, p)});
        }
    }

    // Edge-restricted critical points (finite restriction only when the
    // divergence coefficient vanishes).
    if (cE2 == 0) {
        auto scan = detail::scan_phi_roots(m.k, l.a, m.k * static_cast<double>(l.b), I.i1);
        if (scan.identical) {
            MomentPoint p0{0.0, 0.0}, p1{twoC1 + twoC2 * m.k, 0.0};
            segment_cands.push_back({p0, p1, false, true});
            segment_vals.push_back(f_value(m, l, I, {0.5 * p1.q1, 0.0}));
        }
        for (double x1 : scan.roots_x1) {
            double sig = sigma_of(x1);
            double gam = 1.0 / (1.0 + std::exp(-2.0 * m.k * x1));
            MomentPoint p{twoC1 * sig + twoC2 * m.k * gam, 0.0};
            cands.push_back({p, f_value(m, l, I, p)});
        }
    }
    if (cE1 == 0) {
        if (l.b == 0) {
            if (I.i2 == 0) {  // f constant 0 on E1
                segment_cands.push_back({{0.0, 0.0}, {0.0, twoC2}, false, true});
                segment_vals.push_back(0.0);
            }
        } else if (I.i2 * l.b > 0 && std::abs(I.i2) < std::abs(l.b)) {
            MomentPoint p{0.0, twoC2 * I.i2 / static_cast<double>(l.b)};
            cands.push_back({p, f_value(m, l, I, p)});
        }
    }
    if (cE4 == 0) {
        if (l.a == 0) {
            if (I.i1 == 0) {  // f constant 0 on E4
                segment_cands.push_back({{0.0, twoC2}, {twoC1, twoC2}, false, true});
                segment_vals.push_back(0.0);
            }
        } else {
            double sig = static_cast<double>(I.i1) / l.a;
            if (sig > 0.0 && sig < 1.0) {
                MomentPoint p{twoC1 * sig, twoC2};
                cands.push_back({p, f_value(m, l, I, p)});
            }
        }
    }
    if (cE3 == 0) {
        if (l.b == 0) {
            if (I.i2 == 0) {
                segment_cands.push_back({{twoC1 + twoC2 * m.k, 0.0}, {twoC1, twoC2}, false, true});
                segment_vals.push_back(0.0);
            }
        } else if (I.i2 * l.b > 0 && std::abs(I.i2) < std::abs(l.b)) {
            double q2 = twoC2 * I.i2 / static_cast<double>(l.b);
            MomentPoint p{twoC1 + twoC2 * m.k - m.k * q2, q2};
            cands.push_back({p, f_value(m, l, I, p)});
        }
    }

    double best = kInf;
    for (const auto& c : cands) best = std::min(best, c.value);
    for (double v : segment_vals) best = std::min(best, v);
    out.offset = best;

    constexpr double kLocusTol = 1e-8;
    for (size_t i = 0; i < segment_cands.size(); ++i)
        if (segment_vals[i] <= best + kLocusTol) out.minimum_locus.push_back(segment_cands[i]);
    for (const auto& c : cands)
        if (c.value <= best + kLocusTol)
            out.minimum_locus.push_back({c.p, c.p, false, false});
    return out;
}

}  // namespace fk
