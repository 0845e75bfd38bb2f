#include "fk/geometry.hpp"

#include <algorithm>
#include <limits>

namespace fk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sigma(x1) = s/(1+s) = 1/(1 + e^{-2 x1}), stable for any x1.
double sigma_of(double x1) {
    if (x1 == kInf) return 1.0;
    if (x1 == -kInf) return 0.0;
    return 1.0 / (1.0 + std::exp(-2.0 * x1));
}

// gamma(x1) = s^k/(1+s^k).
double gamma_of(double x1, int k) {
    if (x1 == kInf) return 1.0;
    if (x1 == -kInf) return 0.0;
    return 1.0 / (1.0 + std::exp(-2.0 * k * x1));
}

}  // namespace

const char* stratum_name(Stratum s) {
    switch (s) {
        case Stratum::Interior: return "interior";
        case Stratum::E1: return "E1";
        case Stratum::E2: return "E2";
        case Stratum::E3: return "E3";
        case Stratum::E4: return "E4";
        case Stratum::V1: return "V1";
        case Stratum::V2: return "V2";
        case Stratum::V3: return "V3";
        case Stratum::V4: return "V4";
    }
    return "?";
}

bool is_vertex(Stratum s) {
    return s == Stratum::V1 || s == Stratum::V2 || s == Stratum::V3 || s == Stratum::V4;
}

bool is_edge(Stratum s) {
    return s == Stratum::E1 || s == Stratum::E2 || s == Stratum::E3 || s == Stratum::E4;
}

double log1p_exp(double a) {
    if (a == -kInf) return 0.0;
    if (a == kInf) return kInf;
    if (a > 0.0) return a + std::log1p(std::exp(-a));
    return std::log1p(std::exp(a));
}

double log1p_exp2(double a, double b) {
    double m = std::max({0.0, a, b});
    if (m == kInf) return kInf;
    return m + std::log(std::exp(-m) + std::exp(a - m) + std::exp(b - m));
}

Stratum MomentPolytope::classify(const MomentPoint& p, double tol) const {
    double s1 = slack_e1(p), s2 = slack_e2(p), s3 = slack_e3(p), s4 = slack_e4(p);
    if (s1 < -tol || s2 < -tol || s3 < -tol || s4 < -tol)
        throw NotInPolytopeError("point (" + std::to_string(p.q1) + ", " +
                                 std::to_string(p.q2) + ") outside moment polytope");
    bool a1 = s1 <= tol, a2 = s2 <= tol, a3 = s3 <= tol, a4 = s4 <= tol;
    if (a1 && a2) return Stratum::V1;
    if (a2 && a3) return Stratum::V2;
    if (a3 && a4) return Stratum::V3;
    if (a4 && a1) return Stratum::V4;
    if (a1) return Stratum::E1;
    if (a2) return Stratum::E2;
    if (a3) return Stratum::E3;
    if (a4) return Stratum::E4;
    return Stratum::Interior;
}

Stratum boundary_stratum(const MomentPolytope& poly, const MomentPoint& X, double tol) {
    return poly.classify(X, tol);
}

MomentPoint clamp_to_polytope(const MomentPolytope& poly, MomentPoint p) {
    // q2 first, then q1 into its q2-dependent interval: always lands in P
    // and is the identity on P.
    p.q2 = std::clamp(p.q2, 0.0, 2.0 * poly.C2);
    p.q1 = std::clamp(p.q1, 0.0, 2.0 * (poly.C1 + poly.k * poly.C2) - poly.k * p.q2);
    return p;
}

MomentPoint moment_map(const HirzebruchModel& m, const BasePoint& p) {
    double sig = sigma_of(p.x1);
    // kappa and tau through the joint denominator 1 + s^k + t.
    double l = log1p_exp2(2.0 * m.k * p.x1, 2.0 * p.x2);  // log(1+s^k+t)
    double kap, tau;
    if (l == kInf) {
        // s^k or t dominates; split by which exponent wins.
        double ek = 2.0 * m.k * p.x1, et = 2.0 * p.x2;
        kap = ek > et ? 1.0 : (ek < et ? 0.0 : 0.5);
        tau = 1.0 - kap;
    } else {
        kap = std::exp(2.0 * m.k * p.x1 - l);
        tau = std::exp(2.0 * p.x2 - l);
    }
    return {2.0 * m.C1 * sig + 2.0 * m.C2 * m.k * kap, 2.0 * m.C2 * tau};
}

double kaehler_potential(const HirzebruchModel& m, const BasePoint& p) {
    return m.C2 * log1p_exp2(2.0 * m.k * p.x1, 2.0 * p.x2) + m.C1 * log1p_exp(2.0 * p.x1);
}

Mat2 metric_inverse(const HirzebruchModel& m, const BasePoint& p) {
    double sig = sigma_of(p.x1);
    double l = log1p_exp2(2.0 * m.k * p.x1, 2.0 * p.x2);
    double kap = l == kInf ? 0.0 : std::exp(2.0 * m.k * p.x1 - l);
    double tau = l == kInf ? 0.0 : std::exp(2.0 * p.x2 - l);
    double k = m.k;
    // 4 C1 s/(1+s)^2 = 4 C1 sigma (1-sigma); the rest in (kappa, tau).
    Mat2 g;
    g.a = 4.0 * m.C1 * sig * (1.0 - sig) + 4.0 * m.C2 * k * k * kap * (1.0 - kap);
    g.b = -4.0 * m.C2 * k * kap * tau;
    g.c = g.b;
    g.d = 4.0 * m.C2 * tau * (1.0 - tau);
    return g;
}

namespace {

// Solve 2 C1 sigma(x1) + 2 C2 k (1 - tau) gamma(x1) = target for x1.
// Strictly increasing from 0 to 2 C1 + 2 C2 k (1 - tau); bisection
// bracket then Newton polish.
double solve_x1(const HirzebruchModel& m, double tau, double target) {
    auto phi = [&](double x1) {
        return 2.0 * m.C1 * sigma_of(x1) + 2.0 * m.C2 * m.k * (1.0 - tau) * gamma_of(x1, m.k);
    };
    double lo = -40.0, hi = 40.0;
    while (phi(lo) > target && lo > -400.0) lo *= 2.0;
    while (phi(hi) < target && hi < 400.0) hi *= 2.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) < target ? lo : hi) = mid;
    }
    double x1 = 0.5 * (lo + hi);
    for (int i = 0; i < 6; ++i) {
        double sig = sigma_of(x1), gam = gamma_of(x1, m.k);
        double d = 4.0 * m.C1 * sig * (1.0 - sig) +
                   4.0 * m.C2 * m.k * m.k * (1.0 - tau) * gam * (1.0 - gam);
        if (d <= 0.0) break;
        double step = (phi(x1) - target) / d;
        if (!std::isfinite(step)) break;
        x1 -= std::clamp(step, -1.0, 1.0);
    }
    return x1;
}

}  // namespace

Fractions fractions_at(const HirzebruchModel& m, const MomentPoint& X, double tol) {
    MomentPolytope poly(m);
    Fractions f;
    f.stratum = poly.classify(X, tol);
    double twoC1 = 2.0 * m.C1, twoC2 = 2.0 * m.C2;
    switch (f.stratum) {
        case Stratum::V1: f = {0.0, 0.0, 0.0, f.stratum, -kInf, -kInf}; break;
        case Stratum::V2: f = {1.0, 1.0, 0.0, f.stratum, kInf, -kInf}; break;
        case Stratum::V3: f = {1.0, 0.0, 1.0, f.stratum, kInf, kInf}; break;
        case Stratum::V4: f = {0.0, 0.0, 1.0, f.stratum, -kInf, kInf}; break;
        case Stratum::E1: {
            // s = 0; t/(1+t) = q2/(2 C2).
            double u = X.q2 / twoC2;
            f.sigma = 0.0;
            f.kappa = 0.0;
            f.tau = u;
            f.x1 = -kInf;
            f.x2 = 0.5 * (std::log(u) - std::log1p(-u));
            break;
        }
        case Stratum::E2: {
            // t = 0; 2 C1 sigma + 2 C2 k gamma = q1.
            double x1 = solve_x1(m, 0.0, X.q1);
            f.sigma = sigma_of(x1);
            f.kappa = gamma_of(x1, m.k);
            f.tau = 0.0;
            f.x1 = x1;
            f.x2 = -kInf;
            break;
        }
        case Stratum::E3: {
            // s = infinity; kappa + tau = 1, tau = q2/(2 C2).
            f.sigma = 1.0;
            f.tau = X.q2 / twoC2;
            f.kappa = 1.0 - f.tau;
            f.x1 = kInf;
            f.x2 = kInf;
            break;
        }
        case Stratum::E4: {
            // t = infinity; sigma = q1/(2 C1).
            f.sigma = X.q1 / twoC1;
            f.kappa = 0.0;
            f.tau = 1.0;
            f.x1 = 0.5 * (std::log(f.sigma) - std::log1p(-f.sigma));
            f.x2 = kInf;
            break;
        }
        case Stratum::Interior: {
            double tau = X.q2 / twoC2;
            double x1 = solve_x1(m, tau, X.q1);
            double gam = gamma_of(x1, m.k);
            f.sigma = sigma_of(x1);
            f.kappa = (1.0 - tau) * gam;
            f.tau = tau;
            f.x1 = x1;
            // t = tau (1 + s^k) / (1 - tau)  =>  2 x2 = log tau - log(1-tau) + log(1+s^k)
            f.x2 = 0.5 * (std::log(tau) - std::log1p(-tau) + log1p_exp(2.0 * m.k * x1));
            break;
        }
    }
    return f;
}

InvertResult invert_moment(const HirzebruchModel& m, const MomentPoint& X, double tol) {
    Fractions f = fractions_at(m, X, tol);
    return {f.stratum, BasePoint{f.x1, f.x2}};
}

}  // namespace fk
