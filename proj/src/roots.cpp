#include "fk/detail/roots.hpp"

#include <algorithm>
#include <cmath>

namespace fk::detail {

namespace {

constexpr int kGridNodes = 2048;
constexpr double kX1Min = -10.3616;  // s = 1e-9
constexpr double kX1Max = 10.3616;   // s = 1e9

double frac(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double bisect(int k, double a, double m, double i1, double lo, double hi) {
    double flo = phi_eval(k, a, m, lo) - i1;
    for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = phi_eval(k, a, m, mid) - i1;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double newton_polish(int k, double a, double m, double i1, double x1) {
    for (int i = 0; i < 8; ++i) {
        double d = phi_deriv(k, a, m, x1);
        if (std::abs(d) < 1e-14) break;
        double step = (phi_eval(k, a, m, x1) - i1) / d;
        if (!std::isfinite(step)) break;
        x1 -= std::clamp(step, -0.5, 0.5);
    }
    return x1;
}

}  // namespace

double phi_eval(int k, double a, double m, double x1) {
    return a * frac(2.0 * x1) + m * frac(2.0 * k * x1);
}

double phi_deriv(int k, double a, double m, double x1) {
    double s = frac(2.0 * x1), g = frac(2.0 * k * x1);
    return 2.0 * a * s * (1.0 - s) + 2.0 * k * m * g * (1.0 - g);
}

std::vector<double> phi_extrema(int k, double a, double m) {
    std::vector<double> out;
    double prev = phi_deriv(k, a, m, kX1Min);
    double px = kX1Min;
    for (int i = 1; i <= kGridNodes; ++i) {
        double x = kX1Min + (kX1Max - kX1Min) * i / kGridNodes;
        double d = phi_deriv(k, a, m, x);
        // strict sign change only: the asymptotic tails flatten to exact
        // zeros without being extrema
        if (prev * d < 0.0) {
            double lo = px, hi = x, flo = prev;
            for (int j = 0; j < 80; ++j) {
                double mid = 0.5 * (lo + hi);
                double fm = phi_deriv(k, a, m, mid);
                if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev = d;
        px = x;
    }
    return out;
}

PhiScan scan_phi_roots(int k, double a, double m, double i1) {
    PhiScan scan;
    double maxdev = 0.0;
    std::vector<double> g(kGridNodes + 1);
    for (int i = 0; i <= kGridNodes; ++i) {
        double x = kX1Min + (kX1Max - kX1Min) * i / kGridNodes;
        g[i] = phi_eval(k, a, m, x) - i1;
        maxdev = std::max(maxdev, std::abs(g[i]));
    }
    if (maxdev < 1e-13 && i1 == 0.0 && a + m == 0.0 + i1) {
        // phi identically i1 (only possible for i1 = 0 with matching limits)
        scan.identical = true;
        return scan;
    }
    scan.root_at_minus_inf = (i1 == 0.0);
    scan.root_at_plus_inf = (a + m == static_cast<double>(i1));

    auto add_root = [&](double r) {
        for (double q : scan.roots_x1)
            if (std::abs(q - r) < 1e-10) return;
        scan.roots_x1.push_back(r);
    };

    for (int i = 0; i < kGridNodes; ++i) {
        double x0 = kX1Min + (kX1Max - kX1Min) * i / kGridNodes;
        double x1 = kX1Min + (kX1Max - kX1Min) * (i + 1) / kGridNodes;
        if (g[i] == 0.0) {
            // Exact grid hit; skip the asymptotic tails where phi has
            // numerically flattened onto its limit value.
            if (std::abs(phi_deriv(k, a, m, x0)) > 1e-12) add_root(x0);
        } else if (g[i] * g[i + 1] < 0.0) {
            double r = newton_polish(k, a, m, i1, bisect(k, a, m, i1, x0, x1));
            // roundoff sign flips in the flat tails masquerade as roots
            // when i1 equals an asymptotic value of phi
            if (std::abs(phi_deriv(k, a, m, r)) > 1e-12) add_root(r);
        }
    }
    // Tangential roots at extrema of phi.
    for (double e : phi_extrema(k, a, m)) {
        if (std::abs(phi_eval(k, a, m, e) - i1) < 1e-12) add_root(e);
    }
    std::sort(scan.roots_x1.begin(), scan.roots_x1.end());
    return scan;
}

}  // namespace fk::detail
