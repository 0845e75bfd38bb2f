#pragma once

#include <vector>

#include "fk/geometry.hpp"

// 1-d root machinery for the intersection equation
//   phi(x1) = a s/(1+s) + m s^k/(1+s^k) = i1,   s = e^{2 x1},
// shared by the component solver and the potential normalizer.

namespace fk::detail {

struct PhiScan {
    bool identical = false;       // phi - i1 == 0 on the whole line
    bool root_at_minus_inf = false;  // s -> 0 limit solves (phi -> 0)
    bool root_at_plus_inf = false;   // s -> infinity limit (phi -> a + m)
    std::vector<double> roots_x1;    // finite roots, ascending
};

double phi_eval(int k, double a, double m, double x1);
double phi_deriv(int k, double a, double m, double x1);

// All solutions of phi = i1 over [0, infinity] in s.  Sign-change scan
// on a log-spaced grid (2048 nodes over s in [1e-9, 1e9]) with
// bisection + Newton polish, plus an extremum audit that catches
// tangential roots.
PhiScan scan_phi_roots(int k, double a, double m, double i1);

// Critical points (sign changes of phi') of phi itself, used by the audit.
std::vector<double> phi_extrema(int k, double a, double m);

}  // namespace fk::detail
