#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

// Moment polytope, moment map, Kaehler potential and metric of the
// Hirzebruch surface F_k.  Base coordinates (x1,x2) chart the interior
// (s = e^{2 x1}, t = e^{2 x2}); moment coordinates (q1,q2) live on the
// compact trapezoid P.  Everything downstream works in moment
// coordinates so that gradient fields extend continuously to the
// boundary.

namespace fk {

struct HirzebruchModel {
    int k = 1;      // fiber twisting, k >= 1
    double C1 = 1.0;  // Kaehler constant on the CP^1 factor
    double C2 = 1.0;  // Kaehler constant on the CP^2 factor

    HirzebruchModel() = default;
    HirzebruchModel(int k_, double c1 = 1.0, double c2 = 1.0) : k(k_), C1(c1), C2(c2) {
        if (k < 1) throw std::invalid_argument("HirzebruchModel: k must be >= 1");
        if (!(C1 > 0.0) || !(C2 > 0.0))
            throw std::invalid_argument("HirzebruchModel: C1, C2 must be positive");
    }
};

struct BasePoint {
    double x1 = 0.0;  // s = e^{2 x1}
    double x2 = 0.0;  // t = e^{2 x2}
};

struct MomentPoint {
    double q1 = 0.0;
    double q2 = 0.0;
};

struct Mat2 {
    // row-major [[a,b],[c,d]]
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
};

struct Vec2 {
    double v1 = 0.0, v2 = 0.0;
    double norm() const { return std::hypot(v1, v2); }
};

enum class Stratum {
    Interior,
    E1,  // q1 = 0
    E2,  // q2 = 0
    E3,  // q1 + k q2 = 2(C1 + k C2)
    E4,  // q2 = 2 C2
    V1,  // E1 ∩ E2 = (0, 0)
    V2,  // E2 ∩ E3 = (2(C1 + k C2), 0)
    V3,  // E3 ∩ E4 = (2 C1, 2 C2)
    V4   // E4 ∩ E1 = (0, 2 C2)
};

const char* stratum_name(Stratum s);
bool is_vertex(Stratum s);
bool is_edge(Stratum s);

class NotInPolytopeError : public std::runtime_error {
public:
    explicit NotInPolytopeError(const std::string& what) : std::runtime_error(what) {}
};

// Absolute boundary tolerance in moment coordinates.
inline constexpr double kBoundaryTol = 1e-9;

struct MomentPolytope {
    int k;
    double C1, C2;

    explicit MomentPolytope(const HirzebruchModel& m) : k(m.k), C1(m.C1), C2(m.C2) {}

    std::array<MomentPoint, 4> vertices() const {
        return {MomentPoint{0.0, 0.0}, MomentPoint{2.0 * (C1 + k * C2), 0.0},
                MomentPoint{2.0 * C1, 2.0 * C2}, MomentPoint{0.0, 2.0 * C2}};
    }

    // Signed distances to the four facets, >= 0 inside.
    double slack_e1(const MomentPoint& p) const { return p.q1; }
    double slack_e2(const MomentPoint& p) const { return p.q2; }
    double slack_e3(const MomentPoint& p) const {
        return 2.0 * (C1 + k * C2) - k * p.q2 - p.q1;
    }
    double slack_e4(const MomentPoint& p) const { return 2.0 * C2 - p.q2; }

    bool contains(const MomentPoint& p, double tol = kBoundaryTol) const {
        return slack_e1(p) >= -tol && slack_e2(p) >= -tol && slack_e3(p) >= -tol &&
               slack_e4(p) >= -tol;
    }

    Stratum classify(const MomentPoint& p, double tol = kBoundaryTol) const;
};

// Moment map (q1, q2) = (dψ/dx1, dψ/dx2).  Infinite base coordinates
// are accepted and map onto the corresponding boundary limits.
MomentPoint moment_map(const HirzebruchModel& m, const BasePoint& p);

// ψ = C2 log(1 + s^k + t) + C1 log(1 + s); Hessian equals metric_inverse.
double kaehler_potential(const HirzebruchModel& m, const BasePoint& p);

// Inverse metric g^{ij} on the base (the Hessian of ψ).
Mat2 metric_inverse(const HirzebruchModel& m, const BasePoint& p);

// The fraction triple that drives every potential/gradient formula:
//   sigma = s/(1+s),  kappa = s^k/(1+s^k+t),  tau = t/(1+s^k+t).
// Defined and continuous on all of P (boundary strata via limits).
struct Fractions {
    double sigma = 0.0;
    double kappa = 0.0;
    double tau = 0.0;
    Stratum stratum = Stratum::Interior;
    // Base coordinates; +-inf on degenerate strata.
    double x1 = 0.0;
    double x2 = 0.0;
};

Fractions fractions_at(const HirzebruchModel& m, const MomentPoint& X,
                       double tol = kBoundaryTol);

// Inverse of the moment map.  Interior points get the unique finite
// preimage (residual < 1e-10); boundary points get the stratum tag with
// the surviving limiting coordinates (the dead ones are +-inf).
struct InvertResult {
    Stratum stratum = Stratum::Interior;
    BasePoint base;  // +-inf entries on boundary strata
    bool interior() const { return stratum == Stratum::Interior; }
};

InvertResult invert_moment(const HirzebruchModel& m, const MomentPoint& X,
                           double tol = kBoundaryTol);

Stratum boundary_stratum(const MomentPolytope& poly, const MomentPoint& X,
                         double tol = kBoundaryTol);

// Nearest-point style projection onto P (exact for small violations).
MomentPoint clamp_to_polytope(const MomentPolytope& poly, MomentPoint p);

// log(1 + e^a), log(1 + e^a + e^b): stable for any magnitudes.
double log1p_exp(double a);
double log1p_exp2(double a, double b);

}  // namespace fk
