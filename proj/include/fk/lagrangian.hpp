#pragma once

#include <vector>

#include "fk/geometry.hpp"

// Mirror Lagrangian sections L(a,b), their potentials, the per-index
// potential f_I with its normalization, and the associated gradient
// vector field in moment coordinates.

namespace fk {

struct LagrangianLabel {
    int a = 0;
    int b = 0;
    friend bool operator==(const LagrangianLabel&, const LagrangianLabel&) = default;
    LagrangianLabel operator-(const LagrangianLabel& o) const { return {a - o.a, b - o.b}; }
    LagrangianLabel operator+(const LagrangianLabel& o) const { return {a + o.a, b + o.b}; }
    LagrangianLabel operator-() const { return {-a, -b}; }
};

struct MorphismIndex {
    int i1 = 0;
    int i2 = 0;
    friend bool operator==(const MorphismIndex&, const MorphismIndex&) = default;
    MorphismIndex operator+(const MorphismIndex& o) const { return {i1 + o.i1, i2 + o.i2}; }
    MorphismIndex operator-() const { return {-i1, -i2}; }
};

// Section map: the dy-coefficients (y^1, y^2) of L(a,b) at a base point.
Vec2 section_map(const HirzebruchModel& m, const LagrangianLabel& l, const BasePoint& p);

// Potential of L(a,b): pi a log(1+s) + pi b log(1+s^k+t).
double potential(const HirzebruchModel& m, const LagrangianLabel& l, const BasePoint& p);

// Per-index potential without the normalization constant:
//   (a/2) log(1+s) + (b/2) log(1+s^k+t) - i1 x1 - i2 x2.
double f_raw(const HirzebruchModel& m, const LagrangianLabel& l, const MorphismIndex& I,
             const BasePoint& p);

// f_raw extended to the closed polytope as an extended real (+-inf on
// strata where it diverges).  Closed forms on every boundary stratum.
double f_value(const HirzebruchModel& m, const LagrangianLabel& l, const MorphismIndex& I,
               const MomentPoint& X, double tol = kBoundaryTol);

// Divergence coefficients of f toward each facet: f tends to
// sign(coef) * infinity; finite restriction iff coef == 0.
//   E1: i1,  E2: i2,  E3: a + k(b - i2) - i1,  E4: b - i2.
int edge_divergence(const HirzebruchModel& m, const LagrangianLabel& l,
                    const MorphismIndex& I, Stratum edge);

// One point of the minimum locus together with the locus kind.
struct MinimumLocusPart {
    MomentPoint p0, p1;          // p0 == p1 for isolated points
    bool whole_polytope = false;  // identity morphism only
    bool segment = false;
};

struct PotentialData {
    LagrangianLabel label;
    MorphismIndex index;
    double offset = 0.0;        // min over P of f_raw; f_I = f_raw - offset
    bool bounded_below = true;  // false => offset meaningless, left at 0
    std::vector<MinimumLocusPart> minimum_locus;

    // Normalized potential, min over P equal to 0 when bounded.
    double f(const HirzebruchModel& m, const MomentPoint& X) const {
        return f_value(m, label, index, X) - offset;
    }
};

// Computes the exact minimum of f_raw over P by enumerating critical
// points on every stratum (interior, four edges, four vertices).
PotentialData normalize(const HirzebruchModel& m, const LagrangianLabel& l,
                        const MorphismIndex& I);

// Gradient field of f_I in moment-coordinate directions d/dx^i:
//   2 pi (a sigma + b k kappa - i1,  b tau - i2).
Vec2 gradient_field(const HirzebruchModel& m, const LagrangianLabel& l,
                    const MorphismIndex& I, const MomentPoint& X);

// Linearization of gradient_field by second-order finite differences in
// moment coordinates (one-sided into P at the boundary), step h = 1e-6.
Mat2 field_jacobian(const HirzebruchModel& m, const LagrangianLabel& l,
                    const MorphismIndex& I, const MomentPoint& X, double h = 1e-6);

// Real eigen decomposition of a 2x2 matrix (our Jacobians are similar to
// symmetric matrices, so eigenvalues are real up to roundoff).
struct Eigen2 {
    double lambda1 = 0.0, lambda2 = 0.0;
    Vec2 v1, v2;  // unit eigenvectors
};

Eigen2 eigen2(const Mat2& J);

}  // namespace fk
