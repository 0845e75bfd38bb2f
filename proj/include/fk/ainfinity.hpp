#pragma once

#include <vector>

#include "fk/morse.hpp"

// Gradient trajectories and trees between generators, the differential
// m1 with coefficients e^{-A}, and the composition m2 on the
// exceptional-collection subcategory.

namespace fk {

enum class TraceStatus { Converged, Exited, BudgetExceeded };

struct GradientTree {
    std::vector<MomentPoint> path;  // polyline in moment coordinates
    double area = 0.0;              // symplectic area A
    TraceStatus status = TraceStatus::Converged;
    int arrival = -1;  // index into the target list handed to the tracer
};

class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

class NonAdjacentDegreesError : public std::runtime_error {
public:
    explicit NonAdjacentDegreesError(const std::string& what) : std::runtime_error(what) {}
};

class CompositionTypeError : public std::runtime_error {
public:
    explicit CompositionTypeError(const std::string& what) : std::runtime_error(what) {}
};

class MissingTargetError : public std::runtime_error {
public:
    explicit MissingTargetError(const std::string& what) : std::runtime_error(what) {}
};

// Integrates dX/dt = direction * gradient_field (adaptive RK4, per-step
// error < 1e-10), sliding along a facet whenever the flow is tangent to
// it.  Terminates on convergence to one of `targets` (|field| < 1e-9,
// distance < 1e-6), transversal exit from P, or step/arc budget.
GradientTree trace_trajectory(const HirzebruchModel& m, const LagrangianLabel& l,
                              const MorphismIndex& I, const MomentPoint& start,
                              const std::vector<ComponentGeometry>& targets,
                              double direction = 1.0);

// 2 pi * integral of df_I along the polyline (Simpson per segment,
// pseudo-inverse metric on boundary strata).  Equals
// 2 pi (f_I(end) - f_I(start)) by the fundamental theorem; used as an
// independent check of the area shortcut.
double path_area_integral(const HirzebruchModel& m, const LagrangianLabel& l,
                          const MorphismIndex& I, const std::vector<MomentPoint>& path);

struct M1Entry {
    int from = -1, to = -1;  // positions in hom.generators
    MorphismIndex index;     // trajectories live in a single f_I
    double coefficient = 0.0;  // sum of e^{-A} over homotopy classes
    std::vector<GradientTree> trees;
};

struct M1Result {
    std::vector<M1Entry> entries;  // only nonzero entries
    bool zero() const { return entries.empty(); }
};

// The differential: ascending trajectories between degree-d and
// degree-(d+1) components of the same f_I, found by shooting from the
// unstable eigendirections (epsilon = 1e-4, Richardson-checked at
// epsilon/2).  A = 2 pi (f_I(end) - f_I(start)).
M1Result m1(const HirzebruchModel& m, const HomSpace& hom);
M1Result m1(const HirzebruchModel& m, const LagrangianLabel& L1,
            const LagrangianLabel& L2);

// Single-pair variant; throws NonAdjacentDegreesError unless
// deg(to) == deg(from) + 1.
M1Entry m1_pair(const HirzebruchModel& m, const HomSpace& hom, int from, int to);

struct M2Result {
    double coefficient = 0.0;
    MorphismIndex target_index;
    const MorphismGenerator* target = nullptr;  // owned by `hom13`
    MomentPoint z;                              // tree endpoint
    GradientTree tree;
};

// Composition of two degree-0 generators; indices add, and the
// coefficient is e^{-(f_I(z) + f_J(z))} with normalized potentials at
// the tree endpoint z on the target component.  Identity factors pass
// through with coefficient 1.
M2Result m2(const HirzebruchModel& m, const MorphismGenerator& V12,
            const MorphismGenerator& V23, const HomSpace& hom13);
M2Result m2(const HirzebruchModel& m, const LagrangianLabel& L1,
            const LagrangianLabel& L2, const LagrangianLabel& L3,
            const MorphismGenerator& V12, const MorphismGenerator& V23);

}  // namespace fk
