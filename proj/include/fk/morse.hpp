#pragma once

#include <string>
#include <vector>

#include "fk/lagrangian.hpp"

// Connected components of the projected Lagrangian intersections, their
// Morse degrees (condition M1) and admissibility (condition M2), and the
// graded morphism spaces Mo(P)(L, L').

namespace fk {

enum class GeometryKind { Point, Segment, WholePolytope };

struct ComponentGeometry {
    GeometryKind kind = GeometryKind::Point;
    MomentPoint p0, p1;  // equal for points; segment endpoints otherwise
    Stratum stratum = Stratum::Interior;  // containing stratum of a generic point

    MomentPoint representative() const {
        return {0.5 * (p0.q1 + p1.q1), 0.5 * (p0.q2 + p1.q2)};
    }
};

class M1ViolationError : public std::runtime_error {
public:
    M1ViolationError(const std::string& what, LagrangianLabel l, MorphismIndex I)
        : std::runtime_error(what), label(l), index(I) {}
    LagrangianLabel label;
    MorphismIndex index;
};

// Every connected component of pi(L(0,0) ∩ L(a,b)) at index I, clipped
// to P.  Empty list when the intersection is empty.
std::vector<ComponentGeometry> solve_components(const HirzebruchModel& m,
                                                const LagrangianLabel& l,
                                                const MorphismIndex& I);

struct DegreeResult {
    int degree = 0;
    MomentPoint rep;          // the generic point used
    std::vector<Vec2> stable;  // unit stable eigendirections at rep
    std::vector<Vec2> unstable;
};

// Morse degree at a generic point: negative eigenvalues of the field
// linearization, transverse directions only for segments.  Segments are
// sampled at 5 interior points and must agree (M1 constancy).
DegreeResult degree_of(const HirzebruchModel& m, const LagrangianLabel& l,
                       const MorphismIndex& I, const ComponentGeometry& geom);

// Condition (M2): a generic point admits a full stable-manifold
// neighborhood inside P (local linear test with step 1e-5).
bool check_M2(const HirzebruchModel& m, const ComponentGeometry& geom,
              const DegreeResult& deg);

struct MorphismGenerator {
    LagrangianLabel source, target;
    LagrangianLabel label;  // target - source
    MorphismIndex index;
    ComponentGeometry geometry;
    int degree = 0;
    PotentialData potential;
};

struct RejectedCandidate {
    MorphismIndex index;
    ComponentGeometry geometry;
    int degree = 0;
    std::string reason;
};

struct HomSpace {
    LagrangianLabel source, target;
    LagrangianLabel label;  // difference label actually solved
    std::vector<MorphismGenerator> generators;
    std::vector<RejectedCandidate> rejected;

    int count_degree(int d) const {
        int n = 0;
        for (const auto& g : generators) n += g.degree == d;
        return n;
    }
    const MorphismGenerator* find(const MorphismIndex& I) const {
        for (const auto& g : generators)
            if (g.index == I) return &g;
        return nullptr;
    }
};

// Graded morphism space Mo(P)(L1, L2), reduced to the difference label.
HomSpace hom_space(const HirzebruchModel& m, const LagrangianLabel& L1,
                   const LagrangianLabel& L2);

}  // namespace fk
