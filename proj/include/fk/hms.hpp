#pragma once

#include <array>
#include <string>
#include <vector>

#include "fk/ainfinity.hpp"

// Sheaf-side oracle (lattice section bases, product structure constants)
// and the end-to-end verification sweeps comparing it against the Morse
// category on the exceptional collections E_c.

namespace fk {

// Lattice basis of H^0(O(a,b)) on F_k:
//   {(i1, i2) : 0 <= i2 <= b, 0 <= i1 <= a + k(b - i2)}.
// Empty when infeasible; covers a = -1, b = 1 (k sections) uniformly.
std::vector<MorphismIndex> sheaf_basis(const HirzebruchModel& m, int a, int b);

// e^{-(f_I(v) + f_J(v))} at the minimizer v of the summed normalized
// potentials over P (base-coordinate grid + boundary scan + pattern
// refinement).  Independent of the trajectory machinery.
double product_coefficient(const HirzebruchModel& m, const LagrangianLabel& l1,
                           const MorphismIndex& I, const LagrangianLabel& l2,
                           const MorphismIndex& J);

struct ExceptionalCollection {
    int c = 0;
    std::array<LagrangianLabel, 4> members;

    explicit ExceptionalCollection(int c_) : c(c_) {
        if (c < 0) throw std::invalid_argument("ExceptionalCollection: c must be >= 0");
        members = {LagrangianLabel{0, 0}, LagrangianLabel{1, 0}, LagrangianLabel{c, 1},
                   LagrangianLabel{c + 1, 1}};
    }
};

struct PairDimension {
    int i = 0, j = 0;           // member positions
    LagrangianLabel diff;       // L_j - L_i
    int morse_dim = 0;          // admissible degree-0 generators
    int sheaf_dim = 0;          // |sheaf_basis(diff)|
    bool match = false;
    bool m1_zero = false;
};

struct TripleResidual {
    int i = 0, j = 0, l = 0;
    MorphismIndex I, J;
    double morse_coeff = 0.0;
    double sheaf_coeff = 0.0;
    double residual = 0.0;
};

struct VerificationReport {
    int k = 0, c = 0;
    double tolerance = 1e-8;
    bool pass = false;
    double worst_residual = 0.0;
    std::vector<PairDimension> pairs;      // all 16 ordered pairs
    std::vector<TripleResidual> triples;   // every composable generator pair
    std::vector<std::string> failures;
};

VerificationReport verify_hms(const HirzebruchModel& m, int c, double tol = 1e-8);

struct NonminimalityReport {
    LagrangianLabel label{-7, 3};
    MorphismIndex index{0, 0};
    std::vector<ComponentGeometry> components;  // ascending q1
    std::vector<int> degrees;                   // per component
    std::vector<bool> admissible;
    double area = 0.0;              // traced m1 area
    double area_closed_form = 0.0;  // 3 pi log((12+6sqrt2)/(12-6sqrt2)) - 7 pi log((4+sqrt2)/(4-sqrt2))
    double coefficient = 0.0;       // e^{-area}
    bool pass = false;              // relative agreement < 1e-9
};

// The k = 2 example with a non-trivial differential: three components at
// I = (0,0), one inadmissible vertex, and m1 V0 -> V1 with a closed-form
// area.
NonminimalityReport nonminimality_demo(const HirzebruchModel& m);

}  // namespace fk
