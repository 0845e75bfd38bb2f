#pragma once

#include <string>
#include <vector>

#include "fk/hms.hpp"

// Structured text export of category data (lossless round-trip, 17
// significant digits) and standalone SVG rendering of the polytope,
// generators, gradient fields and traced trees.

namespace fk {

struct ExportGenerator {
    LagrangianLabel source, target;
    MorphismIndex index;
    int degree = 0;
    GeometryKind kind = GeometryKind::Point;
    MomentPoint p0, p1;
    double offset = 0.0;       // normalization constant (min of f_raw)
    bool bounded = true;
    bool admissible = true;
    std::string reject_reason;  // empty when admissible
};

struct ExportM1 {
    LagrangianLabel source, target;
    MorphismIndex index;
    int from = 0, to = 0;
    double coefficient = 0.0;
    double area = 0.0;
};

struct ExportM2 {
    LagrangianLabel L1, L2, L3;
    MorphismIndex I, J, K;
    double coefficient = 0.0;
    MomentPoint z;
};

struct ExportVerification {
    int c = 0;
    bool pass = false;
    double worst_residual = 0.0;
    int pairs_checked = 0;
    int triples_checked = 0;
    int failures = 0;
};

struct CategoryExport {
    int k = 1;
    double C1 = 1.0, C2 = 1.0;
    std::vector<ExportGenerator> generators;
    std::vector<ExportM1> m1;
    std::vector<ExportM2> m2;
    std::vector<ExportVerification> verification;

    void add(const HomSpace& hs);
    void add(const HomSpace& hs, const M1Result& d);
    void add(const LagrangianLabel& L1, const LagrangianLabel& L2,
             const LagrangianLabel& L3, const MorphismIndex& I, const MorphismIndex& J,
             const M2Result& r);
    void add(const VerificationReport& rep);

    friend bool operator==(const CategoryExport&, const CategoryExport&);
};

bool operator==(const ExportGenerator&, const ExportGenerator&);
bool operator==(const ExportM1&, const ExportM1&);
bool operator==(const ExportM2&, const ExportM2&);
bool operator==(const ExportVerification&, const ExportVerification&);

// Deterministic, self-describing text document; see README for the
// schema.  parse_export inverts to_text exactly.
std::string to_text(const CategoryExport& ex);
CategoryExport parse_export(const std::string& text);

// Vector graphics, 80 px per moment unit.  Degree-0 generators are
// filled dots, degree-1 open dots, rejected components crosses.
std::string svg_polytope(const HirzebruchModel& m);
std::string svg_hom(const HirzebruchModel& m, const HomSpace& hs);
std::string svg_flow(const HirzebruchModel& m, const LagrangianLabel& l,
                     const MorphismIndex& I,
                     const std::vector<GradientTree>& trees = {});

}  // namespace fk
