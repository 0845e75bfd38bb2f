// fk-mirror: inspect the weighted Morse homotopy category Mo(P) on the
// moment polytope of the Hirzebruch surface F_k and verify it against
// the sheaf side.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fk/report.hpp"

namespace {

using namespace fk;

int write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 1;
    }
    out << content;
    if (!out) {
        std::cerr << "error: write failed for '" << path << "'\n";
        return 1;
    }
    return 0;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) std::cout << text;
    else if (write_file(out, text) != 0) throw CLI::RuntimeError(1);
}

std::string describe_point(const MomentPoint& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p.q1, p.q2);
    return buf;
}

std::string describe_geometry(const ComponentGeometry& g) {
    switch (g.kind) {
        case GeometryKind::WholePolytope: return "whole polytope";
        case GeometryKind::Point: return describe_point(g.p0);
        case GeometryKind::Segment:
            return describe_point(g.p0) + " -- " + describe_point(g.p1);
    }
    return "?";
}

// Morphism space restricted to one index; enough for flow overlays.
HomSpace hom_at_index(const HirzebruchModel& m, const LagrangianLabel& l,
                      const MorphismIndex& I) {
    HomSpace hs;
    hs.source = {0, 0};
    hs.target = l;
    hs.label = l;
    PotentialData pot = normalize(m, l, I);
    for (const auto& comp : solve_components(m, l, I)) {
        DegreeResult deg = degree_of(m, l, I, comp);
        if (check_M2(m, comp, deg)) {
            hs.generators.push_back({hs.source, hs.target, l, I, comp, deg.degree, pot});
        } else {
            hs.rejected.push_back({I, comp, deg.degree, "M2"});
        }
    }
    return hs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Weighted Morse homotopy category on the Hirzebruch moment polytope"};
    app.require_subcommand(1);

    int k = 1;
    double c1 = 1.0, c2 = 1.0, tol = 1e-8;
    std::string out, format = "table";
    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--k", k, "fiber twisting k of F_k")->check(CLI::PositiveNumber);
        cmd->add_option("--c1", c1, "Kaehler constant C1")->check(CLI::PositiveNumber);
        cmd->add_option("--c2", c2, "Kaehler constant C2")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", tol, "verification tolerance");
        cmd->add_option("--out", out, "output file (default: stdout / command default)");
        if (with_format)
            cmd->add_option("--format", format, "output format")
                ->check(CLI::IsMember({"table", "structured"}));
    };

    // polytope
    auto* cmd_polytope = app.add_subcommand("polytope", "render the moment polytope (SVG)");
    add_common(cmd_polytope, false);
    cmd_polytope->callback([&] {
        HirzebruchModel m(k, c1, c2);
        if (write_file(out.empty() ? "polytope.svg" : out, svg_polytope(m)) != 0)
            throw CLI::RuntimeError(1);
    });

    // hom
    int a = 0, b = 0;
    std::string plot;
    auto* cmd_hom = app.add_subcommand("hom", "generators of Mo(P)(L(0,0), L(a,b))");
    add_common(cmd_hom);
    cmd_hom->add_option("--a", a, "label a")->required();
    cmd_hom->add_option("--b", b, "label b")->required();
    cmd_hom->add_option("--plot", plot, "also render the generators (SVG)");
    cmd_hom->callback([&] {
        HirzebruchModel m(k, c1, c2);
        HomSpace hs = hom_space(m, {0, 0}, {a, b});
        if (!plot.empty() && write_file(plot, svg_hom(m, hs)) != 0)
            throw CLI::RuntimeError(1);
        if (format == "structured") {
            CategoryExport ex;
            ex.k = k;
            ex.C1 = c1;
            ex.C2 = c2;
            ex.add(hs);
            emit(to_text(ex), out);
            return;
        }
        std::ostringstream t;
        t << "hom L(0,0) -> L(" << a << "," << b << ")   [k=" << k << ", C1=" << c1
          << ", C2=" << c2 << "]\n";
        t << "index      degree  location                          status\n";
        char line[160];
        for (const auto& g : hs.generators) {
            std::snprintf(line, sizeof line, "(%d,%d)%*s %d       %-33s ok\n", g.index.i1,
                          g.index.i2, 0, "", g.degree, describe_geometry(g.geometry).c_str());
            t << line;
        }
        for (const auto& r : hs.rejected) {
            std::snprintf(line, sizeof line, "(%d,%d)%*s %d       %-33s rejected: %s\n",
                          r.index.i1, r.index.i2, 0, "", r.degree,
                          describe_geometry(r.geometry).c_str(), r.reason.c_str());
            t << line;
        }
        t << hs.generators.size() << " generators (" << hs.count_degree(0)
          << " of degree 0), " << hs.rejected.size() << " rejected\n";
        emit(t.str(), out);
    });

    // compose
    int a2 = 0, b2 = 0, a3 = 0, b3 = 0, i1 = 0, i2 = 0, j1 = 0, j2 = 0;
    auto* cmd_compose =
        app.add_subcommand("compose", "m2 of V_I in hom(L1,L2) with V_J in hom(L2,L3), "
                                      "L1 = L(0,0)");
    add_common(cmd_compose);
    cmd_compose->add_option("--a2", a2, "L2 label a")->required();
    cmd_compose->add_option("--b2", b2, "L2 label b")->required();
    cmd_compose->add_option("--a3", a3, "L3 label a")->required();
    cmd_compose->add_option("--b3", b3, "L3 label b")->required();
    cmd_compose->add_option("--i1", i1, "first factor index i1")->required();
    cmd_compose->add_option("--i2", i2, "first factor index i2");
    cmd_compose->add_option("--j1", j1, "second factor index i1")->required();
    cmd_compose->add_option("--j2", j2, "second factor index i2");
    cmd_compose->callback([&] {
        HirzebruchModel m(k, c1, c2);
        LagrangianLabel L1{0, 0}, L2{a2, b2}, L3{a3, b3};
        HomSpace h12 = hom_space(m, L1, L2), h23 = hom_space(m, L2, L3);
        HomSpace h13 = hom_space(m, L1, L3);
        const MorphismGenerator* V12 = h12.find({i1, i2});
        const MorphismGenerator* V23 = h23.find({j1, j2});
        if (!V12 || !V23) {
            std::cerr << "error: no such generator in the factor hom spaces\n";
            throw CLI::RuntimeError(2);
        }
        M2Result r = m2(m, *V12, *V23, h13);
        double sheaf = product_coefficient(m, V12->label, V12->index, V23->label,
                                           V23->index);
        if (format == "structured") {
            CategoryExport ex;
            ex.k = k;
            ex.C1 = c1;
            ex.C2 = c2;
            ex.add(L1, L2, L3, V12->index, V23->index, r);
            emit(to_text(ex), out);
            return;
        }
        std::ostringstream t;
        char line[200];
        std::snprintf(line, sizeof line,
                      "V(%d,%d) . V(%d,%d) = %.17g * V(%d,%d)   at z = %s\n", i1, i2, j1,
                      j2, r.coefficient, r.target_index.i1, r.target_index.i2,
                      describe_point(r.z).c_str());
        t << line;
        std::snprintf(line, sizeof line,
                      "sheaf product coefficient: %.17g   (|diff| = %.3g)\n", sheaf,
                      std::abs(sheaf - r.coefficient));
        t << line;
        emit(t.str(), out);
    });

    // verify
    int c = 0;
    auto* cmd_verify =
        app.add_subcommand("verify", "verify Mo(P) against the sheaf side on E_c");
    add_common(cmd_verify);
    cmd_verify->add_option("--c", c, "exceptional collection parameter")
        ->check(CLI::NonNegativeNumber);
    cmd_verify->callback([&] {
        HirzebruchModel m(k, c1, c2);
        VerificationReport rep = verify_hms(m, c, tol);
        if (format == "structured") {
            CategoryExport ex;
            ex.k = k;
            ex.C1 = c1;
            ex.C2 = c2;
            ex.add(rep);
            emit(to_text(ex), out);
        } else {
            std::ostringstream t;
            t << "verification of E_" << c << " on F_" << k << "  (tol " << tol << ")\n";
            t << "pair  diff       Morse  sheaf  m1=0\n";
            char line[120];
            for (const auto& p : rep.pairs) {
                std::snprintf(line, sizeof line, "%d->%d  L(%d,%d)%*s %-6d %-6d %s\n", p.i,
                              p.j, p.diff.a, p.diff.b, 0, "", p.morse_dim, p.sheaf_dim,
                              p.m1_zero ? "yes" : "NO");
                t << line;
            }
            t << rep.triples.size() << " composition checks, worst residual "
              << rep.worst_residual << "\n";
            t << (rep.pass ? "PASS" : "FAIL") << "\n";
            emit(t.str(), out);
        }
        if (!rep.pass) {
            if (!rep.failures.empty())
                std::cerr << "first failure: " << rep.failures.front() << "\n";
            throw CLI::RuntimeError(1);
        }
    });

    // flow
    auto* cmd_flow =
        app.add_subcommand("flow", "phase portrait of grad f_{(a,b);I} over P (SVG)");
    add_common(cmd_flow, false);
    cmd_flow->add_option("--a", a, "label a")->required();
    cmd_flow->add_option("--b", b, "label b")->required();
    cmd_flow->add_option("--i1", i1, "index i1");
    cmd_flow->add_option("--i2", i2, "index i2");
    cmd_flow->callback([&] {
        HirzebruchModel m(k, c1, c2);
        LagrangianLabel l{a, b};
        MorphismIndex I{i1, i2};
        std::vector<GradientTree> trees;
        if (!(l.a == 0 && l.b == 0)) {
            try {
                HomSpace hs = hom_at_index(m, l, I);
                for (const auto& e : m1(m, hs).entries)
                    for (const auto& tr : e.trees) trees.push_back(tr);
            } catch (const std::exception&) {
                // overlay only; the field itself is always drawn
            }
        }
        if (write_file(out.empty() ? "flow.svg" : out, svg_flow(m, l, I, trees)) != 0)
            throw CLI::RuntimeError(1);
    });

    // demo-nonminimal
    auto* cmd_demo = app.add_subcommand(
        "demo-nonminimal", "the F_2 hom space with a non-trivial differential");
    add_common(cmd_demo);
    cmd_demo->callback([&] {
        HirzebruchModel m(2, c1, c2);
        NonminimalityReport rep = nonminimality_demo(m);
        std::ostringstream t;
        t << "Mo(P)(L(0,0), L(-7,3)) on F_2 at I = (0,0)\n";
        for (size_t i = 0; i < rep.components.size(); ++i) {
            t << "  component " << describe_geometry(rep.components[i]) << "  degree "
              << rep.degrees[i] << (rep.admissible[i] ? "" : "  [rejected: M2]") << "\n";
        }
        char line[120];
        std::snprintf(line, sizeof line, "m1 area:      %.17g\n", rep.area);
        t << line;
        std::snprintf(line, sizeof line, "closed form:  %.17g\n", rep.area_closed_form);
        t << line;
        std::snprintf(line, sizeof line, "coefficient:  %.17g\n", rep.coefficient);
        t << line;
        t << (rep.pass ? "PASS" : "FAIL") << "\n";
        emit(t.str(), out);
        if (!rep.pass) throw CLI::RuntimeError(1);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
