#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fk/report.hpp"

using namespace fk;

namespace {

CategoryExport sample_export() {
    HirzebruchModel m(2, 1.0, 1.0);
    CategoryExport ex;
    ex.k = m.k;
    ex.C1 = m.C1;
    ex.C2 = m.C2;

    HomSpace h12 = hom_space(m, {0, 0}, {1, 0});
    HomSpace h23 = hom_space(m, {1, 0}, {1, 1});
    HomSpace h13 = hom_space(m, {0, 0}, {1, 1});
    ex.add(h12, m1(m, h12));
    ex.add(hom_space(m, {0, 0}, {-1, 1}));  // carries rejected candidates

    // a nonzero differential record with full-precision doubles
    ExportM1 d;
    d.source = {0, 0};
    d.target = {-7, 3};
    d.index = {0, 0};
    d.from = 0;
    d.to = 1;
    d.area = 0.36208713633398919;
    d.coefficient = std::exp(-d.area);
    ex.m1.push_back(d);

    M2Result r = m2(m, h12.generators.front(), h23.generators.front(), h13);
    ex.add({0, 0}, {1, 0}, {1, 1}, h12.generators.front().index,
           h23.generators.front().index, r);

    ex.add(verify_hms(m, 0));
    return ex;
}

}  // namespace

TEST_CASE("text export round-trips losslessly") {
    CategoryExport ex = sample_export();
    std::string text = to_text(ex);
    CategoryExport back = parse_export(text);
    CHECK(back == ex);
    // byte determinism through a full cycle
    CHECK(to_text(back) == text);
}

TEST_CASE("export format is self-describing") {
    CategoryExport ex = sample_export();
    std::string text = to_text(ex);
    CHECK(text.rfind("fk-category 1\n", 0) == 0);
    CHECK(text.find("\nmodel k 2 ") != std::string::npos);
    CHECK(text.find("\ngenerator src ") != std::string::npos);
    CHECK(text.find("\nm1 src ") != std::string::npos);
    CHECK(text.find("\nm2 L1 ") != std::string::npos);
    CHECK(text.find("\nverification c 0 pass 1 ") != std::string::npos);
    CHECK(text.find("\nend\n") != std::string::npos);
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS(parse_export("not-a-header\n"));
    CHECK_THROWS(parse_export("fk-category 2\nend\n"));
    CHECK_THROWS(parse_export("fk-category 1\nmodel k 2 C1 1 C2 1\n"));  // no end
    CHECK_THROWS(parse_export("fk-category 1\nbogus record\nend\n"));
}

TEST_CASE("reject reasons survive packing") {
    CategoryExport ex;
    ExportGenerator g;
    g.admissible = false;
    g.reject_reason = "M2 (vertex)";
    ex.generators.push_back(g);
    CategoryExport back = parse_export(to_text(ex));
    REQUIRE(back.generators.size() == 1);
    CHECK(back.generators[0].reject_reason == "M2 (vertex)");
}

TEST_CASE("polytope svg") {
    HirzebruchModel m(2, 1.0, 1.0);
    std::string svg = svg_polytope(m);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);
    for (const char* e : {">E1<", ">E2<", ">E3<", ">E4<"})
        CHECK(svg.find(e) != std::string::npos);
}

TEST_CASE("hom svg marks generators and rejected candidates") {
    HirzebruchModel m(2, 1.0, 1.0);
    std::string svg = svg_hom(m, hom_space(m, {0, 0}, {-1, 1}));
    CHECK(svg.find("<circle") != std::string::npos);         // degree-0 dots
    CHECK(svg.find("stroke=\"#888888\"") != std::string::npos);  // rejection crosses
}

TEST_CASE("flow svg includes the quiver and traced trees") {
    HirzebruchModel m(2, 1.0, 1.0);
    HomSpace hs = hom_space(m, {0, 0}, {2, 0});
    GradientTree t = trace_trajectory(m, {2, 0}, {1, 0}, {0.5, 1.0},
                                      {hs.generators[1].geometry}, -1.0);
    std::string svg = svg_flow(m, {2, 0}, {1, 0}, {t});
    CHECK(svg.find("<line") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
}
