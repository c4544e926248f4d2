#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hfslice/models.hpp"
#include "oracles.hpp"

using namespace hfs;

TEST_CASE("unknot") {
    Complex U = unknot_model();
    CHECK(U.size() == 1);
    CHECK(width(U) == 1);
    CHECK(homology_rank(U) == 1);
    CHECK(slice_homology(U, 0) == std::map<int, int>{{0, 1}});
}

TEST_CASE("torus staircases") {
    Complex T = torus_model(1);
    std::set<std::pair<int, int>> at;
    for (auto& g : T.gens) at.insert({g.i, g.j});
    CHECK(at == std::set<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 1}});
    CHECK(torus_model(2).size() == 5);
    CHECK(width(torus_model(2)) == 5);
    for (int k = 1; k <= 5; ++k) {
        Complex Tk = torus_model(k);
        CHECK(validate(Tk).ok);
        CHECK(oracle::homology_rank(Tk) == 1);
        CHECK(width(Tk) == 2 * k + 1);
    }
    CHECK_THROWS_AS(torus_model(0), std::invalid_argument);
}

TEST_CASE("doubled trefoil model") {
    Complex D = whitehead_double_model();
    CHECK(D.size() == 15);
    CHECK(validate(D).ok);
    CHECK(oracle::d_squared_zero(D));
    CHECK(homology_rank(D) == 1);
    CHECK(width(D) == 3);
    CHECK(slice_homology(D, 1) == std::map<int, int>{{-1, 2}, {0, 2}});
    CHECK(slice_homology(D, 0) == std::map<int, int>{{-2, 4}, {-1, 3}});
    CHECK(slice_homology(D, -1) == std::map<int, int>{{-3, 2}, {-2, 2}});

    Complex T = subcomplex(D, std::vector<std::string>{"x1", "y2", "z1"});
    CHECK(validate(T).ok);
    // U-translate of the trefoil staircase with every generator lifted to i = 0
    CHECK(canonical_form(T) == canonical_form(rebase(torus_model(1))));
    CHECK(canonical_form(rebase(T)) == canonical_form(torus_model(1)));
    Complex Tsh = shift(torus_model(1), -1, -1, -2);
    CHECK(canonical_form(T) == canonical_form(Tsh));

    std::vector<std::string> rest;
    for (auto& g : D.gens)
        if (g.id != "x1" && g.id != "y2" && g.id != "z1") rest.push_back(g.id);
    CHECK(is_acyclic(subcomplex(D, rest)));
    CHECK(canonical_form(reduce(D)) == canonical_form(D));
}

TEST_CASE("expressions") {
    CHECK(parse_knot("m(T(2,5))#3*D")->text() == "m(T(2,5))#3*D");
    CHECK(normalize_mirrors(parse_knot("m(m(D)#T(2,3))"))->text() == "D#m(T(2,3))");
    CHECK(normalize_mirrors(parse_knot("m(2*D)"))->text() == "2*m(D)");
    CHECK_THROWS_AS(parse_knot("T(2,4)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_knot("T(3,5)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_knot("D#"), std::invalid_argument);
    CHECK_THROWS_AS(parse_knot("0*D"), std::invalid_argument);
    CHECK_THROWS_AS(parse_knot("Q"), std::invalid_argument);

    Complex DD = build_model("D#m(D)");
    CHECK(DD.size() == 225);
    CHECK(homology_rank(DD) == 1);
    CHECK(oracle::homology_rank(DD) == 1);
    CHECK(width(build_model("2*D")) <= 5);
    CHECK(canonical_form(build_model("m(T(2,5))")) == canonical_form(dualize(torus_model(2))));
    CHECK(canonical_form(build_model("m(D#T(2,3))")) == canonical_form(build_model("m(D)#m(T(2,3))")));
    CHECK(build_model("m(D)").label == "m(D)");
}

TEST_CASE("every expression has rank one homology") {
    for (const char* e : {"U", "T(2,3)", "m(T(2,7))", "D", "m(D)", "2*D", "T(2,3)#m(T(2,3))", "D#T(2,5)", "(D#U)#m(D)"})
        CHECK_MESSAGE(homology_rank(build_model(e)) == 1, e);
}

TEST_CASE("doubled sums stay within the width bound") {
    for (int k = 1; k <= 3; ++k) {
        Complex C = build_model(std::to_string(k) + "*D", ModelPolicy::DropAcyclic);
        CHECK(width(C) <= 2 * k + 1);
        CHECK(homology_rank(C) == 1);
    }
    CHECK(width(build_model("2*D")) <= 5);
}

TEST_CASE("drop acyclic keeps the homology") {
    Complex lit = build_model("2*D");
    Complex cut = build_model("2*D", ModelPolicy::DropAcyclic);
    CHECK(cut.size() < lit.size());
    CHECK(homology_rank(cut) == 1);
    for (int j = -2; j <= 2; ++j) CHECK(oracle::slice(reduce(cut), j).size() <= oracle::slice(reduce(lit), j).size());
}

TEST_CASE("staircase splitting") {
    auto s1 = split_staircase(1);
    CHECK(canonical_form(s1.staircase) == canonical_form(torus_model(1)));
    CHECK(s1.acyclic.empty());

    auto s2 = split_staircase(2);
    CHECK(s2.staircase.size() == 5);
    CHECK(s2.acyclic.size() == 4);
    CHECK(canonical_form(s2.staircase) == canonical_form(torus_model(2)));
    CHECK(is_acyclic(s2.acyclic));

    auto s3 = split_staircase(3);
    CHECK(s3.staircase.size() == 7);
    CHECK(s3.acyclic.size() == 20);
    CHECK(oracle::homology_rank(s3.acyclic) == 0);

    // the split is a genuine direct-sum decomposition of the tensor power
    Complex T = torus_model(1);
    Complex T3 = tensor(tensor(T, T), T);
    Complex both = direct_sum(s3.staircase, s3.acyclic);
    CHECK(validate(both).ok);
    auto census = [](const Complex& C) {
        std::multiset<std::tuple<int, int, int>> out;
        for (auto& g : C.gens) out.insert({g.gr, g.i, g.j});
        return out;
    };
    CHECK(census(both) == census(T3));
    for (int j = -4; j <= 4; ++j) CHECK(oracle::slice(both, j) == oracle::slice(T3, j));

    auto step = staircase_step(torus_model(2), 2);
    CHECK(step.acyclic.size() == 8);
    CHECK(canonical_form(step.staircase) == canonical_form(torus_model(3)));
}
