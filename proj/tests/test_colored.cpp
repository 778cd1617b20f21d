#include "doctest.h"

#include "opcat/colored.hpp"
#include "opcat/common.hpp"

using namespace opcat;

TEST_CASE("colored operad components") {
    auto sys = build_blob_system(model_loop_x2(3));
    ColoredSpaces spaces(sys);
    SUBCASE("diagonal components have rank one") {
        for (auto c : all_colors(sys)) {
            CHECK(spaces.F({c}, c).dim() == 1);
            CHECK(spaces.fhat_dim({c}, c) == 0);
        }
    }
    SUBCASE("arity-zero components are the local relation spaces") {
        Color whole{sys.whole_blob, 0, 0};
        CHECK(spaces.U(whole).dim() == 1);  // span{x·x², x²·x} in length 3
        Color small{0, 0, 0};               // the blob [1,2]
        CHECK(spaces.U(small).dim() == 0);
    }
    SUBCASE("unit law and compositions with constants") {
        CHECK(validate_colored(sys).ok());
        CHECK(validate_colored(build_blob_system(model_two_loops(3))).ok());
    }
}

TEST_CASE("differential bar: dimensions, dd = 0, zero complex without relations") {
    auto sys = build_blob_system(model_loop_x2(2));
    auto fb = differential_bar(sys, 2);  // dd = 0 and eps d1 = 0 validated inside
    SUBCASE("B0 dimension matches the punctured-blob formula") {
        ColoredSpaces spaces(sys);
        int expect = 0;
        for (auto c : all_colors(sys)) expect += spaces.M({c}).dim() * spaces.U(c).dim();
        CHECK(fb.cx.dims[0] == expect);
    }
    SUBCASE("a model with no relations gives the zero complex") {
        auto free_sys = build_blob_system(model_loop_free(3));
        auto zb = differential_bar(free_sys, 2);
        for (int n = 0; n <= 2; ++n) CHECK(zb.cx.dims[n] == 0);
    }
}

TEST_CASE("single-edge contraction reproduces the operad composition") {
    // two-vertex nesting chains [0,5] ⊃ [1,4] ⊃ [2,3] need a longer grid and
    // a length-one relation so the innermost blob carries constants
    BlobModel m;
    m.name = "two_loops_len1";
    m.N = 5;
    m.vnames = {"v"};
    m.edges.push_back({0, 0, "a"});
    m.edges.push_back({0, 0, "b"});
    BlobModel::Relation r;
    r.len = 1;
    r.src = r.tgt = 0;
    r.terms.push_back({Rat(1), {0}});
    r.terms.push_back({Rat(-1), {1}});
    m.relations.push_back(r);
    m.bl = m.br = 0;
    auto sys = build_blob_system(m, false);
    auto fb = differential_bar(sys, 2);
    REQUIRE(fb.cx.dims[2] > 0);
    bool found = false;
    for (const auto& comp : fb.comps[2]) {
        if (comp.shape.degree() != 2) continue;
        int child = comp.shape.verts[0].parent == 1 ? 0 : (comp.shape.verts[1].parent == 0 ? 1 : -1);
        if (child < 0) continue;
        found = true;
        int col = comp.offset;
        bool nonzero = false;
        for (int r = 0; r < fb.cx.dims[1]; ++r) nonzero |= fb.cx.boundary[2].at(r, col) != 0;
        CHECK(nonzero);
        break;
    }
    CHECK(found);
}

TEST_CASE("sign well-definedness: rebuilt matrices are identical") {
    auto sys = build_blob_system(model_two_loops(3));
    auto a = differential_bar(sys, 2);
    auto b = differential_bar(sys, 2);
    for (int n = 1; n <= 2; ++n) CHECK(a.cx.boundary[n] == b.cx.boundary[n]);
}

TEST_CASE("simplicial bar agrees with the operadic bar through the basis bijection") {
    for (auto model : {model_loop_x2(2), model_loop_x2(3), model_two_vertex(2), model_two_vertex(3)}) {
        auto sys = build_blob_system(model);
        auto sb = simplicial_bar(sys, 3);
        BarInput in{sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin};
        auto beta = bar_complex(in, sys.upsilon, 3);
        auto cmp = compare_beta_with_simplicial(sys, beta, sb);
        CHECK_MESSAGE(cmp.ok, cmp.why);

        auto nb_beta = normalized_bar(in, beta, sys.F_eta);
        auto nb_simp = normalize_simplicial(sb.cx, sb.s_ops);
        for (int n = 0; n <= 3; ++n) CHECK(nb_beta.cx.dims[n] == nb_simp.cx.dims[n]);
        for (int n = 1; n <= 3; ++n) {
            Matrix lhs = nb_simp.proj.level[n - 1] * cmp.beta_to_c.level[n - 1] * nb_beta.quot[n - 1].sect *
                         nb_beta.cx.boundary[n];
            Matrix rhs = nb_simp.cx.boundary[n] * nb_simp.proj.level[n] * cmp.beta_to_c.level[n] *
                         nb_beta.quot[n].sect;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("levelization is a chain map and a quasi-isomorphism at desk scale") {
    for (auto model : {model_loop_x2(2), model_loop_x2(3), model_two_vertex(3), model_two_loops(3)}) {
        auto sys = build_blob_system(model);
        auto fb = differential_bar(sys, 3);
        auto sb = simplicial_bar(sys, 3);
        auto nb = normalize_simplicial(sb.cx, sb.s_ops);
        auto phi = levelization(sys, fb, sb, nb);
        auto rep = validate_chain_map(fb.cx, nb.cx, phi);
        CHECK_MESSAGE(rep.ok(), rep.str());
        CHECK(is_quasi_iso_upto(fb.cx, nb.cx, phi, 2));
    }
}

TEST_CASE("levelization on single chains has sign +1") {
    auto sys = build_blob_system(model_loop_x2(3));
    auto fb = differential_bar(sys, 1);
    auto sb = simplicial_bar(sys, 1);
    auto nb = normalize_simplicial(sb.cx, sb.s_ops);
    auto phi = levelization(sys, fb, sb, nb);
    for (const auto& x : phi.level[1].a) CHECK((x == 0 || x == 1));
}

TEST_CASE("blob complex computes the skein module in degree zero") {
    for (auto model : {model_loop_x2(3), model_loop_free(3), model_two_vertex(2), model_two_loops(2),
                       model_two_loops(3)}) {
        auto sys = build_blob_system(model);
        auto bc = blob_complex(sys, 2);
        CHECK(betti_unaugmented(bc, 0) == skein_dim(model));
        if (model.relations.empty()) {
            ColoredSpaces spaces(sys);
            CHECK(betti_unaugmented(bc, 0) == spaces.M({}).dim());
        }
    }
}

TEST_CASE("self bar is acyclic in positive degrees for every color") {
    for (auto model : {model_loop_x2(3), model_two_vertex(2)}) {
        auto sys = build_blob_system(model);
        for (auto c : all_colors(sys)) {
            auto cx = self_bar(sys, c, 3);
            CHECK(betti_unaugmented(cx, 1) == 0);
            CHECK(betti_unaugmented(cx, 2) == 0);
        }
    }
}

TEST_CASE("ball decomposition by dimension count") {
    for (auto model : {model_loop_x2(2), model_loop_x2(3), model_two_vertex(2)}) {
        auto sys = build_blob_system(model);
        std::string why;
        CHECK_MESSAGE(ball_decomposition_check(sys, 2, &why), why);
    }
}

TEST_CASE("summary square: the composite around the diagram equals the augmentation") {
    auto sys = build_blob_system(model_loop_x2(3));
    BarInput in{sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin};
    auto beta = bar_complex(in, sys.upsilon, 2);
    auto sb = simplicial_bar(sys, 2);
    auto cmp = compare_beta_with_simplicial(sys, beta, sb);
    REQUIRE(cmp.ok);
    auto nb = normalize_simplicial(sb.cx, sb.s_ops);
    Matrix lhs = *nb.cx.eps * nb.proj.level[0] * cmp.beta_to_c.level[0];
    CHECK(lhs == *beta.cx.eps);
}

TEST_CASE("level assignments: chains are unique with sign +1, incomparable pairs shuffle") {
    SUBCASE("a two-vertex chain") {
        ForestShape s;
        s.soil = {{0, 0, 0}};
        s.soil_child = {0};
        ForestVertex a, b;
        a.out = {0, 0, 0};
        a.in = {{1, 0, 0}};
        a.parent = -1;
        a.slot = 0;
        a.child = {1};
        b.out = {1, 0, 0};
        b.in = {{2, 0, 0}};
        b.parent = 0;
        b.slot = 0;
        b.child = {-1};
        s.verts = {b, a};  // canonical: deeper first
        s.verts[1].child = {0};
        s.verts[0].parent = 1;
        auto ls = forest_level_signs(s);
        REQUIRE(ls.size() == 1);
        CHECK(ls[0].second == 1);
        // the child sits at the smaller slot
        CHECK(ls[0].first[0] < ls[0].first[1]);
    }
    SUBCASE("two incomparable vertices give two orders with opposite signs") {
        ForestShape s;
        s.soil = {{0, 0, 0}, {1, 0, 0}};
        s.soil_child = {0, 1};
        ForestVertex a, b;
        a.out = {0, 0, 0};
        a.in = {{2, 0, 0}};
        a.parent = -1;
        a.slot = 0;
        a.child = {-1};
        b.out = {1, 0, 0};
        b.in = {{3, 0, 0}};
        b.parent = -1;
        b.slot = 1;
        b.child = {-1};
        s.verts = {a, b};
        auto ls = forest_level_signs(s);
        REQUIRE(ls.size() == 2);
        CHECK(ls[0].second * ls[1].second == -1);
    }
}

namespace {

// two loops with a length-one relation on a longer grid: configurations
// with two blobs, genuinely branching forests, and unpunctured blobs
BlobModel branching_model() {
    BlobModel m;
    m.name = "branching";
    m.N = 5;
    m.vnames = {"v"};
    m.edges.push_back({0, 0, "a"});
    m.edges.push_back({0, 0, "b"});
    BlobModel::Relation r;
    r.len = 1;
    r.src = r.tgt = 0;
    r.terms.push_back({Rat(1), {0}});
    r.terms.push_back({Rat(-1), {1}});
    m.relations.push_back(r);
    m.bl = m.br = 0;
    return m;
}

}  // namespace

TEST_CASE("branching grid: the full pipeline on a model with two-blob configurations") {
    auto m = branching_model();
    CHECK(skein_dim(m) == 1);  // every word collapses to a^5
    auto sys = build_blob_system(m);
    // the field operad keeps local relations at unpunctured blobs, so the
    // composition into the constants stays inside the components
    REQUIRE(validate_lin_operad(sys.BlobC.dec_aodot, sys.Fbar).ok());
    auto lr = check_unital_fiberwise_lin(sys.BlobC.dec_aodot, sys.Fbar, sys.Fbar_eta);
    CHECK(lr.left);
    CHECK(lr.right);
    REQUIRE(validate_pmodule(sys.BlobC.dec_aodot, sys.MbarC.mod, sys.Fbar, sys.Mbar_lin).ok());

    BarInput in{sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin};
    auto beta = bar_complex(in, sys.upsilon, 2);
    CHECK(betti(beta.cx, -1) == 1);
    auto sb = simplicial_bar(sys, 2);
    auto cmp = compare_beta_with_simplicial(sys, beta, sb);
    CHECK_MESSAGE(cmp.ok, cmp.why);

    auto fb = differential_bar(sys, 3);
    CHECK(fb.cx.dims[1] > 0);
    auto nb = normalize_simplicial(sb.cx, sb.s_ops);
    // levelization needs matching depths; rebuild the simplicial side at 3
    auto sb3 = simplicial_bar(sys, 3);
    auto nb3 = normalize_simplicial(sb3.cx, sb3.s_ops);
    auto phi = levelization(sys, fb, sb3, nb3);
    auto rep = validate_chain_map(fb.cx, nb3.cx, phi);
    CHECK_MESSAGE(rep.ok(), rep.str());
    CHECK(is_quasi_iso_upto(fb.cx, nb3.cx, phi, 2));

    auto bc = blob_complex(sys, 2);
    CHECK(betti_unaugmented(bc, 0) == 1);
    std::string why;
    CHECK_MESSAGE(ball_decomposition_check(sys, 2, &why), why);

    // the completed side: contraction, weak blow-up, and the S round trip
    BarInput in_bar{sys.BlobC.dec_aodot, sys.MbarC.mod, sys.Fbar, sys.Mbar_lin};
    auto bar_c = bar_complex(in_bar, sys.upsilon_bar, 2);
    auto h = contracting_homotopy(in_bar, bar_c, sys.Fbar_eta, sys.upsilon_bar);
    std::string hw;
    CHECK_MESSAGE(verify_contraction(bar_c.cx, h, &hw), hw);
    CHECK(check_wbu_cat(sys.BlobC.cat).ok);
    CHECK(check_wbu_mod(sys.BlobC.cat, sys.MmodC.mod).ok);
    auto rt = roundtrip_operad_pseudo(sys.Blob.cat, sys.S, sys.S_units);
    CHECK_MESSAGE(rt.ok, rt.why);
}
