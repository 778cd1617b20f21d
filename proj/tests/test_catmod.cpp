#include "doctest.h"

#include "builders.hpp"
#include "opcat/catmod.hpp"
#include "opcat/common.hpp"

using namespace opcat;
using namespace opcat_test;

namespace {

// WBU-breaking fixture: all fibers equal F, all induced maps identity, and
// f1 = f2∘psi factors in two ways inducing the same map of fibers
UnaryOpCat duplicated_completion_fixture() {
    FinCategory c;
    c.obj_names = {"S", "X1", "X2", "F"};
    c.mor.push_back({0, 0, "id_S"});
    c.mor.push_back({1, 1, "id_X1"});
    c.mor.push_back({2, 2, "id_X2"});
    c.mor.push_back({3, 3, "id_F"});
    c.mor.push_back({1, 0, "f1"});
    c.mor.push_back({2, 0, "f2"});
    c.mor.push_back({1, 2, "psi"});
    c.id_of = {0, 1, 2, 3};
    c.init_tables();
    for (int x = 0; x < 4; ++x) c.set_compose(x, x, x);
    c.set_compose(4, 1, 4);
    c.set_compose(0, 4, 4);
    c.set_compose(5, 2, 5);
    c.set_compose(0, 5, 5);
    c.set_compose(6, 1, 6);
    c.set_compose(2, 6, 6);
    c.set_compose(5, 6, 4);  // f2∘psi = f1
    UnaryOpCat o;
    o.base = c;
    o.fiber_obj.assign(c.n_mor(), 3);
    for (int leg = 0; leg < c.n_mor(); ++leg)
        for (int top = 0; top < c.n_mor(); ++top)
            if (c.composable(leg, top)) o.set_fm(top, leg, 3);  // id_F
    o.finalize();
    return o;
}

}  // namespace

TEST_CASE("chaotic module over A2 validates") {
    auto a2 = a2_cat();
    auto m = chaos({"M"}, a2);
    CHECK(validate_cat_module(a2, m).ok());
    CHECK(m.n_arr() == 2);

    SUBCASE("a mutated action entry yields a witness") {
        CatLeftModule bad = m;
        // redirect 1·(M->a) somewhere else
        bad.set_act(a2.id_of[0], m.arrow_set(0, 0)[0], m.arrow_set(0, 1)[0]);
        auto rep = validate_cat_module(a2, bad);
        CHECK_FALSE(rep.ok());
    }
}

TEST_CASE("an operadic category is an operadic module over itself") {
    for (const UnaryOpCat& o : {odot_opcat(), decollage(a2_cat()), tautological(a2_cat()).cat}) {
        auto m = self_module(o);
        CHECK(validate_operadic_module(o, m).ok());
    }
}

TEST_CASE("overmodule") {
    auto a2 = a2_cat();
    auto m = chaos({"M", "N"}, a2);
    SUBCASE("over b: objects are arrows into b") {
        auto over = overmodule(a2, m, 1);
        CHECK(over.mod.n_lobj() == 2);
        // slice over b has objects id_b and f; each module object has one
        // arrow to each slice object
        auto sl = slice(a2, 1);
        CHECK(validate_cat_module(sl.cat, over.mod).ok());
        CHECK(over.mod.n_arr() == 4);
    }
    SUBCASE("over a") {
        auto over = overmodule(a2, m, 0);
        CHECK(over.mod.n_lobj() == 2);
        CHECK(over.mod.n_arr() == 2);
        CHECK(validate_cat_module(slice(a2, 0).cat, over.mod).ok());
    }
    SUBCASE("over the terminal base the overmodule is the module itself") {
        auto t = terminal_cat();
        auto tm = chaos({"M"}, t);
        auto over = overmodule(t, tm, 0);
        CHECK(over.mod.n_lobj() == tm.n_arr());  // arrows into * = module objects
        CHECK(over.mod.n_arr() == tm.n_arr());
        CHECK(validate_cat_module(slice(t, 0).cat, over.mod).ok());
    }
    SUBCASE("empty module gives empty overmodule") {
        CatLeftModule empty;
        empty.init_tables(a2);
        auto over = overmodule(a2, empty, 1);
        CHECK(over.mod.n_lobj() == 0);
        CHECK(over.mod.n_arr() == 0);
    }
}

TEST_CASE("décollage and tautological modules") {
    auto a2 = a2_cat();
    auto b = chaos({"M"}, a2);
    DecollageTags dtags;
    auto D = decollage(a2, &dtags);
    auto dm = decollage_module(a2, b, dtags);
    CHECK(validate_operadic_module(D, dm.mod).ok());

    auto t = tautological(a2);
    auto tm = tautological_module(a2, b, t.tags);
    CHECK(validate_operadic_module(t.cat, tm.mod).ok());

    SUBCASE("décollage module of the terminal category with a one-object chaos") {
        auto term = terminal_cat();
        auto b1 = chaos({"M"}, term);
        DecollageTags dt;
        auto D1 = decollage(term, &dt);
        auto dm1 = decollage_module(term, b1, dt);
        CHECK(dm1.mod.m.n_arr() == 1);
        CHECK(validate_operadic_module(D1, dm1.mod).ok());
    }

    SUBCASE("module WBU holds on both constructions for the A2 fixture") {
        CHECK(check_wbu_mod(D, dm.mod).ok);
        CHECK(check_wbu_mod(t.cat, tm.mod).ok);
    }
}

TEST_CASE("weak blow-up") {
    SUBCASE("holds for the décollage and tautological categories of A2") {
        CHECK(check_wbu_cat(decollage(a2_cat())).ok);
        CHECK(check_wbu_cat(tautological(a2_cat()).cat).ok);
    }
    SUBCASE("completion oracle inverts reading off the induced map") {
        auto o = decollage(a2_cat());
        const auto& c = o.base;
        for (int f1 = 0; f1 < c.n_mor(); ++f1)
            for (int top = 0; top < c.n_mor(); ++top) {
                // read off a completion, then ask the oracle
                for (int f2 = 0; f2 < c.n_mor(); ++f2) {
                    if (!c.composable(f2, top) || c.compose(f2, top) != f1) continue;
                    int phi = o.fm(top, f2);
                    auto comp = wbu_complete_cat(o, f1, phi);
                    REQUIRE(comp.has_value());
                    CHECK(comp->first == top);
                    CHECK(comp->second == f2);
                }
            }
    }
    SUBCASE("a duplicated completion is detected") {
        auto o = duplicated_completion_fixture();
        REQUIRE(validate_category(o.base).ok());
        REQUIRE(validate_opcat(o).ok());
        auto w = check_wbu_cat(o);
        CHECK_FALSE(w.ok);
        bool two = false;
        for (auto& s : w.witnesses) two |= s.find("2 completions") != std::string::npos;
        CHECK(two);
        CHECK_FALSE(wbu_complete_cat(o, o.base.find_mor("f1"), o.base.find_mor("id_F")).has_value());
    }
}

TEST_CASE("rigidity and (P1)-(P2)") {
    auto odot = odot_opcat();
    SUBCASE("the one-object/one-arrow module over the point is rigid and (P1)-(P2)") {
        OperadicLeftModule m;
        m.m.lobj = {"*m"};
        m.m.arrows.push_back({0, 0, "!"});
        m.m.init_tables(odot.base);
        m.m.set_act(0, 0, 0);
        m.fiber_obj_m = {0};
        m.set_fmm(0, 0, 0);
        REQUIRE(validate_operadic_module(odot, m).ok());
        CHECK(rigid(odot, m, 0));
        auto p = p1p2(odot, m, 0);
        CHECK(p.ok);
        CHECK(p.odot == 0);
    }
    SUBCASE("the one-object/no-arrow module is neither") {
        OperadicLeftModule m;
        m.m.lobj = {"*m"};
        m.m.init_tables(odot.base);
        m.fiber_obj_m = {};
        REQUIRE(validate_operadic_module(odot, m).ok());
        CHECK_FALSE(rigid(odot, m, 0));
        CHECK_FALSE(p1p2(odot, m, 0).ok);
    }
}

TEST_CASE("identity module morphism validates") {
    auto o = decollage(a2_cat());
    auto m = self_module(o);
    OpModMorphism id;
    id.phi.f.obj_map.resize(o.base.n_obj());
    id.phi.f.mor_map.resize(o.base.n_mor());
    for (int i = 0; i < o.base.n_obj(); ++i) id.phi.f.obj_map[i] = i;
    for (int i = 0; i < o.base.n_mor(); ++i) id.phi.f.mor_map[i] = i;
    id.psi_obj = id.phi.f.obj_map;
    id.psi_arrow = id.phi.f.mor_map;
    CHECK(validate_opmod_morphism(o, m, o, m, id).ok());
}

TEST_CASE("the module of a functor validates (profunctor-style fixture generator)") {
    auto a2 = a2_cat();
    auto term = terminal_cat();
    FinFunctor f;
    f.obj_map = {1};  // * -> b
    f.mor_map = {1};
    REQUIRE(validate_functor(term, a2, f).ok());
    auto m = module_from_functor(term, a2, f);
    CHECK(validate_cat_module(a2, m).ok());
    CHECK(m.n_arr() == 1);  // arrows * -> c are A2(b, c): only id_b

    FinFunctor g;
    g.obj_map = {0};  // * -> a
    g.mor_map = {0};
    auto m2 = module_from_functor(term, a2, g);
    CHECK(validate_cat_module(a2, m2).ok());
    CHECK(m2.n_arr() == 2);  // id_a and fr
}
