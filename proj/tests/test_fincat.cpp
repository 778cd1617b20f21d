#include "doctest.h"

#include "builders.hpp"
#include "opcat/common.hpp"
#include "opcat/fincat.hpp"

using namespace opcat;
using namespace opcat_test;

TEST_CASE("terminal and A2 validate cleanly") {
    CHECK(validate_category(terminal_cat()).ok());
    CHECK(validate_category(a2_cat()).ok());
}

TEST_CASE("A2 with a redirected unit composite yields a violation") {
    FinCategory c = a2_cat();
    c.set_compose(2, 0, 1);  // f∘id_a := id_b
    auto rep = validate_category(c);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("slice of A2") {
    FinCategory c = a2_cat();
    SUBCASE("over b: two objects (id_b and f), one non-identity triangle") {
        auto s = slice(c, 1);
        CHECK(s.cat.n_obj() == 2);
        int nonid = 0;
        for (int i = 0; i < s.cat.n_mor(); ++i) {
            bool isid = false;
            for (int x = 0; x < s.cat.n_obj(); ++x) isid |= (s.cat.id_of[x] == i);
            if (!isid) ++nonid;
        }
        CHECK(nonid == 1);
        CHECK(validate_category(s.cat).ok());
        CHECK(validate_functor(s.cat, c, s.projection).ok());
    }
    SUBCASE("over a: only id_a") {
        auto s = slice(c, 0);
        CHECK(s.cat.n_obj() == 1);
        CHECK(s.cat.n_mor() == 1);
    }
    SUBCASE("slice of terminal is terminal") {
        auto s = slice(terminal_cat(), 0);
        CHECK(s.cat.n_obj() == 1);
        CHECK(s.cat.n_mor() == 1);
    }
}

TEST_CASE("slices of every valid fixture validate") {
    for (const FinCategory& c : {terminal_cat(), a2_cat()}) {
        for (int x = 0; x < c.n_obj(); ++x) {
            auto s = slice(c, x);
            CHECK(validate_category(s.cat).ok());
        }
    }
}

TEST_CASE("adjoin_terminal") {
    SUBCASE("on the empty category gives the terminal category") {
        auto c = adjoin_terminal(empty_cat());
        CHECK(c.n_obj() == 1);
        CHECK(c.n_mor() == 1);
        CHECK(validate_category(c).ok());
    }
    SUBCASE("on A2: 3 objects, morphism count old+3") {
        auto c = adjoin_terminal(a2_cat());
        CHECK(c.n_obj() == 3);
        CHECK(c.n_mor() == a2_cat().n_mor() + 3);
        CHECK(validate_category(c).ok());
    }
    SUBCASE("on terminal: 2 objects, 3 morphisms, arrows only toward the new ⊙") {
        auto c = adjoin_terminal(terminal_cat());
        CHECK(c.n_obj() == 2);
        CHECK(c.n_mor() == 3);
        CHECK(validate_category(c).ok());
    }
    SUBCASE("exactly one morphism from each object to ⊙") {
        int odot = -1;
        auto c = adjoin_terminal(a2_cat(), &odot);
        for (int x = 0; x < c.n_obj(); ++x) {
            int count = 0;
            for (auto& m : c.mor) count += (m.dom == x && m.cod == odot);
            CHECK(count == 1);
        }
    }
}

TEST_CASE("pi0 counts undirected components") {
    CHECK(pi0_count(a2_cat()) == 1);
    FinCategory d;
    d.obj_names = {"x", "y"};
    d.mor.push_back({0, 0, "id_x"});
    d.mor.push_back({1, 1, "id_y"});
    d.id_of = {0, 1};
    d.init_tables();
    d.set_compose(0, 0, 0);
    d.set_compose(1, 1, 1);
    CHECK(pi0_count(d) == 2);
}
