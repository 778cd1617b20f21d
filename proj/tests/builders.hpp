#pragma once

// Hand-built fixtures shared across the test suites.

#include "opcat/catmod.hpp"
#include "opcat/fincat.hpp"
#include "opcat/opcat.hpp"
#include "opcat/operad.hpp"

namespace opcat_test {

inline opcat::FinCategory terminal_cat() {
    opcat::FinCategory c;
    c.obj_names = {"*"};
    c.mor.push_back({0, 0, "id_*"});
    c.id_of = {0};
    c.init_tables();
    c.set_compose(0, 0, 0);
    return c;
}

// A2: objects a,b; one arrow f : a -> b
inline opcat::FinCategory a2_cat() {
    opcat::FinCategory c;
    c.obj_names = {"a", "b"};
    c.mor.push_back({0, 0, "id_a"});
    c.mor.push_back({1, 1, "id_b"});
    c.mor.push_back({0, 1, "f"});
    c.id_of = {0, 1};
    c.init_tables();
    c.set_compose(0, 0, 0);
    c.set_compose(1, 1, 1);
    c.set_compose(2, 0, 2);
    c.set_compose(1, 2, 2);
    return c;
}

inline opcat::FinCategory empty_cat() {
    return opcat::FinCategory{};
}

// the terminal unary unital operadic category: one object, one morphism,
// fiber of 1 is the object itself
inline opcat::UnaryOpCat odot_opcat() {
    opcat::UnaryOpCat o;
    o.base = terminal_cat();
    o.fiber_obj = {0};
    o.set_fm(0, 0, 0);
    o.terminals = std::vector<int>{0};
    o.finalize();
    return o;
}

// Z/2 as a unital monoid
inline opcat::MonoidLike m2_monoid() {
    opcat::MonoidLike a;
    a.names = {"e", "g"};
    a.mult = {0, 1, 1, 0};
    a.unit = 0;
    return a;
}

// the two-element pseudo-unital monoid: multiplication = first projection,
// pseudo-units e_t = t
inline opcat::MonoidLike pu2_monoid() {
    opcat::MonoidLike a;
    a.names = {"u", "v"};
    a.mult = {0, 0, 1, 1};
    a.pseudo_units = std::vector<int>{0, 1};
    return a;
}

// projection monoid on a 3-element set
inline opcat::MonoidLike chaotic3_monoid() {
    opcat::MonoidLike a;
    a.names = {"1", "2", "3"};
    a.mult.assign(9, 0);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) a.mult[x * 3 + y] = x;
    a.pseudo_units = std::vector<int>{0, 1, 2};
    return a;
}

// dual numbers Q[x]/(x^2) as a linear operad over the point; graded puts x
// in degree 1
inline opcat::LinOperad lambda_operad(const opcat::UnaryOpCat& odot, bool graded = false) {
    opcat::LinOperad p;
    opcat::Basis b;
    b.labels = {"1", "x"};
    if (graded) b.degree = {0, 1};
    p.carrier = {b};
    p.gamma.resize(1);
    auto v = [](int a, int c) {
        opcat::RatVec r(2);
        r[0] = a;
        r[1] = c;
        return r;
    };
    p.gamma[0] = {v(1, 0), v(0, 1), v(0, 1), v(0, 0)};
    (void)odot;
    return p;
}

// the one-object/one-arrow operadic module over the point
inline opcat::OperadicLeftModule star_module(const opcat::UnaryOpCat& odot) {
    opcat::OperadicLeftModule m;
    m.m.lobj = {"*m"};
    m.m.arrows.push_back({0, 0, "!"});
    m.m.init_tables(odot.base);
    m.m.set_act(0, 0, 0);
    m.fiber_obj_m = {0};
    m.set_fmm(0, 0, 0);
    return m;
}

// the one-object/no-arrow module over the point
inline opcat::OperadicLeftModule bare_module(const opcat::UnaryOpCat& odot) {
    opcat::OperadicLeftModule m;
    m.m.lobj = {"*m"};
    m.m.init_tables(odot.base);
    return m;
}

}  // namespace opcat_test
