#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "opcat/opcat.hpp"

namespace opcat {

// Categorical left module over a category: a set of module objects, arrow
// sets L(L, S) into category objects, and an action (alpha, g) -> g·alpha
// written in the "alpha then g" convention.
struct CatLeftModule {
    std::vector<std::string> lobj;
    struct Arrow {
        int dom_l = -1, cod_o = -1;
        std::string name;
    };
    std::vector<Arrow> arrows;
    // action[g * n_arrows + a] = g·a, defined iff cod(a) = dom(g); -1 otherwise
    std::vector<int> action;

    int n_lobj() const { return static_cast<int>(lobj.size()); }
    int n_arr() const { return static_cast<int>(arrows.size()); }
    int act(int g, int a) const { return action[static_cast<size_t>(g) * n_arr() + a]; }
    void set_act(int g, int a, int v) { action[static_cast<size_t>(g) * n_arr() + a] = v; }
    void init_tables(const FinCategory& c) {
        action.assign(static_cast<size_t>(c.n_mor()) * n_arr(), -1);
    }
    std::vector<int> arrows_from(int l) const;
    std::vector<int> arrow_set(int l, int s) const;
    int find_arrow(const std::string& name) const;
};

ValidationReport validate_cat_module(const FinCategory& c, const CatLeftModule& m);

// an operadic left module: fiber data on top of a categorical module
//   fiber_obj_m[a]       the module object G(a)
//   fiber_mor_m[(a, g)]  the induced module arrow G(g·a) -> F(g)
struct OperadicLeftModule {
    CatLeftModule m;
    std::vector<int> fiber_obj_m;
    std::unordered_map<int64_t, int> fiber_mor_m;

    int64_t key(int arrow, int g) const { return static_cast<int64_t>(arrow) * 1000003 + g; }
    int fmm(int arrow, int g) const {
        auto it = fiber_mor_m.find(key(arrow, g));
        return it == fiber_mor_m.end() ? -1 : it->second;
    }
    void set_fmm(int arrow, int g, int v) { fiber_mor_m[key(arrow, g)] = v; }
};

ValidationReport validate_operadic_module(const UnaryOpCat& o, const OperadicLeftModule& mm);

// chaotic module: one arrow from each module object to each category object
CatLeftModule chaos(const std::vector<std::string>& lobj, const FinCategory& c);

// any operadic category as a left operadic module over itself
OperadicLeftModule self_module(const UnaryOpCat& o);

// the left module L(F) of a functor F : D -> C, with arrow sets C(F(d), c)
// and action by post-composition (a fixture generator, not a core type)
CatLeftModule module_from_functor(const FinCategory& d, const FinCategory& c, const FinFunctor& f);

// overmodule M/c over the slice C/c; objects are arrows L -> c
struct OvermoduleResult {
    CatLeftModule mod;                       // over slice(c, S).cat
    std::vector<int> obj_to_arrow;           // overmodule object -> arrow of m
    std::vector<std::pair<int, int>> arr_tag;  // overmodule arrow -> (phi arrow of m, target slice obj)
};
OvermoduleResult overmodule(const FinCategory& c, const CatLeftModule& m, int S);

// the décollage module D_A(B) over decollage(A) and the tautological module
// T_A(B) = B ⊔ D_A(B) over tautological(A)
struct DecollageModuleResult {
    OperadicLeftModule mod;
    // module object i = arrow i of B; module arrow tags: (psi arrow of B, leg morphism of A)
    std::vector<std::pair<int, int>> arr_tag;
    int find_arrow(int psi, int leg) const;
};
DecollageModuleResult decollage_module(const FinCategory& a, const CatLeftModule& b,
                                       const DecollageTags& dec_tags);

struct TautModuleResult {
    OperadicLeftModule mod;
    int n_bobj = 0, n_barr = 0;
    // module objects: [0, n_bobj) = objects of B; then arrows of B
    // module arrows: [0, n_barr) = arrows of B (to A-part objects); then
    // D-part arrows tagged (psi arrow of B, leg morphism of A)
    std::vector<std::pair<int, int>> darr_tag;
    int obj_of_bobj(int x) const { return x; }
    int obj_of_barr(int a) const { return n_bobj + a; }
    int find_darr(int psi, int leg) const;
};
TautModuleResult tautological_module(const FinCategory& a, const CatLeftModule& b, const TautTags& taut_tags);

// --- weak blow-up ----------------------------------------------------------

struct WbuReport {
    bool ok = true;
    std::vector<std::string> witnesses;
};
// category version: unique completion of (f1 : X' -> S with fiber F', phi : F' -> F'')
WbuReport check_wbu_cat(const UnaryOpCat& o);
// module version: f', phihat arrows of M, phi an arrow of M out of the fiber
WbuReport check_wbu_mod(const UnaryOpCat& o, const OperadicLeftModule& mm);

// completion oracles; nullopt when zero or several completions exist
std::optional<std::pair<int, int>> wbu_complete_cat(const UnaryOpCat& o, int f1, int phi);
std::optional<std::pair<int, int>> wbu_complete_mod(const UnaryOpCat& o, const OperadicLeftModule& mm,
                                                    int alpha, int beta);

// rigid: precisely one pair (object of O, arrow X -> it) whose fiber is X itself
bool rigid(const UnaryOpCat& o, const OperadicLeftModule& mm, int x, std::string* witness = nullptr);

struct P1P2Result {
    bool ok = false;
    int odot = -1;  // the global terminal of Upsilon/O
    int bang = -1;  // the arrow Upsilon -> odot
    std::vector<std::string> witnesses;
};
P1P2Result p1p2(const UnaryOpCat& o, const OperadicLeftModule& mm, int upsilon);

// morphism of pairs (O', M') -> (O'', M'')
struct OpModMorphism {
    OperadicFunctor phi;
    std::vector<int> psi_obj;    // module objects
    std::vector<int> psi_arrow;  // module arrows
};
ValidationReport validate_opmod_morphism(const UnaryOpCat& o1, const OperadicLeftModule& m1,
                                         const UnaryOpCat& o2, const OperadicLeftModule& m2,
                                         const OpModMorphism& f);

}  // namespace opcat
