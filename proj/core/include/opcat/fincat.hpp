#pragma once

#include <string>
#include <vector>

#include "opcat/report.hpp"

namespace opcat {

// Finite category with dense integer indices and an extensional composition
// table. Immutable after construction; all validators are exhaustive.
struct FinCategory {
    std::vector<std::string> obj_names;
    struct Mor {
        int dom = -1, cod = -1;
        std::string name;
    };
    std::vector<Mor> mor;
    std::vector<int> id_of;  // object -> identity morphism
    std::vector<int> comp;   // comp[g * n_mor + f] = g∘f ("f then g"), -1 if not composable

    int n_obj() const { return static_cast<int>(obj_names.size()); }
    int n_mor() const { return static_cast<int>(mor.size()); }
    bool composable(int g, int f) const { return mor[f].cod == mor[g].dom; }
    int compose(int g, int f) const { return comp[static_cast<size_t>(g) * n_mor() + f]; }
    void set_compose(int g, int f, int gf) { comp[static_cast<size_t>(g) * n_mor() + f] = gf; }
    void init_tables() {
        comp.assign(static_cast<size_t>(n_mor()) * n_mor(), -1);
    }

    int find_obj(const std::string& name) const;
    int find_mor(const std::string& name) const;
    // unique morphism dom -> cod if the hom-set is a singleton, else -1
    int unique_hom(int dom, int cod) const;
    std::vector<int> homset(int dom, int cod) const;
};

ValidationReport validate_category(const FinCategory& c);

// Path-connected components via undirected reachability on morphisms.
// Components are numbered by first occurrence of an object.
std::vector<int> pi0(const FinCategory& c);
int pi0_count(const FinCategory& c);

struct FinFunctor {
    std::vector<int> obj_map;
    std::vector<int> mor_map;
};

ValidationReport validate_functor(const FinCategory& src, const FinCategory& dst, const FinFunctor& f);

// Formally adjoin a terminal object: one new morphism X -> ⊙ per object plus
// the identity of ⊙; composites with the new morphisms collapse to them.
FinCategory adjoin_terminal(const FinCategory& c, int* terminal_obj = nullptr);

struct SliceResult {
    FinCategory cat;                            // objects: morphisms into S
    std::vector<int> obj_to_mor;                // slice object -> morphism of c
    std::vector<std::pair<int, int>> mor_to_tri;  // slice morphism -> (top, target slice object)
    FinFunctor projection;                      // domain projection to c
};
SliceResult slice(const FinCategory& c, int S);

// True if the two categories are isomorphic via the *given* maps.
bool is_category_iso(const FinCategory& a, const FinCategory& b, const std::vector<int>& obj_map,
                     const std::vector<int>& mor_map, std::string* why = nullptr);

}  // namespace opcat
