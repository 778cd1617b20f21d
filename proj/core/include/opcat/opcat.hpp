#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "opcat/fincat.hpp"

namespace opcat {

// A commuting triangle over S is the pair (top, leg): top : X' -> X'',
// leg : X'' -> S; its first side is leg∘top. Fiber data is extensional:
//   fiber_obj[f]          the fiber object F(f) of f
//   fiber_mor[(top,leg)]  the induced morphism F(leg∘top) -> F(leg)
struct UnaryOpCat {
    FinCategory base;
    std::vector<int> fiber_obj;
    std::unordered_map<int64_t, int> fiber_mor;
    // chosen local terminal objects, one per pi0 component (optional: all
    // non-unital machinery must run without them)
    std::optional<std::vector<int>> terminals;

    // cached pi0 data, filled by finalize()
    std::vector<int> comp_of;
    int n_comp = 0;

    void finalize() {
        comp_of = pi0(base);
        n_comp = 0;
        for (int c : comp_of) n_comp = std::max(n_comp, c + 1);
    }
    int64_t tri_key(int top, int leg) const { return static_cast<int64_t>(top) * base.n_mor() + leg; }
    // induced morphism of a triangle, -1 if absent from the table
    int fm(int top, int leg) const {
        auto it = fiber_mor.find(tri_key(top, leg));
        return it == fiber_mor.end() ? -1 : it->second;
    }
    void set_fm(int top, int leg, int value) { fiber_mor[tri_key(top, leg)] = value; }
    // fiber of the identity automorphism of T
    int U(int T) const { return fiber_obj[base.id_of[T]]; }
};

// Exhaustive validation: triangle table shape, functoriality of each
// F_S : O/S -> O, and the fiber-of-fiber law (object and morphism parts).
ValidationReport validate_opcat(const UnaryOpCat& o);

struct OperadicFunctor {
    FinFunctor f;
};

ValidationReport validate_operadic_functor(const UnaryOpCat& src, const UnaryOpCat& dst,
                                           const OperadicFunctor& phi);

struct UnitalityReport {
    bool left = false, right = false;
    std::vector<std::string> witnesses;  // failures of left/right
    std::vector<std::string> errors;     // chosen object not locally terminal etc.
    bool unital() const { return left && right && errors.empty(); }
};
UnitalityReport unitality_report(const UnaryOpCat& o);

// --- the décollage D(A): coproduct of all slice categories ----------------

struct DecollageTags {
    // décollage object i is exactly morphism i of A
    std::vector<std::pair<int, int>> mor_pair;  // décollage morphism -> (top, leg) in A
    int find_mor(int top, int leg) const;
};
UnaryOpCat decollage(const FinCategory& a, DecollageTags* tags = nullptr);

// --- the tautological category T(A) = A ⊔ D(A) ----------------------------

struct TautTags {
    int n_aobj = 0, n_amor = 0;
    // objects: [0, n_aobj) = objects of A; n_aobj + j = morphism j of A
    // morphisms: [0, n_amor) = morphisms of A; then D(A)-morphisms (top, leg)
    std::vector<std::pair<int, int>> dmor_pair;
    int obj_of_aobj(int x) const { return x; }
    int obj_of_amor(int f) const { return n_aobj + f; }
    int mor_of_amor(int f) const { return f; }
    int find_dmor(int top, int leg) const;
    int mor_of_dmor_index(int k) const { return n_amor + k; }
};

struct TautResult {
    UnaryOpCat cat;
    TautTags tags;
    UnaryOpCat dec_aodot;      // D(A_⊙)
    DecollageTags dec_tags;    // tags of D(A_⊙)
    FinCategory aodot;
    OperadicFunctor embed;     // T(A) -> D(A_⊙)
};
TautResult tautological(const FinCategory& a);

// --- operadic categories from (pseudo-)unital monoid-like tables ----------

struct MonoidLike {
    std::vector<std::string> names;
    std::vector<int> mult;  // mult[x*n+y] = gamma(x, y)
    std::optional<int> unit;
    std::optional<std::vector<int>> pseudo_units;  // e_b per element b
    int n() const { return static_cast<int>(names.size()); }
    int m(int x, int y) const { return mult[static_cast<size_t>(x) * n() + y]; }
};

// Rejects tables violating associativity or the unit family laws; the
// failing pair/triple is named in the exception message.
struct MonoidOpcatResult {
    UnaryOpCat cat;
    std::vector<std::pair<int, int>> mor_pair;  // morphism -> (x, a) : gamma(x,a) -> a
    int find_mor(int x, int a) const;
};
MonoidOpcatResult monoid_opcat(const MonoidLike& a);

// One locally terminal object per pi0 component, when every component has
// one (smallest index wins); nullopt otherwise.
std::optional<std::vector<int>> choose_local_terminals(const FinCategory& c);

// --- nerve diagnostic ------------------------------------------------------

// With the extra top face induced by the fiber structure, all simplicial
// identities except d_n d_{n+1} = d_n d_n hold for any family of functors;
// the law itself is the n=2 (object part) and n=3 (morphism part) relation.
struct NerveDiag {
    bool always_identities_ok = true;  // d_i d_{n+1} = d_n d_i for i < n at n=2
    bool n2_ok = true;                 // d_2 d_3 = d_2 d_2 on all 2-chains
    bool n3_ok = true;                 // d_3 d_4 = d_3 d_3 on all 3-chains
    std::vector<std::string> witnesses;
};
NerveDiag nerve_diagnostic(const UnaryOpCat& o);

}  // namespace opcat
