#pragma once

#include "opcat/chain.hpp"
#include "opcat/opmodule.hpp"

namespace opcat {

// A tower: morphisms f_i : T_i -> T_{i-1} of the base capped by a module
// arrow alpha : M -> T_n, with the computed fiber sequence.
struct Tower {
    std::vector<int> T;  // T_0 .. T_n
    std::vector<int> f;  // f_1 .. f_n
    int alpha = -1;
    std::vector<int> F;  // fibers of f_1 .. f_n
    int N = -1;          // module fiber of alpha

    bool operator==(const Tower& rhs) const { return T == rhs.T && f == rhs.f && alpha == rhs.alpha; }
};

struct BarInput {
    const UnaryOpCat& o;
    const OperadicLeftModule& mcat;
    const LinOperad& p;
    const PModule& m;
};

// complete, duplicate-free, ordered lexicographically in
// (alpha, f_n, ..., f_1)
std::vector<Tower> enumerate_towers(const UnaryOpCat& o, const OperadicLeftModule& mcat, int m_lobj, int n);

struct BarComponent {
    Tower tower;
    int offset = 0;
    int size = 0;
    std::vector<int> factor_dims;  // dims of P(T_0), P(F_1..F_n), M(N)
};

struct BarComplex {
    ChainComplex cx;  // augmented to M(m_lobj)
    std::vector<std::vector<BarComponent>> comps;  // per level
    // individual faces d_i : level n -> n-1; boundary[n] = sum (-1)^i d_i
    std::vector<std::vector<Matrix>> faces;
    int m_lobj = -1;

    int find_component(int level, const Tower& t) const;
};

// The tower-indexed chain complex with differential sum (-1)^i d_i and the
// augmentation eps(t0 ⊗ m) = nu_alpha(m, t0). Validates dd = 0 and
// eps d1 = 0 on construction.
BarComplex bar_complex(const BarInput& in, int m_lobj, int depth);

// degeneracy operators s_j : level n -> n+1 inserting the fiberwise unit;
// requires eta_T
std::vector<std::vector<Matrix>> bar_degeneracies(const BarInput& in, const BarComplex& bar,
                                                  const std::vector<RatVec>& eta_T);

// exhaustive check of the five simplicial identity families at the
// truncation depth
ValidationReport check_simplicial_identities(const BarInput& in, const BarComplex& bar,
                                             const std::vector<std::vector<Matrix>>& s_ops);

NormalizedComplex normalized_bar(const BarInput& in, const BarComplex& bar,
                                 const std::vector<RatVec>& eta_T);

// contracting homotopy at an object satisfying (P1)-(P2); refuses
// otherwise. h[0] : M(upsilon) -> level 0, h[n+1] : level n -> n+1.
std::vector<Matrix> contracting_homotopy(const BarInput& in, const BarComplex& bar,
                                         const std::vector<RatVec>& eta_T, int upsilon);

// chain map induced by a morphism of operadic module pairs, from the bar
// complex of the restricted data to the bar complex downstairs
ChainMap induced_chain_map(const BarInput& dom_in, const BarComplex& dom_bar, const BarInput& cod_in,
                           const BarComplex& cod_bar, const OpModMorphism& mor);

}  // namespace opcat
