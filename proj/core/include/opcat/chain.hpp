#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opcat/matrix.hpp"
#include "opcat/report.hpp"

namespace opcat {

// Non-negatively graded chain complex over exact rationals, truncated at
// depth N. An augmented complex carries its target as a virtual level -1
// with eps as the boundary out of level 0. Every homology answer is
// truncation-aware: asking beyond the represented window is an error.
struct ChainComplex {
    std::vector<int> dims;                       // level n -> dimension, n = 0..N
    std::vector<std::vector<std::string>> labels;  // optional basis labels per level
    std::vector<Matrix> boundary;                // boundary[n] : level n -> level n-1, n >= 1
    std::optional<Matrix> eps;                   // augmentation: level 0 -> aug target
    int aug_dim = 0;

    int depth() const { return static_cast<int>(dims.size()) - 1; }
    bool augmented() const { return eps.has_value(); }
    // boundary out of level n as a matrix (eps at n = 0 when augmented)
    Matrix boundary_out(int n) const;

    ValidationReport validate() const;  // dd = 0 and eps d1 = 0, exactly
};

// dim H_k. For augmented complexes k = -1 means coker(eps) and k = 0 uses
// ker(eps); plain complexes use ker(0) at level 0. Throws on k outside the
// represented range (boundary[k+1] must exist).
int betti(const ChainComplex& c, int k);
// homology ignoring the augmentation (H_0 = level0 / im d1)
int betti_unaugmented(const ChainComplex& c, int k);

struct ChainMap {
    std::vector<Matrix> level;  // level[n] : dom_n -> cod_n
    std::optional<Matrix> aug;  // aug-target map when both augmented
};

ValidationReport validate_chain_map(const ChainComplex& dom, const ChainComplex& cod, const ChainMap& f);

// cone_n = dom_{n-1} ⊕ cod_n with d(x, y) = (-dx, f(x) + dy)
ChainComplex mapping_cone(const ChainComplex& dom, const ChainComplex& cod, const ChainMap& f);

// quasi-isomorphism verified up to degree k: cone homology vanishes in
// degrees <= k; requires both complexes through level k+1
bool is_quasi_iso_upto(const ChainComplex& dom, const ChainComplex& cod, const ChainMap& f, int k);

// h[0] : aug -> level0, h[n+1] : level n -> level n+1. Checks
// eps∘h = id, d1 h0 + h(-1) eps = id, d_{n+1} h_n + h_{n-1} d_n = id.
bool verify_contraction(const ChainComplex& c, const std::vector<Matrix>& h, std::string* why = nullptr);

// quotient of a simplicial-style complex by the images of its degeneracies
struct NormalizedComplex {
    ChainComplex cx;
    ChainMap proj;  // a chain map
    std::vector<Quotient> quot;
};
// s_ops[n][j] : level n -> n+1; checks that the differential descends
NormalizedComplex normalize_simplicial(const ChainComplex& cx,
                                       const std::vector<std::vector<Matrix>>& s_ops);

// labeled sparse-matrix text export for external cross-checks
std::string export_text(const ChainComplex& c);

}  // namespace opcat
