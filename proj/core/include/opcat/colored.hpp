#pragma once

#include <map>

#include "opcat/blob.hpp"

namespace opcat {

// colors of the traditional colored operad of fields: a blob with a field on
// its boundary
struct Color {
    int blob = -1;
    int l = 0, r = 0;
    bool operator==(const Color& o) const { return blob == o.blob && l == o.l && r == o.r; }
    bool operator<(const Color& o) const {
        return std::tie(blob, l, r) < std::tie(o.blob, o.l, o.r);
    }
};

// Component calculator for the colored operad F_c and its module M_c, backed
// by the shared field-space machinery. Components are cached RegionSpaces:
//   F(inputs; out): fields on out minus the input interiors (diagonal rank 1,
//                   empty inputs = local relations)
//   M(profile):     fields on the base manifold minus the profile interiors
struct ColoredSpaces {
    const BlobSystem* sys = nullptr;
    mutable std::map<std::string, RegionSpace> cache;

    explicit ColoredSpaces(const BlobSystem& s) : sys(&s) {}
    const RegionSpace& F(const std::vector<Color>& inputs, const Color& out) const;
    const RegionSpace& M(const std::vector<Color>& profile) const;
    const RegionSpace& U(const Color& c) const { return F({}, c); }
    bool is_diagonal(const std::vector<Color>& inputs, const Color& out) const;
    // Fhat = F with the diagonal components replaced by zero
    int fhat_dim(const std::vector<Color>& inputs, const Color& out) const;
};

// unit law and colored associativity, exhaustively at desk scale
ValidationReport validate_colored(const BlobSystem& sys);

// --- the differential bar construction on forests ---------------------------

// Planar rooted forests grown from M_c: vertices carry elements of the
// augmentation ideal (degree +1, at least one input), leaves carry local
// relation generators, edges carry colors. The linear order of vertices in
// the basis representative is by decreasing root distance, ties by planar
// position; reorderings contribute the sign of the permutation.
struct ForestVertex {
    Color out;
    std::vector<Color> in;   // canonical order by position, nonempty
    int parent = -1;         // -1 = soil
    int slot = 0;            // input slot of the parent / soil slot
    std::vector<int> child;  // per input slot: vertex index or -1 (капped)
    int depth = 1;
};

struct ForestShape {
    std::vector<Color> soil;
    std::vector<int> soil_child;  // per soil slot: vertex index or -1
    std::vector<ForestVertex> verts;  // canonical order

    int degree() const { return static_cast<int>(verts.size()); }
};

struct ForestComponent {
    ForestShape shape;
    int offset = 0, size = 0;
    std::vector<int> factor_dims;  // [soil, verts..., caps...]
    std::vector<std::pair<int, int>> caps;  // (vertex index or -1 for soil, slot)
};

struct ForestComplex {
    ChainComplex cx;  // augmented to C(M;b)
    std::vector<std::vector<ForestComponent>> comps;
};

// B_*(M_c, F_c, F_c)(∅) with the edge-contraction differential; dd = 0 and
// eps d1 = 0 are validated on construction
ForestComplex differential_bar(const BlobSystem& sys, int depth);

// the blob complex: level 0 = C(M;b), level k = forest level k-1
ChainComplex blob_complex(const BlobSystem& sys, int depth);

// --- the simplicial bar construction on leveled forests ---------------------

struct ColoredTower {
    std::vector<int> objs;  // blobC objects o_0 ⊆ o_1 ⊆ ... ⊆ o_n
    bool operator==(const ColoredTower& o) const { return objs == o.objs; }
};

struct SimplicialComponent {
    ColoredTower tower;
    int offset = 0, size = 0;
    std::vector<int> factor_dims;  // [caps per o0 blob, level groups, soil]
};

struct SimplicialBar {
    ChainComplex cx;  // augmented to C(M;b)
    std::vector<std::vector<Matrix>> faces;
    std::vector<std::vector<Matrix>> s_ops;
    std::vector<std::vector<SimplicialComponent>> comps;
    int find_component(int level, const ColoredTower& t) const;
};

SimplicialBar simplicial_bar(const BlobSystem& sys, int depth);

// the levelization chain map B_* -> N_*: a forest goes to the signed sum of
// its level assignments
ChainMap levelization(const BlobSystem& sys, const ForestComplex& b, const SimplicialBar& c,
                      const NormalizedComplex& n);

// all order-compatible slot assignments of a forest's vertices with the
// Koszul sign of reordering the canonical vertex order into slot order
std::vector<std::pair<std::vector<int>, int>> forest_level_signs(const ForestShape& shape);

// basis bijections beta ≅ C and normalized bar ≅ N: returns matched level
// matrices or an explanation
struct BarComparison {
    bool ok = false;
    std::string why;
    ChainMap beta_to_c;  // the bijection as a chain map
};
BarComparison compare_beta_with_simplicial(const BlobSystem& sys, const BarComplex& beta,
                                           const SimplicialBar& c);

// B(F_c, F_c, F_c)(∅; out): the self bar at one output color
ChainComplex self_bar(const BlobSystem& sys, const Color& out, int depth);
std::vector<Color> all_colors(const BlobSystem& sys);

// when the base manifold is a single blob, the module bar decomposes into
// the self bar at (M, b): checked by dimension count per degree
bool ball_decomposition_check(const BlobSystem& sys, int depth, std::string* why = nullptr);

}  // namespace opcat
