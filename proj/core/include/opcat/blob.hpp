#pragma once

#include <map>
#include <tuple>

#include "opcat/bar.hpp"
#include "opcat/groth.hpp"

namespace opcat {

// Combinatorial 1-dimensional model: the base manifold is the grid interval
// [0, N], fields on an interval of length L are quiver paths of length L,
// local relations come from homogeneous relation vectors of a quiver with
// relations, and the boundary condition is a pair of vertex labels.
struct BlobModel {
    std::string name;
    int N = 0;
    std::vector<std::string> vnames;
    struct Edge {
        int src = 0, dst = 0;
        std::string name;
    };
    std::vector<Edge> edges;
    struct Relation {
        int len = 0, src = 0, tgt = 0;
        std::vector<std::pair<Rat, std::vector<int>>> terms;  // coefficient, edge path
    };
    std::vector<Relation> relations;
    int bl = 0, br = 0;

    int n_v() const { return static_cast<int>(vnames.size()); }
};

ValidationReport validate_blob_model(const BlobModel& m);

// blob = grid interval, either strictly interior or the whole component
struct GridBlob {
    int a = 0, b = 0;
    bool operator==(const GridBlob& o) const { return a == o.a && b == o.b; }
};

struct Interval {
    int a = 0, b = 0;
    int la = 0, lb = 0;  // vertex labels at the endpoints
};

class PathTable {
  public:
    PathTable() = default;
    explicit PathTable(BlobModel m) : model(std::move(m)) {}
    const std::vector<std::vector<int>>& paths(int len, int src, int tgt) const;
    int index_of(int len, int src, int tgt, const std::vector<int>& p) const;
    const BlobModel& m() const { return model; }

  private:
    BlobModel model;
    mutable std::map<std::tuple<int, int, int>, std::vector<std::vector<int>>> cache;
};

// The based module of fields on a disjoint union of labeled intervals.
// The ambient basis is the row-major product of per-interval path lists;
// the component basis is either the ambient one (plain) or an explicit
// reduced subspace (local relations).
struct RegionSpace {
    std::vector<Interval> intervals;  // maximal components, sorted by position
    std::vector<int> interval_counts;
    int ambient_dim = 0;
    bool plain = true;
    Basis basis;
    std::vector<RatVec> emb;  // basis vector -> ambient coordinates
    bool zero = false;        // collar label mismatch: the space is 0

    int dim() const { return basis.dim(); }
};

// relations_at[i] marks the intervals whose factor is the local-relation
// subspace instead of the full path space
RegionSpace make_region(const PathTable& pt, std::vector<Interval> iv, std::vector<bool> relations_at,
                        bool collar_mismatch = false);
RegionSpace make_plain_region(const PathTable& pt, std::vector<Interval> iv, bool collar_mismatch = false);
// tensor of per-blob local-relation subspaces over a decorated configuration
RegionSpace make_relations_region(const PathTable& pt, const std::vector<Interval>& iv);

// reduced basis of U(D; l, r) inside the path space of length b-a
std::vector<RatVec> u_vectors(const PathTable& pt, const GridBlob& d, int l, int r);

// ambient index of the merged tuple in the composite region
int merge_ambient(const PathTable& pt, const RegionSpace& a, const RegionSpace& b, const RegionSpace& c,
                  int ia, int ib);
// coalesced union of the two interval lists
std::vector<Interval> merge_intervals(const std::vector<Interval>& a, const std::vector<Interval>& b);
// express an ambient vector in the component basis (solve for subspaces)
RatVec express_in(const RegionSpace& c, const RatVec& ambient);

// Everything the Part-2 pipeline needs, generated from one model: the
// categories blob/ublob/Blob/Blobbar and their decorated versions, the
// chaotic and tautological modules, the partial operad S over Blob with its
// pseudo-units, the linear operads Fbar/F with fiberwise units, the modules
// Mbar/M, and the inclusion morphism (iota, jmath).
struct BlobSystem {
    BlobModel model;
    PathTable pt;
    std::vector<GridBlob> blobs;
    int whole_blob = -1;
    std::vector<std::vector<int>> configs;
    // decorations of a config: all label pairs per blob, row-major over V^2
    std::vector<std::vector<std::vector<std::pair<int, int>>>> decs;

    FinCategory blob_cat, ublob_cat;
    FinCategory blobC_cat, ublobC_cat;
    struct DecObj {
        int cfg = -1, dec = -1;
    };
    std::vector<DecObj> blobC_objs;
    int find_blobC_obj(int cfg, int dec) const;

    TautResult Blob;   // .cat = T(blob), .aodot = ublob, .dec_aodot = D(ublob)
    TautResult BlobC;  // decorated versions

    CatLeftModule m_cat, mbar_cat, mC_cat, mbarC_cat;
    TautModuleResult Mmod, MmodC;
    DecollageModuleResult Mbar, MbarC;

    SetOperad S;  // partial operad over Blob.cat
    std::vector<std::vector<int>> S_units;
    std::vector<std::vector<std::pair<int, int>>> S_elems;  // per Blob object: (outer dec, inner dec)

    std::vector<RegionSpace> F_space;  // per object of D(ublobC) = BlobC.dec_aodot
    LinOperad Fbar;
    std::vector<RatVec> Fbar_eta;
    LinOperad F;
    std::vector<RatVec> F_eta;

    std::vector<RegionSpace> M_space;  // per module object of MbarC
    PModule Mbar_lin;
    PModule M_lin;
    OpModMorphism iota;  // (BlobC.cat, MmodC.mod) -> (BlobC.dec_aodot, MbarC.mod)

    // module objects of interest
    int upsilon_bar = -1;  // ((M;b) -> empty) in MbarC
    int upsilon = -1;      // (M;b) in MmodC (the B-part object)
};

// with_linear = false skips the linear operads and modules (combinatorial
// layers only), for colored-side tests on larger grids
BlobSystem build_blob_system(const BlobModel& m, bool with_linear = true);

// independent skein oracle: fields of length N at the boundary condition
// modulo the degree-N component of the two-sided relation ideal
int skein_dim(const BlobModel& m);

// the decorated category Blob(C) against the partial Grothendieck
// construction over Blob
RoundTrip blobC_is_groth_of_S(const BlobSystem& sys);

// ready-made desk models
BlobModel model_loop_x2(int n = 3);       // one vertex, loop x, relation x^2
BlobModel model_loop_free(int n = 3);     // one vertex, loop x, no relations
BlobModel model_two_vertex(int n = 2);    // u,w; e: u->w, f: w->u; relation fe
BlobModel model_two_loops(int n = 2);     // one vertex, loops a,b; relation ab - ba

}  // namespace opcat
