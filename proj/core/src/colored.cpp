#include "opcat/colored.hpp"

#include <algorithm>
#include <functional>

#include "opcat/common.hpp"

namespace opcat {

namespace {

std::string color_key(const Color& c) {
    return std::to_string(c.blob) + ":" + std::to_string(c.l) + ":" + std::to_string(c.r);
}

std::string colors_key(const std::vector<Color>& cs) {
    std::string s;
    for (const auto& c : cs) s += color_key(c) + ",";
    return s;
}

std::vector<int> decode_tuple(const std::vector<int>& counts, int idx) {
    std::vector<int> out(counts.size());
    for (int i = static_cast<int>(counts.size()) - 1; i >= 0; --i) {
        out[i] = idx % counts[i];
        idx /= counts[i];
    }
    return out;
}

int encode_tuple(const std::vector<int>& counts, const std::vector<int>& idx) {
    int v = 0;
    for (size_t i = 0; i < counts.size(); ++i) v = v * counts[i] + idx[i];
    return v;
}

// fold-merge of plain ambient vectors
std::pair<RegionSpace, RatVec> merge_vec(const PathTable& pt, const RegionSpace& a, const RatVec& va,
                                         const RegionSpace& b, const RatVec& vb) {
    RegionSpace c = make_plain_region(pt, merge_intervals(a.intervals, b.intervals));
    RatVec out(c.ambient_dim);
    for (int ia = 0; ia < a.ambient_dim; ++ia) {
        if (va[ia] == 0) continue;
        for (int ib = 0; ib < b.ambient_dim; ++ib) {
            if (vb[ib] == 0) continue;
            out[merge_ambient(pt, a, b, c, ia, ib)] += va[ia] * vb[ib];
        }
    }
    return {c, std::move(out)};
}

RatVec expand_emb(const RegionSpace& s, int basis_index) {
    return s.emb[basis_index];
}

}  // namespace

const RegionSpace& ColoredSpaces::F(const std::vector<Color>& inputs, const Color& out) const {
    std::string key = "F" + colors_key(inputs) + ";" + color_key(out);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const GridBlob& d = sys->blobs[out.blob];
    RegionSpace rs;
    if (inputs.empty()) {
        rs = make_relations_region(sys->pt, {{d.a, d.b, out.l, out.r}});
    } else if (inputs.size() == 1 && inputs[0].blob == out.blob) {
        // degenerate collar: rank one iff the labels agree
        bool mismatch = !(inputs[0].l == out.l && inputs[0].r == out.r);
        rs = make_plain_region(sys->pt, {}, mismatch);
    } else {
        std::vector<Interval> iv;
        int cur = d.a, curl = out.l;
        for (const auto& c : inputs) {
            const GridBlob& ib = sys->blobs[c.blob];
            iv.push_back({cur, ib.a, curl, c.l});
            cur = ib.b;
            curl = c.r;
        }
        iv.push_back({cur, d.b, curl, out.r});
        rs = make_plain_region(sys->pt, iv);
    }
    return cache.emplace(key, std::move(rs)).first->second;
}

const RegionSpace& ColoredSpaces::M(const std::vector<Color>& profile) const {
    std::string key = "M" + colors_key(profile);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const BlobModel& m = sys->model;
    RegionSpace rs;
    if (profile.size() == 1 && sys->blobs[profile[0].blob].a == 0 && sys->blobs[profile[0].blob].b == m.N) {
        bool mismatch = !(profile[0].l == m.bl && profile[0].r == m.br);
        rs = make_plain_region(sys->pt, {}, mismatch);
    } else {
        std::vector<Interval> iv;
        int cur = 0, curl = m.bl;
        for (const auto& c : profile) {
            const GridBlob& ib = sys->blobs[c.blob];
            iv.push_back({cur, ib.a, curl, c.l});
            cur = ib.b;
            curl = c.r;
        }
        iv.push_back({cur, m.N, curl, m.br});
        rs = make_plain_region(sys->pt, iv);
    }
    return cache.emplace(key, std::move(rs)).first->second;
}

bool ColoredSpaces::is_diagonal(const std::vector<Color>& inputs, const Color& out) const {
    return inputs.size() == 1 && inputs[0] == out;
}

int ColoredSpaces::fhat_dim(const std::vector<Color>& inputs, const Color& out) const {
    if (is_diagonal(inputs, out)) return 0;
    return F(inputs, out).dim();
}

std::vector<Color> all_colors(const BlobSystem& sys) {
    std::vector<Color> out;
    for (int b = 0; b < static_cast<int>(sys.blobs.size()); ++b)
        for (int l = 0; l < sys.model.n_v(); ++l)
            for (int r = 0; r < sys.model.n_v(); ++r) out.push_back({b, l, r});
    return out;
}

namespace {

// decorated configurations of blobs strictly inside a blob (or inside the
// whole manifold when blob < 0), canonical position order
std::vector<std::vector<Color>> strict_inner_configs(const BlobSystem& sys, int blob, bool nonempty) {
    std::vector<int> candidates;
    for (int i = 0; i < static_cast<int>(sys.blobs.size()); ++i) {
        if (blob < 0) {
            candidates.push_back(i);
        } else {
            const GridBlob& d = sys.blobs[blob];
            if (d.a < sys.blobs[i].a && sys.blobs[i].b < d.b) candidates.push_back(i);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](int x, int y) { return sys.blobs[x].a < sys.blobs[y].a; });
    std::vector<std::vector<int>> cfgs;
    std::vector<int> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (!cur.empty() || !nonempty) cfgs.push_back(cur);
        for (size_t i = start; i < candidates.size(); ++i) {
            bool ok = true;
            for (int j : cur)
                ok &= sys.blobs[j].b < sys.blobs[candidates[i]].a || sys.blobs[candidates[i]].b < sys.blobs[j].a;
            if (!ok) continue;
            cur.push_back(candidates[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    if (!nonempty && cfgs.empty()) cfgs.push_back({});
    // decorate
    std::vector<std::vector<Color>> out;
    int nv = sys.model.n_v();
    for (auto& cfg : cfgs) {
        std::sort(cfg.begin(), cfg.end(), [&](int x, int y) { return sys.blobs[x].a < sys.blobs[y].a; });
        int r = static_cast<int>(cfg.size());
        long total = 1;
        for (int i = 0; i < 2 * r; ++i) total *= nv;
        for (long d = 0; d < total; ++d) {
            std::vector<Color> cs(r);
            long v = d;
            for (int i = r - 1; i >= 0; --i) {
                cs[i].r = static_cast<int>(v % nv);
                v /= nv;
                cs[i].l = static_cast<int>(v % nv);
                v /= nv;
                cs[i].blob = cfg[i];
            }
            out.push_back(std::move(cs));
        }
    }
    return out;
}

// --- generic forest machinery -----------------------------------------------

enum class SoilKind { Module, SelfOperad };

struct ForestContext {
    const BlobSystem* sys;
    ColoredSpaces spaces;
    SoilKind kind;
    Color self_out;  // output color of the self bar

    explicit ForestContext(const BlobSystem& s, SoilKind k, Color out = {})
        : sys(&s), spaces(s), kind(k), self_out(out) {}

    const RegionSpace& soil_space(const std::vector<Color>& profile) const {
        return kind == SoilKind::Module ? spaces.M(profile) : spaces.F(profile, self_out);
    }
};

// canonical order: decreasing depth, ties by planar position path
void canonicalize(ForestShape& s, std::vector<int>* old_to_new = nullptr) {
    int n = s.degree();
    std::vector<std::vector<int>> pos(n);
    std::vector<int> depth(n, 0);
    std::function<void(int, std::vector<int>, int)> walk = [&](int v, std::vector<int> p, int d) {
        pos[v] = p;
        depth[v] = d;
        for (size_t k = 0; k < s.verts[v].child.size(); ++k)
            if (s.verts[v].child[k] >= 0) {
                auto q = p;
                q.push_back(static_cast<int>(k));
                walk(s.verts[v].child[k], q, d + 1);
            }
    };
    for (size_t k = 0; k < s.soil_child.size(); ++k)
        if (s.soil_child[k] >= 0) walk(s.soil_child[k], {static_cast<int>(k)}, 1);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (depth[x] != depth[y]) return depth[x] > depth[y];
        return pos[x] < pos[y];
    });
    std::vector<int> remap(n);
    for (int i = 0; i < n; ++i) remap[order[i]] = i;
    ForestShape t = s;
    t.verts.resize(n);
    for (int i = 0; i < n; ++i) {
        t.verts[remap[i]] = s.verts[i];
        t.verts[remap[i]].depth = depth[i];
        auto& vv = t.verts[remap[i]];
        if (vv.parent >= 0) vv.parent = remap[vv.parent];
        for (auto& c : vv.child)
            if (c >= 0) c = remap[c];
    }
    for (auto& c : t.soil_child)
        if (c >= 0) c = remap[c];
    s = std::move(t);
    if (old_to_new) *old_to_new = remap;
}

// all caps of the shape: (owner vertex or -1 for soil, slot), canonical order
std::vector<std::pair<int, int>> caps_of(const ForestShape& s) {
    std::vector<std::pair<int, int>> out;
    for (size_t k = 0; k < s.soil_child.size(); ++k)
        if (s.soil_child[k] < 0) out.emplace_back(-1, static_cast<int>(k));
    for (int v = 0; v < s.degree(); ++v)
        for (size_t k = 0; k < s.verts[v].child.size(); ++k)
            if (s.verts[v].child[k] < 0) out.emplace_back(v, static_cast<int>(k));
    std::sort(out.begin(), out.end());
    return out;
}

Color cap_color(const ForestShape& s, std::pair<int, int> cap) {
    return cap.first < 0 ? s.soil[cap.second] : s.verts[cap.first].in[cap.second];
}

ForestComponent make_component(const ForestContext& ctx, ForestShape shape) {
    ForestComponent comp;
    canonicalize(shape);
    comp.shape = std::move(shape);
    comp.caps = caps_of(comp.shape);
    comp.factor_dims.push_back(ctx.soil_space(comp.shape.soil).dim());
    for (const auto& v : comp.shape.verts) comp.factor_dims.push_back(ctx.spaces.F(v.in, v.out).dim());
    for (const auto& cap : comp.caps)
        comp.factor_dims.push_back(ctx.spaces.U(cap_color(comp.shape, cap)).dim());
    comp.size = 1;
    for (int d : comp.factor_dims) comp.size *= d;
    return comp;
}

// enumerate forests of the given degree
std::vector<ForestComponent> enumerate_forest_components(const ForestContext& ctx, int degree) {
    const BlobSystem& sys = *ctx.sys;
    // trees with t vertices below an edge of the given color; each tree is a
    // partial ForestShape fragment rooted at that edge
    struct Frag {
        std::vector<ForestVertex> verts;  // fragment-local indices; root = 0 when nonempty
        bool capped = false;
    };
    std::function<std::vector<Frag>(Color, int)> trees = [&](Color c, int t) {
        std::vector<Frag> out;
        if (t == 0) {
            Frag f;
            f.capped = true;
            if (ctx.spaces.U(c).dim() > 0) out.push_back(f);
            return out;
        }
        for (auto& cfg : strict_inner_configs(sys, c.blob, true)) {
            if (ctx.spaces.F(cfg, c).dim() == 0) continue;
            // distribute t-1 vertices among the slots
            int slots = static_cast<int>(cfg.size());
            std::vector<std::vector<std::vector<Frag>>> per_slot(slots);
            std::function<void(int, int, std::vector<Frag>&)> dist = [&](int slot, int rem,
                                                                         std::vector<Frag>& acc) {
                if (slot == slots) {
                    if (rem != 0) return;
                    // assemble: root vertex + fragments
                    Frag f;
                    ForestVertex root;
                    root.out = c;
                    root.in = cfg;
                    root.child.assign(slots, -1);
                    f.verts.push_back(root);
                    for (int s2 = 0; s2 < slots; ++s2) {
                        const Frag& sub = acc[s2];
                        if (sub.capped) continue;
                        int base = static_cast<int>(f.verts.size());
                        f.verts[0].child[s2] = base;
                        for (auto v : sub.verts) {
                            if (v.parent >= 0)
                                v.parent += base;
                            else {
                                v.parent = 0;
                                v.slot = s2;
                            }
                            for (auto& ch : v.child)
                                if (ch >= 0) ch += base;
                            f.verts.push_back(v);
                        }
                        // fix inner parents: fragment root's parent was -1
                        // handled above; children offsets handled
                    }
                    out.push_back(std::move(f));
                    return;
                }
                for (int k = 0; k <= rem; ++k)
                    for (auto& sub : trees(cfg[slot], k)) {
                        acc.push_back(sub);
                        dist(slot + 1, rem - k, acc);
                        acc.pop_back();
                    }
            };
            std::vector<Frag> acc;
            dist(0, t - 1, acc);
        }
        return out;
    };

    std::vector<ForestComponent> comps;
    // soil profiles
    std::vector<std::vector<Color>> profiles;
    if (ctx.kind == SoilKind::Module) {
        profiles = strict_inner_configs(sys, -1, true);
    } else {
        profiles = strict_inner_configs(sys, ctx.self_out.blob, false);
        profiles.push_back({ctx.self_out});  // the diagonal soil
    }
    for (auto& profile : profiles) {
        if (ctx.soil_space(profile).dim() == 0) continue;
        int slots = static_cast<int>(profile.size());
        std::function<void(int, int, std::vector<std::pair<bool, std::vector<ForestVertex>>>&)> dist =
            [&](int slot, int rem, std::vector<std::pair<bool, std::vector<ForestVertex>>>& acc) {
                if (slot == slots) {
                    if (rem != 0) return;
                    ForestShape shape;
                    shape.soil = profile;
                    shape.soil_child.assign(slots, -1);
                    for (int s2 = 0; s2 < slots; ++s2) {
                        if (acc[s2].first) continue;  // capped
                        int base = static_cast<int>(shape.verts.size());
                        shape.soil_child[s2] = base;
                        for (auto v : acc[s2].second) {
                            if (v.parent >= 0)
                                v.parent += base;
                            else
                                v.slot = s2;
                            for (auto& ch : v.child)
                                if (ch >= 0) ch += base;
                            shape.verts.push_back(v);
                        }
                    }
                    auto comp = make_component(ctx, std::move(shape));
                    if (comp.size > 0) comps.push_back(std::move(comp));
                    return;
                }
                for (int k = 0; k <= rem; ++k)
                    for (auto& sub : trees(profile[slot], k)) {
                        acc.emplace_back(sub.capped, sub.verts);
                        dist(slot + 1, rem - k, acc);
                        acc.pop_back();
                    }
            };
        std::vector<std::pair<bool, std::vector<ForestVertex>>> acc;
        dist(0, degree, acc);
    }
    // deterministic order: by soil colors then shape fingerprint
    std::sort(comps.begin(), comps.end(), [](const ForestComponent& a, const ForestComponent& b) {
        auto key = [](const ForestComponent& c) {
            std::string s = colors_key(c.shape.soil) + "#";
            for (const auto& v : c.shape.verts)
                s += color_key(v.out) + "<" + colors_key(v.in) + "@" + std::to_string(v.parent) + "." +
                     std::to_string(v.slot) + ";";
            return s;
        };
        return key(a) < key(b);
    });
    int off = 0;
    for (auto& c : comps) {
        c.offset = off;
        off += c.size;
    }
    return comps;
}

int find_forest_component(const std::vector<ForestComponent>& comps, const ForestShape& shape) {
    auto same = [](const ForestShape& a, const ForestShape& b) {
        if (!(a.soil == b.soil) || a.soil_child != b.soil_child || a.degree() != b.degree()) return false;
        for (int i = 0; i < a.degree(); ++i) {
            if (!(a.verts[i].out == b.verts[i].out) || !(a.verts[i].in == b.verts[i].in)) return false;
            if (a.verts[i].parent != b.verts[i].parent || a.verts[i].child != b.verts[i].child) return false;
            if (a.verts[i].parent >= 0 || !a.verts[i].child.empty()) {
                if (a.verts[i].slot != b.verts[i].slot) return false;
            }
        }
        return true;
    };
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
        if (same(comps[i].shape, shape)) return i;
    return -1;
}

int parity_sign(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

// one differential move applied to a whole component; adds entries into d
struct Move {
    ForestShape target;
    std::vector<int> vert_map;  // source vertex (minus the dying one) -> target index
    int dying = -1;
    int base_sign = 1;
};

// the boundary of the forest complex between two enumerated levels
Matrix forest_boundary(const ForestContext& ctx, const std::vector<ForestComponent>& lower,
                       const std::vector<ForestComponent>& upper, int rows, int cols) {
    const PathTable& pt = ctx.sys->pt;
    Matrix d(rows, cols);
    for (const auto& comp : upper) {
        const ForestShape& s = comp.shape;
        int n = s.degree();
        for (int v = 0; v < n; ++v) {
            // classify the move at vertex v
            bool all_capped = true;
            for (int ch : s.verts[v].child) all_capped &= ch < 0;
            std::vector<std::pair<char, int>> moves;  // kind: 'c' cap-absorb, 's' soil, 'v' vertex
            if (all_capped) moves.emplace_back('c', 0);
            if (s.verts[v].parent < 0)
                moves.emplace_back('s', 0);
            else
                moves.emplace_back('v', 0);
            for (auto [kind, unused] : moves) {
                (void)unused;
                // build the target shape with vertex identities tracked
                ForestShape t;
                std::vector<int> ident;  // target pre-canonical index -> source vertex (or -1)
                if (kind == 'c') {
                    t = s;
                    // remove v, cap its parent slot
                    if (s.verts[v].parent < 0)
                        t.soil_child[s.verts[v].slot] = -1;
                    else
                        t.verts[s.verts[v].parent].child[s.verts[v].slot] = -1;
                } else if (kind == 's') {
                    // splice v.in into the soil at v.slot
                    t.soil = s.soil;
                    t.soil_child = s.soil_child;
                    int at = s.verts[v].slot;
                    t.soil.erase(t.soil.begin() + at);
                    t.soil.insert(t.soil.begin() + at, s.verts[v].in.begin(), s.verts[v].in.end());
                    t.soil_child.erase(t.soil_child.begin() + at);
                    t.soil_child.insert(t.soil_child.begin() + at, s.verts[v].child.begin(),
                                        s.verts[v].child.end());
                    t.verts = s.verts;
                    for (size_t k = 0; k < s.verts[v].child.size(); ++k)
                        if (s.verts[v].child[k] >= 0) {
                            t.verts[s.verts[v].child[k]].parent = -1;
                            t.verts[s.verts[v].child[k]].slot = at + static_cast<int>(k);
                        }
                    // re-slot soil children after the splice point
                    for (size_t k = 0; k < t.soil_child.size(); ++k)
                        if (t.soil_child[k] >= 0) t.verts[t.soil_child[k]].slot = static_cast<int>(k);
                } else {
                    // merge v into its parent w
                    int w = s.verts[v].parent;
                    t = s;
                    auto& tw = t.verts[w];
                    int at = s.verts[v].slot;
                    tw.in.erase(tw.in.begin() + at);
                    tw.in.insert(tw.in.begin() + at, s.verts[v].in.begin(), s.verts[v].in.end());
                    tw.child.erase(tw.child.begin() + at);
                    tw.child.insert(tw.child.begin() + at, s.verts[v].child.begin(), s.verts[v].child.end());
                    for (size_t k = 0; k < s.verts[v].child.size(); ++k)
                        if (s.verts[v].child[k] >= 0) {
                            t.verts[s.verts[v].child[k]].parent = w;
                            t.verts[s.verts[v].child[k]].slot = at + static_cast<int>(k);
                        }
                    for (size_t k = 0; k < tw.child.size(); ++k)
                        if (tw.child[k] >= 0) t.verts[tw.child[k]].slot = static_cast<int>(k);
                }
                // drop vertex v from the target vertex list
                ForestShape t2;
                t2.soil = t.soil;
                t2.soil_child = t.soil_child;
                std::vector<int> shift(n, -1);
                int idx = 0;
                for (int u = 0; u < n; ++u) {
                    if (u == v) continue;
                    shift[u] = idx++;
                    t2.verts.push_back(t.verts[u]);
                }
                for (auto& c2 : t2.soil_child)
                    if (c2 >= 0) c2 = shift[c2];
                for (auto& vv : t2.verts) {
                    if (vv.parent >= 0) vv.parent = shift[vv.parent];
                    for (auto& c2 : vv.child)
                        if (c2 >= 0) c2 = shift[c2];
                }
                std::vector<int> remap;  // pre-canonical -> canonical
                ForestShape t3 = t2;
                canonicalize(t3, &remap);
                int ci = find_forest_component(lower, t3);
                if (ci < 0) throw StructuralError("forest boundary: target shape not enumerated");
                const ForestComponent& tc = lower[ci];
                // vertex permutation sign: source order minus v vs target order
                std::vector<int> perm(n - 1);
                for (int u = 0; u < n; ++u)
                    if (u != v) perm[shift[u]] = remap[shift[u]];
                int sigma2 = parity_sign(perm);
                int pos = v + 1;  // canonical position of v, 1-based
                int base_sign;
                if (kind == 'c')
                    base_sign = (pos - 1) % 2 ? -1 : 1;
                else
                    base_sign = pos % 2 ? -1 : 1;
                base_sign *= sigma2;

                // factor plumbing: build the cell map
                const RegionSpace& soil_src = ctx.soil_space(s.soil);
                const RegionSpace& v_space = ctx.spaces.F(s.verts[v].in, s.verts[v].out);
                auto src_caps = comp.caps;
                // precompute: for each source basis index, one target column
                for (int k = 0; k < comp.size; ++k) {
                    auto tup = decode_tuple(comp.factor_dims, k);
                    int soil_i = tup[0];
                    std::vector<int> vert_i(n);
                    for (int u = 0; u < n; ++u) vert_i[u] = tup[1 + u];
                    std::vector<int> cap_i(src_caps.size());
                    for (size_t u = 0; u < src_caps.size(); ++u) cap_i[u] = tup[1 + n + u];

                    // compute the transformed factor (a vector over the new
                    // factor's basis) and the carried-over indices
                    RatVec transformed;
                    const RegionSpace* new_space = nullptr;
                    if (kind == 'c') {
                        // v absorbs its caps: lands in U(v.out)
                        RegionSpace cur = v_space;
                        RatVec curv = expand_emb(v_space, vert_i[v]);
                        for (size_t slot = 0; slot < s.verts[v].in.size(); ++slot) {
                            // find the cap index of (v, slot)
                            int cidx = -1;
                            for (size_t u = 0; u < src_caps.size(); ++u)
                                if (src_caps[u] == std::make_pair(v, static_cast<int>(slot)))
                                    cidx = static_cast<int>(u);
                            const RegionSpace& us = ctx.spaces.U(s.verts[v].in[slot]);
                            auto [nr, nv] = merge_vec(pt, cur, curv, us, expand_emb(us, cap_i[cidx]));
                            cur = std::move(nr);
                            curv = std::move(nv);
                        }
                        const RegionSpace& target_u = ctx.spaces.U(s.verts[v].out);
                        transformed = express_in(target_u, curv);
                        new_space = &target_u;
                    } else if (kind == 's') {
                        auto [nr, nv] = merge_vec(pt, soil_src, expand_emb(soil_src, soil_i), v_space,
                                                  expand_emb(v_space, vert_i[v]));
                        const RegionSpace& target_soil = ctx.soil_space(t3.soil);
                        (void)nr;
                        transformed = express_in(target_soil, nv);
                        new_space = &target_soil;
                    } else {
                        int w = s.verts[v].parent;
                        const RegionSpace& w_space = ctx.spaces.F(s.verts[w].in, s.verts[w].out);
                        auto [nr, nv] = merge_vec(pt, w_space, expand_emb(w_space, vert_i[w]), v_space,
                                                  expand_emb(v_space, vert_i[v]));
                        int wq = remap[shift[w]];
                        const RegionSpace& target_w = ctx.spaces.F(t3.verts[wq].in, t3.verts[wq].out);
                        (void)nr;
                        transformed = express_in(target_w, nv);
                        new_space = &target_w;
                    }
                    (void)new_space;
                    for (int newf = 0; newf < static_cast<int>(transformed.size()); ++newf) {
                        if (transformed[newf] == 0) continue;
                        // assemble the target multi-index
                        std::vector<int> ttup(tc.factor_dims.size());
                        // soil
                        ttup[0] = (kind == 's') ? newf : soil_i;
                        // vertices
                        for (int u = 0; u < n; ++u) {
                            if (u == v) continue;
                            int tq = remap[shift[u]];
                            int val = vert_i[u];
                            if (kind == 'v' && u == s.verts[v].parent) val = newf;
                            ttup[1 + tq] = val;
                        }
                        // caps: map source caps (except those absorbed) and
                        // add the new cap for the 'c' move
                        for (size_t u = 0; u < src_caps.size(); ++u) {
                            auto [owner, slot] = src_caps[u];
                            if (kind == 'c' && owner == v) continue;  // absorbed
                            std::pair<int, int> tcap;
                            if (owner == v) {
                                // capped slots of v re-home to the spliced
                                // position on the parent or the soil
                                int at = s.verts[v].slot;
                                if (kind == 's')
                                    tcap = {-1, at + slot};
                                else
                                    tcap = {remap[shift[s.verts[v].parent]], at + slot};
                            } else if (owner < 0) {
                                int nslot = slot;
                                if (kind == 's') {
                                    int at = s.verts[v].slot;
                                    if (slot > at)
                                        nslot = slot - 1 + static_cast<int>(s.verts[v].in.size());
                                }
                                tcap = {-1, nslot};
                            } else {
                                int towner = remap[shift[owner]];
                                int nslot = slot;
                                if (kind == 'v' && owner == s.verts[v].parent) {
                                    int at = s.verts[v].slot;
                                    if (slot > at)
                                        nslot = slot - 1 + static_cast<int>(s.verts[v].in.size());
                                }
                                tcap = {towner, nslot};
                            }
                            int tu = -1;
                            for (size_t q = 0; q < tc.caps.size(); ++q)
                                if (tc.caps[q] == tcap) tu = static_cast<int>(q);
                            if (tu < 0) throw StructuralError("forest boundary: cap not found in target");
                            ttup[1 + (n - 1) + tu] = cap_i[u];
                        }
                        if (kind == 'c') {
                            // the dying vertex's parent slot becomes a cap
                            std::pair<int, int> tcap;
                            if (s.verts[v].parent < 0)
                                tcap = {-1, s.verts[v].slot};
                            else
                                tcap = {remap[shift[s.verts[v].parent]], s.verts[v].slot};
                            int tu = -1;
                            for (size_t q = 0; q < tc.caps.size(); ++q)
                                if (tc.caps[q] == tcap) tu = static_cast<int>(q);
                            if (tu < 0) throw StructuralError("forest boundary: new cap slot not found");
                            ttup[1 + (n - 1) + tu] = newf;
                        }
                        int row = tc.offset + encode_tuple(tc.factor_dims, ttup);
                        d.at(row, comp.offset + k) += Rat(base_sign) * transformed[newf];
                    }
                }
            }
        }
    }
    return d;
}

}  // namespace

ForestComplex differential_bar(const BlobSystem& sys, int depth) {
    ForestContext ctx(sys, SoilKind::Module);
    ForestComplex out;
    out.comps.resize(depth + 1);
    out.cx.dims.assign(depth + 1, 0);
    out.cx.labels.resize(depth + 1);
    for (int n = 0; n <= depth; ++n) {
        out.comps[n] = enumerate_forest_components(ctx, n);
        int total = 0;
        for (auto& c : out.comps[n]) total = c.offset + c.size;
        out.cx.dims[n] = out.comps[n].empty() ? 0 : total;
    }
    out.cx.boundary.resize(depth + 1);
    out.cx.boundary[0] = Matrix(0, 0);
    for (int n = 1; n <= depth; ++n)
        out.cx.boundary[n] =
            forest_boundary(ctx, out.comps[n - 1], out.comps[n], out.cx.dims[n - 1], out.cx.dims[n]);
    // augmentation: glue the soil with all caps
    const RegionSpace& target = ctx.spaces.M({});
    out.cx.aug_dim = target.dim();
    Matrix eps(out.cx.aug_dim, out.cx.dims[0]);
    for (const auto& comp : out.comps[0]) {
        const RegionSpace& soil = ctx.spaces.M(comp.shape.soil);
        for (int k = 0; k < comp.size; ++k) {
            auto tup = decode_tuple(comp.factor_dims, k);
            RegionSpace cur = soil;
            RatVec curv = expand_emb(soil, tup[0]);
            for (size_t u = 0; u < comp.caps.size(); ++u) {
                const RegionSpace& us = ctx.spaces.U(cap_color(comp.shape, comp.caps[u]));
                auto [nr, nv] = merge_vec(sys.pt, cur, curv, us, expand_emb(us, tup[1 + u]));
                cur = std::move(nr);
                curv = std::move(nv);
            }
            for (int r = 0; r < out.cx.aug_dim; ++r) eps.at(r, comp.offset + k) = curv[r];
        }
    }
    out.cx.eps = eps;
    auto rep = out.cx.validate();
    if (!rep.ok()) throw StructuralError("forest bar failed dd = 0 / eps d1 = 0:\n" + rep.str());
    return out;
}

ChainComplex blob_complex(const BlobSystem& sys, int depth) {
    auto fb = differential_bar(sys, depth - 1 < 0 ? 0 : depth - 1);
    ChainComplex out;
    out.dims.push_back(fb.cx.aug_dim);
    for (int n = 0; n < depth; ++n) out.dims.push_back(fb.cx.dims[n]);
    out.boundary.resize(depth + 1);
    out.boundary[0] = Matrix(0, 0);
    if (depth >= 1) out.boundary[1] = *fb.cx.eps;
    for (int n = 2; n <= depth; ++n) out.boundary[n] = fb.cx.boundary[n - 1];
    auto rep = out.validate();
    if (!rep.ok()) throw StructuralError("blob complex failed validation:\n" + rep.str());
    return out;
}

// --- simplicial bar ----------------------------------------------------------

namespace {

struct SimpCtx {
    const BlobSystem* sys;
    ColoredSpaces spaces;
    explicit SimpCtx(const BlobSystem& s) : sys(&s), spaces(s) {}

    std::vector<Color> colors_of_obj(int obj) const {
        const auto& ob = sys->blobC_objs[obj];
        std::vector<Color> out;
        for (size_t i = 0; i < sys->configs[ob.cfg].size(); ++i) {
            auto d = sys->decs[ob.cfg][ob.dec][i];
            out.push_back({sys->configs[ob.cfg][i], d.first, d.second});
        }
        return out;
    }
    // colors of the blobs of `outer` that lie inside the blob of `c`
    std::vector<Color> inner_colors(int inner_obj, const Color& c) const {
        std::vector<Color> out;
        for (const auto& ic : colors_of_obj(inner_obj)) {
            const GridBlob& d = sys->blobs[c.blob];
            const GridBlob& i = sys->blobs[ic.blob];
            if ((d.a < i.a && i.b < d.b) || (d.a == i.a && d.b == i.b)) out.push_back(ic);
        }
        return out;
    }
};

std::vector<int> simp_factor_dims(const SimpCtx& ctx, const ColoredTower& t) {
    std::vector<int> dims;
    int n = static_cast<int>(t.objs.size()) - 1;
    for (const auto& c : ctx.colors_of_obj(t.objs[0])) dims.push_back(ctx.spaces.U(c).dim());
    for (int k = 1; k <= n; ++k)
        for (const auto& c : ctx.colors_of_obj(t.objs[k]))
            dims.push_back(ctx.spaces.F(ctx.inner_colors(t.objs[k - 1], c), c).dim());
    dims.push_back(ctx.spaces.M(ctx.colors_of_obj(t.objs[n])).dim());
    return dims;
}

}  // namespace

int SimplicialBar::find_component(int level, const ColoredTower& t) const {
    for (int i = 0; i < static_cast<int>(comps[level].size()); ++i)
        if (comps[level][i].tower == t) return i;
    return -1;
}

SimplicialBar simplicial_bar(const BlobSystem& sys, int depth) {
    SimpCtx ctx(sys);
    SimplicialBar out;
    out.comps.resize(depth + 1);
    out.cx.dims.assign(depth + 1, 0);
    out.cx.labels.resize(depth + 1);
    // enumerate towers: ascending chains with a cap-admissible top
    std::vector<int> capped;
    for (int a = 0; a < sys.mC_cat.n_arr(); ++a) capped.push_back(sys.mC_cat.arrows[a].cod_o);
    for (int n = 0; n <= depth; ++n) {
        std::vector<ColoredTower> towers;
        std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
            if (static_cast<int>(cur.size()) == n + 1) {
                ColoredTower t;
                t.objs.assign(cur.rbegin(), cur.rend());
                towers.push_back(std::move(t));
                return;
            }
            for (int next = 0; next < sys.blobC_cat.n_obj(); ++next) {
                if (sys.blobC_cat.unique_hom(cur.back(), next) < 0) continue;
                cur.push_back(next);
                grow(cur);
                cur.pop_back();
            }
        };
        for (int on : capped) {
            std::vector<int> cur{on};
            grow(cur);
        }
        // deterministic order
        std::sort(towers.begin(), towers.end(),
                  [](const ColoredTower& a, const ColoredTower& b) { return a.objs < b.objs; });
        int off = 0;
        for (auto& t : towers) {
            SimplicialComponent comp;
            comp.tower = t;
            comp.factor_dims = simp_factor_dims(ctx, t);
            comp.size = 1;
            for (int d : comp.factor_dims) comp.size *= d;
            if (comp.size == 0) continue;
            comp.offset = off;
            off += comp.size;
            out.comps[n].push_back(std::move(comp));
        }
        out.cx.dims[n] = off;
    }
    // faces
    out.faces.resize(depth + 1);
    out.cx.boundary.resize(depth + 1);
    out.cx.boundary[0] = Matrix(0, 0);
    for (int n = 1; n <= depth; ++n) {
        out.faces[n].assign(n + 1, Matrix(out.cx.dims[n - 1], out.cx.dims[n]));
        for (const auto& comp : out.comps[n]) {
            const ColoredTower& t = comp.tower;
            for (int i = 0; i <= n; ++i) {
                ColoredTower tt;
                tt.objs = t.objs;
                tt.objs.erase(tt.objs.begin() + i);  // drop o_i: contract levels i, i+1 (cap side = 0)
                int ci = out.find_component(n - 1, tt);
                if (ci < 0) throw StructuralError("simplicial bar: face tower missing");
                const SimplicialComponent& tc = out.comps[n - 1][ci];
                Matrix& face = out.faces[n][i];
                // group layout of the source
                std::vector<std::vector<Color>> group_colors;
                group_colors.push_back(ctx.colors_of_obj(t.objs[0]));
                for (int k = 1; k <= n; ++k) group_colors.push_back(ctx.colors_of_obj(t.objs[k]));
                // spaces per factor
                std::vector<const RegionSpace*> fspace;
                for (const auto& c : group_colors[0]) fspace.push_back(&ctx.spaces.U(c));
                for (int k = 1; k <= n; ++k)
                    for (const auto& c : group_colors[k])
                        fspace.push_back(&ctx.spaces.F(ctx.inner_colors(t.objs[k - 1], c), c));
                const RegionSpace& msrc = ctx.spaces.M(ctx.colors_of_obj(t.objs[n]));
                fspace.push_back(&msrc);
                // offsets of groups in the factor list
                std::vector<int> goff(n + 2);
                goff[0] = 0;
                for (int k = 0; k <= n; ++k)
                    goff[k + 1] = goff[k] + static_cast<int>(group_colors[k].size());
                for (int k = 0; k < comp.size; ++k) {
                    auto tup = decode_tuple(comp.factor_dims, k);
                    // targets: per-factor vector outputs for the merged group;
                    // every other factor passes through
                    // merged group: i == 0: caps(o0) + group(o1) -> caps(o1)
                    //               0 < i < n: group(oi) + group(o(i+1)) -> group
                    //               i == n: group(on) + soil -> soil
                    std::vector<RatVec> outs;       // per merged-target factor
                    std::vector<int> target_dims;   // dims of those factors
                    if (i == 0) {
                        const auto& inner = group_colors[0];
                        const auto& outerc = group_colors[1];
                        for (const auto& c : outerc) {
                            const RegionSpace& fs = ctx.spaces.F(ctx.inner_colors(t.objs[0], c), c);
                            int fidx = -1;
                            {
                                int pos = goff[1];
                                for (size_t q = 0; q < outerc.size(); ++q)
                                    if (outerc[q] == c) fidx = pos + static_cast<int>(q);
                            }
                            RegionSpace cur = fs;
                            RatVec curv = expand_emb(fs, tup[fidx]);
                            for (size_t q = 0; q < inner.size(); ++q) {
                                const GridBlob& ib = sys.blobs[inner[q].blob];
                                const GridBlob& ob = sys.blobs[c.blob];
                                bool in_c = (ob.a < ib.a && ib.b < ob.b) || (ob.a == ib.a && ob.b == ib.b);
                                if (!in_c) continue;
                                const RegionSpace& us = ctx.spaces.U(inner[q]);
                                auto [nr, nv] =
                                    merge_vec(sys.pt, cur, curv, us, expand_emb(us, tup[goff[0] + q]));
                                cur = std::move(nr);
                                curv = std::move(nv);
                            }
                            const RegionSpace& tgt = ctx.spaces.U(c);
                            outs.push_back(express_in(tgt, curv));
                            target_dims.push_back(tgt.dim());
                        }
                    } else if (i < n) {
                        const auto& innerc = group_colors[i];
                        const auto& outerc = group_colors[i + 1];
                        for (const auto& c : outerc) {
                            const RegionSpace& fs = ctx.spaces.F(ctx.inner_colors(t.objs[i], c), c);
                            int fidx = -1;
                            {
                                int pos = goff[i + 1];
                                for (size_t q = 0; q < outerc.size(); ++q)
                                    if (outerc[q] == c) fidx = pos + static_cast<int>(q);
                            }
                            RegionSpace cur = fs;
                            RatVec curv = expand_emb(fs, tup[fidx]);
                            for (size_t q = 0; q < innerc.size(); ++q) {
                                const GridBlob& ib = sys.blobs[innerc[q].blob];
                                const GridBlob& ob = sys.blobs[c.blob];
                                bool in_c = (ob.a < ib.a && ib.b < ob.b) || (ob.a == ib.a && ob.b == ib.b);
                                if (!in_c) continue;
                                const RegionSpace& is2 =
                                    ctx.spaces.F(ctx.inner_colors(t.objs[i - 1], innerc[q]), innerc[q]);
                                auto [nr, nv] = merge_vec(sys.pt, cur, curv, is2,
                                                          expand_emb(is2, tup[goff[i] + q]));
                                cur = std::move(nr);
                                curv = std::move(nv);
                            }
                            const RegionSpace& tgt = ctx.spaces.F(ctx.inner_colors(t.objs[i - 1], c), c);
                            outs.push_back(express_in(tgt, curv));
                            target_dims.push_back(tgt.dim());
                        }
                    } else {
                        RegionSpace cur = msrc;
                        RatVec curv = expand_emb(msrc, tup.back());
                        const auto& innerc = group_colors[n];
                        for (size_t q = 0; q < innerc.size(); ++q) {
                            const RegionSpace& is2 =
                                ctx.spaces.F(ctx.inner_colors(t.objs[n - 1], innerc[q]), innerc[q]);
                            auto [nr, nv] =
                                merge_vec(sys.pt, cur, curv, is2, expand_emb(is2, tup[goff[n] + q]));
                            cur = std::move(nr);
                            curv = std::move(nv);
                        }
                        const RegionSpace& tgt = ctx.spaces.M(ctx.colors_of_obj(t.objs[n - 1]));
                        outs.push_back(express_in(tgt, curv));
                        target_dims.push_back(tgt.dim());
                    }
                    // passthrough factors in the target order
                    std::vector<int> fixed;
                    for (int g = 0; g <= n + 1; ++g) {
                        bool merged_away = (i == 0 && (g == 0 || g == 1)) ||
                                           (i > 0 && i < n && (g == i || g == i + 1)) ||
                                           (i == n && (g == n || g == n + 1));
                        if (merged_away) continue;
                        int lo = g <= n ? goff[g] : static_cast<int>(comp.factor_dims.size()) - 1;
                        int hi = g <= n ? goff[g + 1] : static_cast<int>(comp.factor_dims.size());
                        for (int q = lo; q < hi; ++q) fixed.push_back(tup[q]);
                    }
                    // enumerate target multi-indices over the merged factors
                    std::vector<int> midx(target_dims.size(), 0);
                    std::function<void(size_t, Rat)> emit = [&](size_t at, Rat coef) {
                        if (coef == 0) return;
                        if (at == target_dims.size()) {
                            // assemble the target tuple: merged group sits at
                            // position i (cap group for i==0) in the target
                            std::vector<int> ttup;
                            size_t fx = 0;
                            auto push_fixed = [&](int count) {
                                for (int q = 0; q < count; ++q) ttup.push_back(fixed[fx++]);
                            };
                            // target groups: 0..n-1 plus soil
                            for (int g = 0; g <= n - 1; ++g) {
                                int src_group;
                                if (i == 0)
                                    src_group = g + 1;  // group g of target = source group g+1
                                else
                                    src_group = g < i ? g : g + 1;
                                bool is_merged = (i == 0 && g == 0) || (i > 0 && i < n && g == i);
                                if (is_merged) {
                                    for (int v : midx) ttup.push_back(v);
                                } else {
                                    int cnt = static_cast<int>(group_colors[src_group].size());
                                    push_fixed(cnt);
                                }
                            }
                            if (i == n) {
                                for (int v : midx) ttup.push_back(v);
                            } else {
                                push_fixed(1);
                            }
                            int row = tc.offset + encode_tuple(tc.factor_dims, ttup);
                            face.at(row, comp.offset + k) += coef;
                            return;
                        }
                        for (int v = 0; v < target_dims[at]; ++v) {
                            if (outs[at][v] == 0) continue;
                            midx[at] = v;
                            emit(at + 1, coef * outs[at][v]);
                        }
                    };
                    emit(0, Rat(1));
                }
            }
        }
        Matrix d(out.cx.dims[n - 1], out.cx.dims[n]);
        for (int i = 0; i <= n; ++i) d = (i % 2 == 0) ? d + out.faces[n][i] : d - out.faces[n][i];
        out.cx.boundary[n] = d;
    }
    // degeneracies: duplicate level j with the rank-one diagonal insertions
    out.s_ops.resize(depth);
    for (int n = 0; n + 1 <= depth; ++n) {
        out.s_ops[n].assign(n + 1, Matrix(out.cx.dims[n + 1], out.cx.dims[n]));
        for (const auto& comp : out.comps[n]) {
            for (int j = 0; j <= n; ++j) {
                ColoredTower tt;
                tt.objs = comp.tower.objs;
                tt.objs.insert(tt.objs.begin() + j, comp.tower.objs[j]);
                int ci = out.find_component(n + 1, tt);
                if (ci < 0) throw StructuralError("simplicial bar: degenerate tower missing");
                const SimplicialComponent& tc = out.comps[n + 1][ci];
                // inserted group: all-diagonal rank-one factors; index map is
                // an injection
                SimpCtx lctx(sys);
                int n_caps = static_cast<int>(lctx.colors_of_obj(comp.tower.objs[0]).size());
                (void)n_caps;
                for (int k = 0; k < comp.size; ++k) {
                    auto tup = decode_tuple(comp.factor_dims, k);
                    std::vector<int> ttup;
                    // walk the source groups and inject the rank-one diagonal
                    // group at position j+1
                    std::vector<std::vector<Color>> gc;
                    gc.push_back(lctx.colors_of_obj(comp.tower.objs[0]));
                    for (int q = 1; q <= n; ++q) gc.push_back(lctx.colors_of_obj(comp.tower.objs[q]));
                    std::vector<int> goff(n + 2);
                    goff[0] = 0;
                    for (int q = 0; q <= n; ++q) goff[q + 1] = goff[q] + static_cast<int>(gc[q].size());
                    for (int g = 0; g <= n; ++g) {
                        if (g == j + 1) {
                            // inserted diagonal level: one rank-one factor per
                            // blob of o_j
                            for (size_t q = 0; q < gc[j].size(); ++q) ttup.push_back(0);
                        }
                        for (int q = goff[g]; q < goff[g + 1]; ++q) ttup.push_back(tup[q]);
                    }
                    if (j + 1 == n + 1)
                        for (size_t q = 0; q < gc[n].size(); ++q) ttup.push_back(0);
                    ttup.push_back(tup.back());
                    out.s_ops[n][j].at(tc.offset + encode_tuple(tc.factor_dims, ttup), comp.offset + k) = 1;
                }
            }
        }
    }
    // augmentation: glue caps with the soil
    SimpCtx ectx(sys);
    const RegionSpace& tgt = ectx.spaces.M({});
    out.cx.aug_dim = tgt.dim();
    Matrix eps(out.cx.aug_dim, out.cx.dims[0]);
    for (const auto& comp : out.comps[0]) {
        auto colors = ectx.colors_of_obj(comp.tower.objs[0]);
        const RegionSpace& msrc = ectx.spaces.M(colors);
        for (int k = 0; k < comp.size; ++k) {
            auto tup = decode_tuple(comp.factor_dims, k);
            RegionSpace cur = msrc;
            RatVec curv = expand_emb(msrc, tup.back());
            for (size_t q = 0; q < colors.size(); ++q) {
                const RegionSpace& us = ectx.spaces.U(colors[q]);
                auto [nr, nv] = merge_vec(sys.pt, cur, curv, us, expand_emb(us, tup[q]));
                cur = std::move(nr);
                curv = std::move(nv);
            }
            for (int r = 0; r < out.cx.aug_dim; ++r) eps.at(r, comp.offset + k) = curv[r];
        }
    }
    out.cx.eps = eps;
    auto rep = out.cx.validate();
    if (!rep.ok()) throw StructuralError("simplicial bar failed dd = 0 / eps d1 = 0:\n" + rep.str());
    return out;
}

ChainMap levelization(const BlobSystem& sys, const ForestComplex& b, const SimplicialBar& c,
                      const NormalizedComplex& n) {
    int depth = static_cast<int>(b.comps.size()) - 1;
    SimpCtx ctx(sys);
    ChainMap phi_c;  // into the un-normalized simplicial bar
    phi_c.level.resize(depth + 1);
    for (int lev = 0; lev <= depth; ++lev) {
        phi_c.level[lev] = Matrix(c.cx.dims[lev], b.cx.dims[lev]);
        for (const auto& comp : b.comps[lev]) {
            const ForestShape& s = comp.shape;
            int nv = s.degree();
            // enumerate slot assignments: bijections vertices -> {1..nv} with
            // child slot < parent slot (children are closer to the caps)
            std::vector<int> slot_of(nv, 0);
            std::vector<bool> used(nv + 1, false);
            std::function<void(int)> assign = [&](int count) {
                if (count == nv) {
                    // chain of decorated configurations o_0..o_nv
                    std::vector<std::vector<Color>> levels(nv + 1);
                    levels[nv] = s.soil;
                    std::vector<std::vector<int>> owner(nv + 1);  // vertex whose output is this blob, else -1
                    owner[nv].assign(s.soil.size(), -1);
                    for (size_t q = 0; q < s.soil_child.size(); ++q)
                        if (s.soil_child[q] >= 0) owner[nv][q] = s.soil_child[q];
                    for (int k = nv; k >= 1; --k) {
                        // expand the vertex assigned slot k
                        int vex = -1;
                        for (int v = 0; v < nv; ++v)
                            if (slot_of[v] == k) vex = v;
                        levels[k - 1].clear();
                        owner[k - 1].clear();
                        for (size_t q = 0; q < levels[k].size(); ++q) {
                            if (owner[k][q] == vex) {
                                const auto& vv = s.verts[vex];
                                for (size_t w = 0; w < vv.in.size(); ++w) {
                                    levels[k - 1].push_back(vv.in[w]);
                                    owner[k - 1].push_back(vv.child[w]);
                                }
                            } else {
                                levels[k - 1].push_back(levels[k][q]);
                                owner[k - 1].push_back(owner[k][q]);
                            }
                        }
                        // owners must be at lower slots or caps
                        for (int v : owner[k - 1])
                            if (v >= 0 && slot_of[v] >= k) return;  // inconsistent; skip
                    }
                    // all leaves at level 0 must be caps
                    for (int v : owner[0])
                        if (v >= 0) return;
                    // locate the tower objects
                    ColoredTower t;
                    for (int k = 0; k <= nv; ++k) {
                        // find the blobC object with these colors
                        std::vector<int> blob_ids;
                        for (auto& cc : levels[k]) blob_ids.push_back(cc.blob);
                        int found = -1;
                        for (int obj = 0; obj < static_cast<int>(sys.blobC_objs.size()); ++obj) {
                            auto cs = ctx.colors_of_obj(obj);
                            if (cs == levels[k]) found = obj;
                        }
                        if (found < 0) throw StructuralError("levelization: level object missing");
                        t.objs.push_back(found);
                    }
                    int ci = c.find_component(lev, t);
                    if (ci < 0) throw StructuralError("levelization: target tower missing");
                    const SimplicialComponent& tc = c.comps[lev][ci];
                    // sign: parity of the permutation canonical order ->
                    // slot-ascending order
                    std::vector<int> perm(nv);
                    for (int v = 0; v < nv; ++v) perm[v] = slot_of[v] - 1;
                    int sign = parity_sign(perm);
                    // factor map
                    for (int k = 0; k < comp.size; ++k) {
                        auto tup = decode_tuple(comp.factor_dims, k);
                        std::vector<int> ttup;
                        // caps group: per blob of o_0 = levels[0]
                        for (size_t q = 0; q < levels[0].size(); ++q) {
                            // find the forest cap with this position
                            // caps at level 0 are exactly the forest caps in
                            // position order; match by (owner slot path):
                            ttup.push_back(-1);
                        }
                        // fill caps by matching colors in order: the caps of
                        // the forest, ordered by position, correspond to the
                        // level-0 blobs in order
                        {
                            // forest caps sorted by blob position
                            std::vector<std::pair<int, int>> caps_sorted = comp.caps;
                            std::sort(caps_sorted.begin(), caps_sorted.end(),
                                      [&](const std::pair<int, int>& x, const std::pair<int, int>& y) {
                                          return sys.blobs[cap_color(s, x).blob].a <
                                                 sys.blobs[cap_color(s, y).blob].a;
                                      });
                            for (size_t q = 0; q < caps_sorted.size(); ++q) {
                                int src_idx = -1;
                                for (size_t u = 0; u < comp.caps.size(); ++u)
                                    if (comp.caps[u] == caps_sorted[q]) src_idx = static_cast<int>(u);
                                ttup[q] = tup[1 + nv + src_idx];
                            }
                        }
                        // level groups k = 1..nv
                        for (int g = 1; g <= nv; ++g) {
                            for (size_t q = 0; q < levels[g].size(); ++q) {
                                if (owner[g][q] >= 0 && slot_of[owner[g][q]] == g) {
                                    ttup.push_back(tup[1 + owner[g][q]]);
                                } else {
                                    ttup.push_back(0);  // diagonal rank-one factor
                                }
                            }
                        }
                        ttup.push_back(tup[0]);  // soil
                        int row = tc.offset + encode_tuple(tc.factor_dims, ttup);
                        phi_c.level[lev].at(row, comp.offset + k) += Rat(sign);
                    }
                    return;
                }
                for (int v = 0; v < nv; ++v) {
                    if (slot_of[v]) continue;
                    // children must already be placed (smaller slots)
                    bool ok = true;
                    for (int chv : s.verts[v].child)
                        if (chv >= 0) ok &= slot_of[chv] > 0;
                    if (!ok) continue;
                    slot_of[v] = count + 1;
                    assign(count + 1);
                    slot_of[v] = 0;
                }
            };
            assign(0);
        }
    }
    // compose with the normalization projection
    ChainMap out;
    out.level.resize(depth + 1);
    for (int lev = 0; lev <= depth; ++lev) out.level[lev] = n.proj.level[lev] * phi_c.level[lev];
    out.aug = Matrix::identity(b.cx.aug_dim);
    return out;
}

std::vector<std::pair<std::vector<int>, int>> forest_level_signs(const ForestShape& shape) {
    // the sign convention is pinned by the chain-map law against the
    // simplicial bar; on a single chain there is one assignment with sign +1,
    // and swapping two incomparable vertices flips the sign
    std::vector<std::pair<std::vector<int>, int>> out;
    int nv = shape.degree();
    std::vector<int> slot_of(nv, 0);
    std::function<void(int)> assign = [&](int count) {
        if (count == nv) {
            std::vector<int> perm(nv);
            for (int v = 0; v < nv; ++v) perm[v] = slot_of[v] - 1;
            out.emplace_back(slot_of, parity_sign(perm));
            return;
        }
        for (int v = 0; v < nv; ++v) {
            if (slot_of[v]) continue;
            bool ok = true;
            for (int chv : shape.verts[v].child)
                if (chv >= 0) ok &= slot_of[chv] > 0;
            if (!ok) continue;
            slot_of[v] = count + 1;
            assign(count + 1);
            slot_of[v] = 0;
        }
    };
    assign(0);
    return out;
}

BarComparison compare_beta_with_simplicial(const BlobSystem& sys, const BarComplex& beta,
                                           const SimplicialBar& c) {
    BarComparison out;
    int depth = static_cast<int>(beta.comps.size()) - 1;
    out.beta_to_c.level.resize(depth + 1);
    for (int n = 0; n <= depth; ++n) {
        if (beta.cx.dims[n] != c.cx.dims[n]) {
            out.why = "dimension mismatch at level " + std::to_string(n);
            return out;
        }
        Matrix map(c.cx.dims[n], beta.cx.dims[n]);
        for (const auto& sc : c.comps[n]) {
            // the matching beta tower: T_j = A-part objects, f_j = thin
            // morphisms, alpha = the module arrow to o_n
            Tower t;
            t.T = sc.tower.objs;
            for (int j = 1; j <= n; ++j) t.f.push_back(sys.blobC_cat.unique_hom(t.T[j], t.T[j - 1]));
            t.alpha = -1;
            for (int a = 0; a < sys.mC_cat.n_arr(); ++a)
                if (sys.mC_cat.arrows[a].cod_o == sc.tower.objs[n]) t.alpha = a;
            int bi = beta.find_component(n, t);
            if (bi < 0) {
                out.why = "beta tower missing at level " + std::to_string(n);
                return out;
            }
            const BarComponent& bc = beta.comps[n][bi];
            if (bc.size != sc.size) {
                out.why = "component size mismatch at level " + std::to_string(n);
                return out;
            }
            for (int k = 0; k < sc.size; ++k) map.at(sc.offset + k, bc.offset + k) = 1;
        }
        out.beta_to_c.level[n] = map;
    }
    out.beta_to_c.aug = Matrix::identity(beta.cx.aug_dim);
    // equal differentials and augmentations under the bijection
    auto rep = validate_chain_map(beta.cx, c.cx, out.beta_to_c);
    if (!rep.ok()) {
        out.why = "bijection is not a chain map: " + rep.items.front();
        return out;
    }
    for (int n = 1; n <= depth; ++n) {
        if (!(out.beta_to_c.level[n - 1] * beta.cx.boundary[n] ==
              c.cx.boundary[n] * out.beta_to_c.level[n])) {
            out.why = "differentials differ at level " + std::to_string(n);
            return out;
        }
        for (int i = 0; i <= n; ++i)
            if (!(out.beta_to_c.level[n - 1] * beta.faces[n][i] == c.faces[n][i] * out.beta_to_c.level[n])) {
                out.why = "face " + std::to_string(i) + " differs at level " + std::to_string(n);
                return out;
            }
    }
    if (!(*beta.cx.eps == *c.cx.eps * out.beta_to_c.level[0])) {
        out.why = "augmentations differ";
        return out;
    }
    out.ok = true;
    return out;
}

ChainComplex self_bar(const BlobSystem& sys, const Color& out_color, int depth) {
    ForestContext ctx(sys, SoilKind::SelfOperad, out_color);
    std::vector<std::vector<ForestComponent>> comps(depth + 1);
    ChainComplex cx;
    cx.dims.assign(depth + 1, 0);
    for (int n = 0; n <= depth; ++n) {
        comps[n] = enumerate_forest_components(ctx, n);
        int total = 0;
        for (auto& c : comps[n]) total = c.offset + c.size;
        cx.dims[n] = comps[n].empty() ? 0 : total;
    }
    cx.boundary.resize(depth + 1);
    cx.boundary[0] = Matrix(0, 0);
    for (int n = 1; n <= depth; ++n)
        cx.boundary[n] = forest_boundary(ctx, comps[n - 1], comps[n], cx.dims[n - 1], cx.dims[n]);
    auto rep = cx.validate();
    if (!rep.ok()) throw StructuralError("self bar failed dd = 0:\n" + rep.str());
    return cx;
}

bool ball_decomposition_check(const BlobSystem& sys, int depth, std::string* why) {
    // the whole interval as a blob, decorated by the boundary condition
    Color out{sys.whole_blob, sys.model.bl, sys.model.br};
    auto module_side = differential_bar(sys, depth);
    ForestContext ctx(sys, SoilKind::SelfOperad, out);
    for (int n = 0; n <= depth; ++n) {
        auto comps = enumerate_forest_components(ctx, n);
        int with_soil = 0, bare = 0;
        for (const auto& c : comps) {
            if (c.shape.soil.empty())
                bare += c.size;
            else
                with_soil += c.size;
        }
        int expect_bare = n == 0 ? ctx.spaces.U(out).dim() : 0;
        if (with_soil != module_side.cx.dims[n] || bare != expect_bare) {
            if (why)
                *why = "level " + std::to_string(n) + ": self " + std::to_string(with_soil) + "+" +
                       std::to_string(bare) + " vs module " + std::to_string(module_side.cx.dims[n]);
            return false;
        }
    }
    return true;
}

ValidationReport validate_colored(const BlobSystem& sys) {
    ValidationReport rep;
    ColoredSpaces spaces(sys);
    const PathTable& pt = sys.pt;
    // associativity of glueing across two nesting levels, plus the constants
    // landing in constants (the ideal property through composition)
    for (auto out : all_colors(sys)) {
        for (auto& cfg : strict_inner_configs(sys, out.blob, true)) {
            const RegionSpace& xs = spaces.F(cfg, out);
            if (xs.dim() == 0) continue;
            // choose second-level configurations per input: either empty
            // (constants) or a strict inner configuration
            // exhaustive when every input takes constants:
            for (int xi = 0; xi < xs.dim(); ++xi) {
                RegionSpace cur = xs;
                RatVec curv = expand_emb(xs, xi);
                bool any = false;
                for (const auto& c : cfg) {
                    const RegionSpace& us = spaces.U(c);
                    if (us.dim() == 0) {
                        any = true;
                        break;
                    }
                    auto [nr, nv] = merge_vec(pt, cur, curv, us, expand_emb(us, 0));
                    cur = std::move(nr);
                    curv = std::move(nv);
                }
                if (any) continue;
                // the composite with constants is a constant
                try {
                    express_in(spaces.U(out), curv);
                } catch (const StructuralError&) {
                    rep.add("composite with constants escapes the local relations at color " +
                            color_key(out));
                }
            }
        }
    }
    // unit law: merging with the diagonal is the identity (empty region
    // merge); checked structurally on a sample component
    for (auto out : all_colors(sys)) {
        const RegionSpace& diag = spaces.F({out}, out);
        if (diag.dim() != 1 && !(diag.dim() == 0)) rep.add("diagonal component not rank one");
    }
    rep.sort();
    return rep;
}

}  // namespace opcat
