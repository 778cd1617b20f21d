#include "opcat/blob.hpp"

#include <algorithm>
#include <functional>

#include "opcat/common.hpp"

namespace opcat {

ValidationReport validate_blob_model(const BlobModel& m) {
    ValidationReport rep;
    if (m.N < 1) throw StructuralError("blob model: N must be at least 1");
    if (m.n_v() < 1) throw StructuralError("blob model: no vertices");
    for (const auto& e : m.edges)
        if (e.src < 0 || e.src >= m.n_v() || e.dst < 0 || e.dst >= m.n_v())
            throw StructuralError("blob model: edge endpoints out of range");
    if (m.bl < 0 || m.bl >= m.n_v() || m.br < 0 || m.br >= m.n_v())
        throw StructuralError("blob model: boundary labels out of range");
    for (size_t r = 0; r < m.relations.size(); ++r) {
        const auto& rel = m.relations[r];
        if (rel.terms.empty()) {
            rep.add("relation " + std::to_string(r) + ": empty");
            continue;
        }
        if (rel.len < 1) rep.add("relation " + std::to_string(r) + ": non-positive length");
        for (const auto& [coef, path] : rel.terms) {
            (void)coef;
            if (static_cast<int>(path.size()) != rel.len) {
                rep.add("relation " + std::to_string(r) + ": inhomogeneous term length");
                continue;
            }
            int at = rel.src;
            bool ok = true;
            for (int e : path) {
                if (e < 0 || e >= static_cast<int>(m.edges.size()) || m.edges[e].src != at) {
                    ok = false;
                    break;
                }
                at = m.edges[e].dst;
            }
            if (!ok || at != rel.tgt) rep.add("relation " + std::to_string(r) + ": term is not a path src->tgt");
        }
    }
    rep.sort();
    return rep;
}

const std::vector<std::vector<int>>& PathTable::paths(int len, int src, int tgt) const {
    auto key = std::make_tuple(len, src, tgt);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (len == 0) {
        if (src == tgt) out.push_back({});
    } else {
        for (size_t e = 0; e < model.edges.size(); ++e) {
            if (model.edges[e].dst != tgt) continue;
            for (const auto& p : paths(len - 1, src, model.edges[e].src)) {
                auto q = p;
                q.push_back(static_cast<int>(e));
                out.push_back(std::move(q));
            }
        }
        std::sort(out.begin(), out.end());
    }
    return cache.emplace(key, std::move(out)).first->second;
}

int PathTable::index_of(int len, int src, int tgt, const std::vector<int>& p) const {
    const auto& ps = paths(len, src, tgt);
    for (int i = 0; i < static_cast<int>(ps.size()); ++i)
        if (ps[i] == p) return i;
    return -1;
}

namespace {

std::string path_name(const BlobModel& m, const std::vector<int>& p, int src) {
    if (p.empty()) return m.vnames[src];
    std::string s;
    for (int e : p) s += m.edges[e].name;
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

}  // namespace

RegionSpace make_region(const PathTable& pt, std::vector<Interval> iv, std::vector<bool> relations_at,
                        bool collar_mismatch) {
    RegionSpace out;
    // sort intervals and their flags together by position
    std::vector<int> order(iv.size());
    for (size_t i = 0; i < iv.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return iv[x].a < iv[y].a; });
    std::vector<Interval> siv;
    std::vector<bool> flags;
    for (int i : order) {
        siv.push_back(iv[i]);
        flags.push_back(relations_at[i]);
    }
    out.intervals = std::move(siv);
    out.zero = collar_mismatch;
    if (out.zero) {
        out.ambient_dim = 0;
        return out;
    }
    out.ambient_dim = 1;
    for (const auto& i : out.intervals) {
        int c = static_cast<int>(pt.paths(i.b - i.a, i.la, i.lb).size());
        out.interval_counts.push_back(c);
        out.ambient_dim *= c;
    }
    // per-interval factor bases: path vectors for plain intervals, the
    // reduced relation span otherwise
    bool all_plain = true;
    std::vector<std::vector<RatVec>> factors;
    std::vector<std::vector<std::string>> factor_labels;
    for (size_t i = 0; i < out.intervals.size(); ++i) {
        const Interval& iv2 = out.intervals[i];
        std::vector<RatVec> f;
        std::vector<std::string> labels;
        if (flags[i]) {
            all_plain = false;
            f = u_vectors(pt, GridBlob{iv2.a, iv2.b}, iv2.la, iv2.lb);
            for (size_t k = 0; k < f.size(); ++k) labels.push_back("u" + std::to_string(k));
        } else {
            const auto& ps = pt.paths(iv2.b - iv2.a, iv2.la, iv2.lb);
            for (size_t k = 0; k < ps.size(); ++k) {
                RatVec e(ps.size());
                e[k] = 1;
                f.push_back(std::move(e));
                labels.push_back(path_name(pt.m(), ps[k], iv2.la));
            }
        }
        factors.push_back(std::move(f));
        factor_labels.push_back(std::move(labels));
    }
    out.plain = all_plain;
    std::vector<int> counts;
    int total = out.intervals.empty() ? 1 : 1;
    for (auto& f : factors) {
        counts.push_back(static_cast<int>(f.size()));
        total *= static_cast<int>(f.size());
    }
    for (int k = 0; k < total; ++k) {
        auto tup = decode_tuple(counts, k);
        RatVec v(out.ambient_dim);
        for (int amb = 0; amb < out.ambient_dim; ++amb) {
            auto at = decode_tuple(out.interval_counts, amb);
            Rat c = 1;
            for (size_t i = 0; i < factors.size(); ++i) {
                c *= factors[i][tup[i]][at[i]];
                if (c == 0) break;
            }
            v[amb] = c;
        }
        out.emb.push_back(std::move(v));
        std::string label;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (!label.empty()) label += "·";
            label += factor_labels[i][tup[i]];
        }
        if (label.empty()) label = "⟨⟩";
        out.basis.labels.push_back(label);
    }
    return out;
}

RegionSpace make_plain_region(const PathTable& pt, std::vector<Interval> iv, bool collar_mismatch) {
    std::vector<bool> flags(iv.size(), false);
    return make_region(pt, std::move(iv), std::move(flags), collar_mismatch);
}

std::vector<RatVec> u_vectors(const PathTable& pt, const GridBlob& d, int l, int r) {
    const BlobModel& m = pt.m();
    int len = d.b - d.a;
    int dim = static_cast<int>(pt.paths(len, l, r).size());
    RowSpan span(dim);
    for (const auto& rel : m.relations) {
        if (rel.len > len) continue;
        for (int s = 0; s + rel.len <= len; ++s) {
            int suffix = len - s - rel.len;
            for (const auto& p : pt.paths(s, l, rel.src))
                for (const auto& q : pt.paths(suffix, rel.tgt, r)) {
                    RatVec v(dim);
                    for (const auto& [coef, mid] : rel.terms) {
                        std::vector<int> full = p;
                        full.insert(full.end(), mid.begin(), mid.end());
                        full.insert(full.end(), q.begin(), q.end());
                        v[pt.index_of(len, l, r, full)] += coef;
                    }
                    span.add(std::move(v));
                }
        }
    }
    return span.rows;
}

RegionSpace make_relations_region(const PathTable& pt, const std::vector<Interval>& iv) {
    std::vector<bool> flags(iv.size(), true);
    return make_region(pt, iv, std::move(flags));
}

std::vector<Interval> merge_intervals(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::vector<Interval> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> out;
    for (const auto& iv : all) {
        if (!out.empty() && out.back().b == iv.a) {
            out.back().b = iv.b;
            out.back().lb = iv.lb;
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

int merge_ambient(const PathTable& pt, const RegionSpace& a, const RegionSpace& b, const RegionSpace& c,
                  int ia, int ib) {
    auto ta = decode_tuple(a.interval_counts, ia);
    auto tb = decode_tuple(b.interval_counts, ib);
    struct Piece {
        Interval iv;
        const std::vector<int>* path;
    };
    std::vector<Piece> pieces;
    for (size_t i = 0; i < a.intervals.size(); ++i)
        pieces.push_back(
            {a.intervals[i],
             &pt.paths(a.intervals[i].b - a.intervals[i].a, a.intervals[i].la, a.intervals[i].lb)[ta[i]]});
    for (size_t i = 0; i < b.intervals.size(); ++i)
        pieces.push_back(
            {b.intervals[i],
             &pt.paths(b.intervals[i].b - b.intervals[i].a, b.intervals[i].la, b.intervals[i].lb)[tb[i]]});
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.iv.a < y.iv.a; });
    std::vector<int> tc(c.intervals.size());
    size_t at = 0;
    for (size_t ci = 0; ci < c.intervals.size(); ++ci) {
        const Interval& civ = c.intervals[ci];
        std::vector<int> path;
        int cursor = civ.a;
        while (at < pieces.size() && pieces[at].iv.a == cursor && pieces[at].iv.b <= civ.b) {
            path.insert(path.end(), pieces[at].path->begin(), pieces[at].path->end());
            cursor = pieces[at].iv.b;
            ++at;
        }
        if (cursor != civ.b) throw StructuralError("merge_ambient: pieces do not tile the composite interval");
        tc[ci] = pt.index_of(civ.b - civ.a, civ.la, civ.lb, path);
        if (tc[ci] < 0) throw StructuralError("merge_ambient: glued path not found");
    }
    return encode_tuple(c.interval_counts, tc);
}

RatVec express_in(const RegionSpace& c, const RatVec& ambient) {
    if (c.plain) return ambient;
    Matrix a(c.ambient_dim, c.dim());
    for (int j = 0; j < c.dim(); ++j)
        for (int i = 0; i < c.ambient_dim; ++i) a.at(i, j) = c.emb[j][i];
    RatVec x;
    if (!solve(a, ambient, x))
        throw StructuralError("express_in: vector escapes the component subspace");
    return x;
}

namespace {

FinCategory thin_category(const std::vector<std::string>& names, const std::function<bool(int, int)>& leq) {
    FinCategory c;
    c.obj_names = names;
    int n = static_cast<int>(names.size());
    std::vector<std::vector<int>> hom(n, std::vector<int>(n, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!leq(x, y)) continue;
            hom[x][y] = c.n_mor();
            c.mor.push_back({x, y, names[x] + ">" + names[y]});
        }
    c.id_of.assign(n, -1);
    for (int x = 0; x < n; ++x) c.id_of[x] = hom[x][x];
    c.init_tables();
    for (int g = 0; g < c.n_mor(); ++g)
        for (int f = 0; f < c.n_mor(); ++f) {
            if (!c.composable(g, f)) continue;
            c.set_compose(g, f, hom[c.mor[f].dom][c.mor[g].cod]);
        }
    return c;
}

bool blob_inside(const GridBlob& inner, const GridBlob& outer) {
    return (outer.a < inner.a && inner.b < outer.b) || (outer.a == inner.a && outer.b == inner.b);
}

}  // namespace

int BlobSystem::find_blobC_obj(int cfg, int dec) const {
    for (int i = 0; i < static_cast<int>(blobC_objs.size()); ++i)
        if (blobC_objs[i].cfg == cfg && blobC_objs[i].dec == dec) return i;
    return -1;
}

BlobSystem build_blob_system(const BlobModel& m, bool with_linear) {
    auto vr = validate_blob_model(m);
    if (!vr.ok()) throw StructuralError("invalid blob model:\n" + vr.str());
    BlobSystem sys;
    sys.model = m;
    sys.pt = PathTable(m);
    for (int a = 1; a < m.N; ++a)
        for (int b = a + 1; b < m.N; ++b) sys.blobs.push_back({a, b});
    sys.blobs.push_back({0, m.N});
    sys.whole_blob = static_cast<int>(sys.blobs.size()) - 1;
    {
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int start) {
            if (!cur.empty()) sys.configs.push_back(cur);
            for (int i = start; i < static_cast<int>(sys.blobs.size()); ++i) {
                bool ok = true;
                for (int j : cur) ok &= sys.blobs[j].b < sys.blobs[i].a || sys.blobs[i].b < sys.blobs[j].a;
                if (!ok) continue;
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
        std::sort(sys.configs.begin(), sys.configs.end());
        for (auto& cfg : sys.configs)
            std::sort(cfg.begin(), cfg.end(), [&](int x, int y) { return sys.blobs[x].a < sys.blobs[y].a; });
    }
    int n_cfg = static_cast<int>(sys.configs.size());
    sys.decs.resize(n_cfg);
    for (int k = 0; k < n_cfg; ++k) {
        int r = static_cast<int>(sys.configs[k].size());
        int total = 1;
        for (int i = 0; i < 2 * r; ++i) total *= m.n_v();
        for (int d = 0; d < total; ++d) {
            std::vector<std::pair<int, int>> dec(r);
            int v = d;
            for (int i = r - 1; i >= 0; --i) {
                dec[i].second = v % m.n_v();
                v /= m.n_v();
                dec[i].first = v % m.n_v();
                v /= m.n_v();
            }
            sys.decs[k].push_back(std::move(dec));
        }
    }

    auto cfg_name = [&](int k) {
        std::string s = "{";
        for (size_t i = 0; i < sys.configs[k].size(); ++i) {
            if (i) s += ",";
            s += "[" + std::to_string(sys.blobs[sys.configs[k][i]].a) + "," +
                 std::to_string(sys.blobs[sys.configs[k][i]].b) + "]";
        }
        return s + "}";
    };
    auto config_in = [&](int inner, int outer) {
        for (int bi : sys.configs[inner]) {
            bool found = false;
            for (int bo : sys.configs[outer]) found |= blob_inside(sys.blobs[bi], sys.blobs[bo]);
            if (!found) return false;
        }
        return true;
    };
    {
        std::vector<std::string> names;
        for (int k = 0; k < n_cfg; ++k) names.push_back(cfg_name(k));
        sys.blob_cat = thin_category(names, [&](int x, int y) { return config_in(y, x); });
        sys.ublob_cat = adjoin_terminal(sys.blob_cat);
        sys.Blob = tautological(sys.blob_cat);
    }
    {
        std::vector<std::string> names;
        for (int k = 0; k < n_cfg; ++k)
            for (int d = 0; d < static_cast<int>(sys.decs[k].size()); ++d) {
                sys.blobC_objs.push_back({k, d});
                std::string s = cfg_name(k) + ";";
                for (auto [l, r] : sys.decs[k][d]) s += "(" + m.vnames[l] + m.vnames[r] + ")";
                names.push_back(s);
            }
        auto dec_of_blob = [&](int obj, int blob) -> std::pair<int, int> {
            const auto& ob = sys.blobC_objs[obj];
            const auto& cfg = sys.configs[ob.cfg];
            for (size_t i = 0; i < cfg.size(); ++i)
                if (cfg[i] == blob) return sys.decs[ob.cfg][ob.dec][i];
            return {-1, -1};
        };
        auto leq = [&](int x, int y) {
            const auto& ox = sys.blobC_objs[x];
            const auto& oy = sys.blobC_objs[y];
            if (!config_in(oy.cfg, ox.cfg)) return false;
            for (int bi : sys.configs[oy.cfg])
                for (int bo : sys.configs[ox.cfg])
                    if (bi == bo && dec_of_blob(x, bo) != dec_of_blob(y, bi)) return false;
            return true;
        };
        sys.blobC_cat = thin_category(names, leq);
        sys.ublobC_cat = adjoin_terminal(sys.blobC_cat);
        sys.BlobC = tautological(sys.blobC_cat);
    }
    sys.m_cat = chaos({"M"}, sys.blob_cat);
    sys.mbar_cat = chaos({"M"}, sys.ublob_cat);
    sys.Mmod = tautological_module(sys.blob_cat, sys.m_cat, sys.Blob.tags);
    sys.Mbar = decollage_module(sys.ublob_cat, sys.mbar_cat, sys.Blob.dec_tags);
    {
        auto mk = [&](bool with_empty) {
            CatLeftModule mod;
            mod.lobj = {"(M;b)"};
            const FinCategory& cat = with_empty ? sys.ublobC_cat : sys.blobC_cat;
            int n_dec_obj = static_cast<int>(sys.blobC_objs.size());
            for (int obj = 0; obj < n_dec_obj; ++obj) {
                const auto& ob = sys.blobC_objs[obj];
                bool ok = true;
                const auto& cfg = sys.configs[ob.cfg];
                for (size_t i = 0; i < cfg.size(); ++i)
                    if (cfg[i] == sys.whole_blob)
                        ok &= sys.decs[ob.cfg][ob.dec][i] == std::make_pair(m.bl, m.br);
                if (!ok) continue;
                mod.arrows.push_back({0, obj, "M->" + cat.obj_names[obj]});
            }
            if (with_empty) mod.arrows.push_back({0, n_dec_obj, "M->∅"});
            mod.init_tables(cat);
            for (int g = 0; g < cat.n_mor(); ++g)
                for (int a = 0; a < mod.n_arr(); ++a) {
                    if (mod.arrows[a].cod_o != cat.mor[g].dom) continue;
                    for (int b = 0; b < mod.n_arr(); ++b)
                        if (mod.arrows[b].cod_o == cat.mor[g].cod) mod.set_act(g, a, b);
                }
            return mod;
        };
        sys.mC_cat = mk(false);
        sys.mbarC_cat = mk(true);
    }
    sys.MmodC = tautological_module(sys.blobC_cat, sys.mC_cat, sys.BlobC.tags);
    sys.MbarC = decollage_module(sys.ublobC_cat, sys.mbarC_cat, sys.BlobC.dec_tags);
    sys.upsilon = 0;
    sys.upsilon_bar = sys.mC_cat.n_arr();

    // --- the partial operad S over Blob -------------------------------------
    {
        const UnaryOpCat& B = sys.Blob.cat;
        const TautTags& tags = sys.Blob.tags;
        sys.S.partial = true;
        sys.S.carrier.resize(B.base.n_obj());
        sys.S_elems.resize(B.base.n_obj());
        auto dec_name = [&](int cfg, int d) {
            std::string s;
            for (auto [l, r] : sys.decs[cfg][d]) s += "(" + m.vnames[l] + m.vnames[r] + ")";
            return s.empty() ? std::string("()") : s;
        };
        auto agree = [&](int ocfg, int od, int icfg, int id) {
            const auto& oc = sys.configs[ocfg];
            const auto& ic = sys.configs[icfg];
            for (size_t i = 0; i < ic.size(); ++i)
                for (size_t o = 0; o < oc.size(); ++o)
                    if (ic[i] == oc[o] && sys.decs[icfg][id][i] != sys.decs[ocfg][od][o]) return false;
            return true;
        };
        for (int obj = 0; obj < B.base.n_obj(); ++obj) {
            if (obj < tags.n_aobj) {
                int cfg = obj;
                for (int d = 0; d < static_cast<int>(sys.decs[cfg].size()); ++d) {
                    sys.S_elems[obj].emplace_back(d, -1);
                    sys.S.carrier[obj].push_back(dec_name(cfg, d));
                }
            } else {
                int f = obj - tags.n_aobj;
                int ocfg = sys.blob_cat.mor[f].dom, icfg = sys.blob_cat.mor[f].cod;
                for (int od = 0; od < static_cast<int>(sys.decs[ocfg].size()); ++od)
                    for (int id = 0; id < static_cast<int>(sys.decs[icfg].size()); ++id) {
                        if (!agree(ocfg, od, icfg, id)) continue;
                        sys.S_elems[obj].emplace_back(od, id);
                        sys.S.carrier[obj].push_back(dec_name(ocfg, od) + "|" + dec_name(icfg, id));
                    }
            }
        }
        sys.S.init_tables(B);
        auto find_elem = [&](int obj, int od, int id) {
            for (int i = 0; i < static_cast<int>(sys.S_elems[obj].size()); ++i)
                if (sys.S_elems[obj][i] == std::make_pair(od, id)) return i;
            return -1;
        };
        for (int h = 0; h < B.base.n_mor(); ++h) {
            int fib = B.fiber_obj[h], cod = B.base.mor[h].cod, dom = B.base.mor[h].dom;
            for (int x = 0; x < sys.S.dim(fib); ++x)
                for (int y = 0; y < sys.S.dim(cod); ++y) {
                    auto [xo, xi] = sys.S_elems[fib][x];
                    auto [yo, yi] = sys.S_elems[cod][y];
                    if (xi != yo) continue;
                    int v = (cod < tags.n_aobj) ? find_elem(dom, xo, -1) : find_elem(dom, xo, yi);
                    sys.S.set_g(B, h, x, y, v);
                }
        }
        sys.S_units.resize(B.base.n_obj());
        for (int obj = 0; obj < B.base.n_obj(); ++obj)
            for (int t = 0; t < sys.S.dim(obj); ++t) {
                int od = sys.S_elems[obj][t].first;
                int u = B.U(obj);
                sys.S_units[obj].push_back(find_elem(u, od, od));
            }
    }

    if (with_linear) {
    // --- linear operad Fbar over D(ublobC) ----------------------------------
    {
        const UnaryOpCat& D = sys.BlobC.dec_aodot;
        const DecollageTags& dt = sys.BlobC.dec_tags;
        int empty_obj = sys.blobC_cat.n_obj();
        // fields on outer minus the inner interiors; a blob of the outer
        // configuration with no inner blobs carries its local relations, so
        // composition into the constants stays inside the components
        auto region_of = [&](int outer_obj, int inner_obj) {
            std::vector<Interval> iv;
            std::vector<bool> flags;
            bool mismatch = false;
            if (outer_obj == empty_obj) return std::make_tuple(iv, flags, mismatch);
            const auto& ob = sys.blobC_objs[outer_obj];
            const auto& ocfg = sys.configs[ob.cfg];
            const auto& odec = sys.decs[ob.cfg][ob.dec];
            for (size_t o = 0; o < ocfg.size(); ++o) {
                const GridBlob& d2 = sys.blobs[ocfg[o]];
                std::vector<std::pair<GridBlob, std::pair<int, int>>> ins;
                if (inner_obj != empty_obj) {
                    const auto& ib = sys.blobC_objs[inner_obj];
                    const auto& icfg = sys.configs[ib.cfg];
                    for (size_t i = 0; i < icfg.size(); ++i)
                        if (blob_inside(sys.blobs[icfg[i]], d2))
                            ins.emplace_back(sys.blobs[icfg[i]], sys.decs[ib.cfg][ib.dec][i]);
                }
                if (ins.size() == 1 && ins[0].first == d2) {
                    if (ins[0].second != odec[o]) mismatch = true;
                    continue;
                }
                if (ins.empty()) {
                    iv.push_back({d2.a, d2.b, odec[o].first, odec[o].second});
                    flags.push_back(true);
                    continue;
                }
                int cur = d2.a, curl = odec[o].first;
                for (auto& [ibl, idec] : ins) {
                    iv.push_back({cur, ibl.a, curl, idec.first});
                    flags.push_back(false);
                    cur = ibl.b;
                    curl = idec.second;
                }
                iv.push_back({cur, d2.b, curl, odec[o].second});
                flags.push_back(false);
            }
            return std::make_tuple(iv, flags, mismatch);
        };
        sys.F_space.resize(D.base.n_obj());
        for (int obj = 0; obj < D.base.n_obj(); ++obj) {
            int outer = sys.ublobC_cat.mor[obj].dom, inner = sys.ublobC_cat.mor[obj].cod;
            auto [iv, flags, mismatch] = region_of(outer, inner);
            sys.F_space[obj] = make_region(sys.pt, iv, flags, mismatch);
        }
        sys.Fbar.carrier.resize(D.base.n_obj());
        for (int obj = 0; obj < D.base.n_obj(); ++obj) sys.Fbar.carrier[obj] = sys.F_space[obj].basis;
        sys.Fbar.init_tables(D);
        for (int h = 0; h < D.base.n_mor(); ++h) {
            auto [top, leg] = dt.mor_pair[h];
            int dom = D.base.mor[h].dom;
            const RegionSpace& A = sys.F_space[top];
            const RegionSpace& B = sys.F_space[leg];
            const RegionSpace& C = sys.F_space[dom];
            for (int i = 0; i < A.dim(); ++i)
                for (int j = 0; j < B.dim(); ++j) {
                    RatVec amb(C.ambient_dim);
                    for (int ia = 0; ia < A.ambient_dim; ++ia) {
                        if (A.emb[i][ia] == 0) continue;
                        for (int jb = 0; jb < B.ambient_dim; ++jb) {
                            if (B.emb[j][jb] == 0) continue;
                            amb[merge_ambient(sys.pt, A, B, C, ia, jb)] += A.emb[i][ia] * B.emb[j][jb];
                        }
                    }
                    sys.Fbar.gamma[h][static_cast<size_t>(i) * B.dim() + j] = express_in(C, amb);
                }
        }
        sys.Fbar_eta.resize(D.base.n_obj());
        for (int obj = 0; obj < D.base.n_obj(); ++obj) {
            int u = D.U(obj);
            if (sys.F_space[u].dim() != 1) throw StructuralError("Fbar: unit component is not rank one");
            sys.Fbar_eta[obj] = RatVec(1, Rat(1));
        }
    }
    sys.F = restrict_lin(sys.BlobC.cat, sys.BlobC.dec_aodot, sys.BlobC.embed, sys.Fbar);
    sys.F_eta.resize(sys.BlobC.cat.base.n_obj());
    for (int obj = 0; obj < sys.BlobC.cat.base.n_obj(); ++obj)
        sys.F_eta[obj] = sys.Fbar_eta[sys.BlobC.embed.f.obj_map[obj]];

    // --- module Mbar over (D(ublobC), MbarC) ---------------------------------
    {
        const UnaryOpCat& D = sys.BlobC.dec_aodot;
        int empty_obj = sys.blobC_cat.n_obj();
        const CatLeftModule& cm = sys.MbarC.mod.m;
        sys.M_space.resize(cm.n_lobj());
        for (int l = 0; l < cm.n_lobj(); ++l) {
            int inner = sys.mbarC_cat.arrows[l].cod_o;
            std::vector<Interval> iv;
            bool mismatch = false;
            GridBlob whole{0, m.N};
            std::vector<std::pair<GridBlob, std::pair<int, int>>> ins;
            if (inner != empty_obj) {
                const auto& ib = sys.blobC_objs[inner];
                const auto& icfg = sys.configs[ib.cfg];
                for (size_t i = 0; i < icfg.size(); ++i)
                    ins.emplace_back(sys.blobs[icfg[i]], sys.decs[ib.cfg][ib.dec][i]);
            }
            if (ins.size() == 1 && ins[0].first == whole) {
                if (ins[0].second != std::make_pair(m.bl, m.br)) mismatch = true;
            } else {
                int cur = 0, curl = m.bl;
                for (auto& [ibl, idec] : ins) {
                    iv.push_back({cur, ibl.a, curl, idec.first});
                    cur = ibl.b;
                    curl = idec.second;
                }
                iv.push_back({cur, m.N, curl, m.br});
            }
            sys.M_space[l] = make_plain_region(sys.pt, iv, mismatch);
        }
        sys.Mbar_lin.carrier.resize(cm.n_lobj());
        for (int l = 0; l < cm.n_lobj(); ++l) sys.Mbar_lin.carrier[l] = sys.M_space[l].basis;
        sys.Mbar_lin.init_tables(D, sys.MbarC.mod, sys.Fbar);
        for (int a = 0; a < cm.n_arr(); ++a) {
            int G = sys.MbarC.mod.fiber_obj_m[a];
            int S = cm.arrows[a].cod_o;
            int L = cm.arrows[a].dom_l;
            const RegionSpace& A = sys.M_space[G];
            const RegionSpace& B = sys.F_space[S];
            const RegionSpace& C = sys.M_space[L];
            for (int i = 0; i < A.dim(); ++i)
                for (int j = 0; j < B.dim(); ++j) {
                    RatVec amb(C.ambient_dim);
                    for (int ia = 0; ia < A.ambient_dim; ++ia) {
                        if (A.emb[i][ia] == 0) continue;
                        for (int jb = 0; jb < B.ambient_dim; ++jb) {
                            if (B.emb[j][jb] == 0) continue;
                            amb[merge_ambient(sys.pt, A, B, C, ia, jb)] += A.emb[i][ia] * B.emb[j][jb];
                        }
                    }
                    sys.Mbar_lin.nu[a][static_cast<size_t>(i) * B.dim() + j] = express_in(C, amb);
                }
        }
    }
    {
        sys.iota.phi = sys.BlobC.embed;
        const CatLeftModule& a = sys.MmodC.mod.m;
        sys.iota.psi_obj.resize(a.n_lobj());
        sys.iota.psi_obj[0] = sys.upsilon_bar;
        for (int i = 0; i < sys.mC_cat.n_arr(); ++i) sys.iota.psi_obj[1 + i] = i;
        sys.iota.psi_arrow.resize(a.n_arr());
        int nbarr = sys.mC_cat.n_arr();
        for (int al = 0; al < nbarr; ++al) {
            int target_obj = sys.mC_cat.arrows[al].cod_o;
            int bang = sys.ublobC_cat.unique_hom(target_obj, sys.blobC_cat.n_obj());
            sys.iota.psi_arrow[al] = sys.MbarC.find_arrow(al, bang);
        }
        for (int i = 0; i < static_cast<int>(sys.MmodC.darr_tag.size()); ++i) {
            auto [psi, f] = sys.MmodC.darr_tag[i];
            sys.iota.psi_arrow[nbarr + i] = sys.MbarC.find_arrow(psi, f);
        }
        sys.M_lin = restrict_pmodule(sys.BlobC.cat, sys.MmodC.mod, sys.BlobC.dec_aodot, sys.MbarC.mod,
                                     sys.iota, sys.Mbar_lin);
    }
    }
    return sys;
}

int skein_dim(const BlobModel& m) {
    PathTable pt(m);
    int dim = static_cast<int>(pt.paths(m.N, m.bl, m.br).size());
    RowSpan span(dim);
    for (const auto& rel : m.relations) {
        if (rel.len > m.N) continue;
        for (int s = 0; s + rel.len <= m.N; ++s) {
            int suffix = m.N - s - rel.len;
            for (const auto& p : pt.paths(s, m.bl, rel.src))
                for (const auto& q : pt.paths(suffix, rel.tgt, m.br)) {
                    RatVec v(dim);
                    for (const auto& [coef, mid] : rel.terms) {
                        std::vector<int> full = p;
                        full.insert(full.end(), mid.begin(), mid.end());
                        full.insert(full.end(), q.begin(), q.end());
                        v[pt.index_of(m.N, m.bl, m.br, full)] += coef;
                    }
                    span.add(std::move(v));
                }
        }
    }
    return dim - span.dim();
}

RoundTrip blobC_is_groth_of_S(const BlobSystem& sys) {
    auto g = grothendieck_pseudo(sys.Blob.cat, sys.S, sys.S_units);
    const TautTags& ut = sys.Blob.tags;
    const TautTags& dt = sys.BlobC.tags;
    std::vector<int> obj_map(g.total.base.n_obj(), -1);
    for (int i = 0; i < g.total.base.n_obj(); ++i) {
        auto [T, t] = g.obj_tag[i];
        auto [od, id] = sys.S_elems[T][t];
        if (T < ut.n_aobj) {
            obj_map[i] = dt.obj_of_aobj(sys.find_blobC_obj(T, od));
        } else {
            int f = T - ut.n_aobj;
            int src = sys.find_blobC_obj(sys.blob_cat.mor[f].dom, od);
            int dst = sys.find_blobC_obj(sys.blob_cat.mor[f].cod, id);
            int fc = sys.blobC_cat.unique_hom(src, dst);
            if (fc < 0) return {false, "decorated morphism missing for an S element"};
            obj_map[i] = dt.obj_of_amor(fc);
        }
    }
    std::vector<int> mor_map(g.total.base.n_mor(), -1);
    for (int i = 0; i < g.total.base.n_mor(); ++i) {
        auto tag = g.mor_tag[i];
        auto [eo, ei] = sys.S_elems[sys.Blob.cat.fiber_obj[tag.f]][tag.eps];
        auto to_ti = sys.S_elems[sys.Blob.cat.base.mor[tag.f].cod][tag.t];
        int to = to_ti.first, ti = to_ti.second;
        if (tag.f < ut.n_amor) {
            int src = sys.find_blobC_obj(sys.blob_cat.mor[tag.f].dom, eo);
            int dst = sys.find_blobC_obj(sys.blob_cat.mor[tag.f].cod, to);
            mor_map[i] = sys.blobC_cat.unique_hom(src, dst);
        } else {
            auto [top, leg] = ut.dmor_pair[tag.f - ut.n_amor];
            int tsrc = sys.find_blobC_obj(sys.blob_cat.mor[top].dom, eo);
            int tdst = sys.find_blobC_obj(sys.blob_cat.mor[top].cod, ei);
            int ldst = sys.find_blobC_obj(sys.blob_cat.mor[leg].cod, ti);
            int ctop = sys.blobC_cat.unique_hom(tsrc, tdst);
            int cleg = sys.blobC_cat.unique_hom(tdst, ldst);
            if (ctop < 0 || cleg < 0) return {false, "decorated triangle missing"};
            mor_map[i] = dt.find_dmor(ctop, cleg);
        }
        if (mor_map[i] < 0) return {false, "morphism image missing"};
    }
    UnaryOpCat lhs = g.total, rhs = sys.BlobC.cat;
    lhs.terminals.reset();
    rhs.terminals.reset();
    std::string why;
    if (!is_operadic_iso(lhs, rhs, obj_map, mor_map, &why)) return {false, why};
    return {true, ""};
}

BlobModel model_loop_x2(int n) {
    BlobModel m;
    m.name = "loop_x2";
    m.N = n;
    m.vnames = {"v"};
    m.edges.push_back({0, 0, "x"});
    BlobModel::Relation r;
    r.len = 2;
    r.src = 0;
    r.tgt = 0;
    r.terms.push_back({Rat(1), {0, 0}});
    m.relations.push_back(r);
    m.bl = m.br = 0;
    return m;
}

BlobModel model_loop_free(int n) {
    BlobModel m = model_loop_x2(n);
    m.name = "loop_free";
    m.relations.clear();
    return m;
}

BlobModel model_two_vertex(int n) {
    BlobModel m;
    m.name = "two_vertex";
    m.N = n;
    m.vnames = {"u", "w"};
    m.edges.push_back({0, 1, "e"});
    m.edges.push_back({1, 0, "f"});
    BlobModel::Relation r;
    r.len = 2;
    r.src = 0;
    r.tgt = 0;
    r.terms.push_back({Rat(1), {0, 1}});
    m.relations.push_back(r);
    m.bl = m.br = 0;
    return m;
}

BlobModel model_two_loops(int n) {
    BlobModel m;
    m.name = "two_loops";
    m.N = n;
    m.vnames = {"v"};
    m.edges.push_back({0, 0, "a"});
    m.edges.push_back({0, 0, "b"});
    BlobModel::Relation r;
    r.len = 2;
    r.src = 0;
    r.tgt = 0;
    r.terms.push_back({Rat(1), {0, 1}});
    r.terms.push_back({Rat(-1), {1, 0}});
    m.relations.push_back(r);
    m.bl = m.br = 0;
    return m;
}

}  // namespace opcat
