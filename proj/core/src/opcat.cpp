#include "opcat/opcat.hpp"

#include <algorithm>

#include "opcat/common.hpp"

namespace opcat {

namespace {

std::string mn(const FinCategory& c, int m) {
    return c.mor[m].name;
}

}  // namespace

ValidationReport validate_opcat(const UnaryOpCat& o) {
    ValidationReport rep;
    const FinCategory& c = o.base;
    const int M = c.n_mor();
    if (static_cast<int>(o.fiber_obj.size()) != M) throw StructuralError("fiber_obj size mismatch");
    for (int f = 0; f < M; ++f)
        if (o.fiber_obj[f] < 0 || o.fiber_obj[f] >= c.n_obj())
            throw StructuralError("fiber_obj out of range at " + mn(c, f));

    // triangle table shape: defined exactly on composable (leg, top) pairs,
    // with the right dom/cod
    for (int top = 0; top < M; ++top)
        for (int leg = 0; leg < M; ++leg) {
            int v = o.fm(top, leg);
            if (!c.composable(leg, top)) {
                if (v >= 0) rep.add("fiber_mor: entry on non-triangle (" + mn(c, top) + "," + mn(c, leg) + ")");
                continue;
            }
            if (v < 0) {
                rep.add("fiber_mor: missing triangle (" + mn(c, top) + "," + mn(c, leg) + ")");
                continue;
            }
            int first = c.compose(leg, top);
            if (c.mor[v].dom != o.fiber_obj[first] || c.mor[v].cod != o.fiber_obj[leg])
                rep.add("fiber_mor: dom/cod wrong at (" + mn(c, top) + "," + mn(c, leg) + ")");
        }
    if (!rep.ok()) {
        rep.sort();
        return rep;
    }

    // functoriality of each F_S on identities and composition of triangles
    for (int f = 0; f < M; ++f) {
        int v = o.fm(c.id_of[c.mor[f].dom], f);
        if (v != c.id_of[o.fiber_obj[f]])
            rep.add("fiber functor: identity triangle over " + mn(c, f) + " not sent to identity");
    }
    for (int t2 = 0; t2 < M; ++t2)
        for (int l3 = 0; l3 < M; ++l3) {
            if (!c.composable(l3, t2)) continue;  // t2 : f2 -> f3 over S
            int l2 = c.compose(l3, t2);
            for (int t1 = 0; t1 < M; ++t1) {
                if (!c.composable(t2, t1)) continue;  // t1 : f1 -> f2
                int lhs = o.fm(c.compose(t2, t1), l3);
                int rhs = c.compose(o.fm(t2, l3), o.fm(t1, l2));
                if (lhs != rhs)
                    rep.add("fiber functor: composition of triangles fails at (" + mn(c, t1) + "," + mn(c, t2) +
                            "," + mn(c, l3) + ")");
            }
        }

    // fiber-of-fiber, object part: F(induced map of a triangle) = F(top)
    for (int top = 0; top < M; ++top)
        for (int leg = 0; leg < M; ++leg) {
            if (!c.composable(leg, top)) continue;
            if (o.fiber_obj[o.fm(top, leg)] != o.fiber_obj[top])
                rep.add("fiber-of-fiber (objects): fails at (" + mn(c, top) + "," + mn(c, leg) + ")");
        }

    // fiber-of-fiber, morphism part: (phi_T)_{F(c)} = phi_S for
    // phi : Y -> X, a : X -> S, cc : S -> T
    for (int phi = 0; phi < M; ++phi)
        for (int a = 0; a < M; ++a) {
            if (!c.composable(a, phi)) continue;
            for (int cc = 0; cc < M; ++cc) {
                if (!c.composable(cc, a)) continue;
                int l = c.compose(cc, a);
                int phi_S = o.fm(phi, a);
                int phi_T = o.fm(phi, l);
                int a_T = o.fm(a, cc);
                if (!c.composable(a_T, phi_T)) {
                    rep.add("fiber-of-fiber (morphisms): induced triangle ill-typed at (" + mn(c, phi) + "," +
                            mn(c, a) + "," + mn(c, cc) + ")");
                    continue;
                }
                if (o.fm(phi_T, a_T) != phi_S)
                    rep.add("fiber-of-fiber (morphisms): fails at (" + mn(c, phi) + "," + mn(c, a) + "," +
                            mn(c, cc) + ")");
            }
        }
    rep.sort();
    return rep;
}

ValidationReport validate_operadic_functor(const UnaryOpCat& src, const UnaryOpCat& dst,
                                           const OperadicFunctor& phi) {
    ValidationReport rep = validate_functor(src.base, dst.base, phi.f);
    if (!rep.ok()) return rep;
    const int M = src.base.n_mor();
    for (int f = 0; f < M; ++f)
        if (phi.f.obj_map[src.fiber_obj[f]] != dst.fiber_obj[phi.f.mor_map[f]])
            rep.add("operadic functor: fiber objects not preserved at " + mn(src.base, f));
    for (int top = 0; top < M; ++top)
        for (int leg = 0; leg < M; ++leg) {
            if (!src.base.composable(leg, top)) continue;
            if (phi.f.mor_map[src.fm(top, leg)] != dst.fm(phi.f.mor_map[top], phi.f.mor_map[leg]))
                rep.add("operadic functor: induced fiber maps not preserved at (" + mn(src.base, top) + "," +
                        mn(src.base, leg) + ")");
        }
    if (src.terminals && dst.terminals) {
        UnaryOpCat s = src, d = dst;
        s.finalize();
        d.finalize();
        for (int k = 0; k < s.n_comp; ++k) {
            int u = (*src.terminals)[k];
            int img = phi.f.obj_map[u];
            int dcomp = d.comp_of[img];
            if ((*dst.terminals)[dcomp] != img)
                rep.add("operadic functor: chosen terminal not preserved at component " + std::to_string(k));
        }
    }
    rep.sort();
    return rep;
}

UnitalityReport unitality_report(const UnaryOpCat& o_in) {
    UnaryOpCat o = o_in;
    o.finalize();
    UnitalityReport out;
    if (!o.terminals) {
        out.errors.push_back("no chosen terminal objects");
        return out;
    }
    const FinCategory& c = o.base;
    const auto& term = *o.terminals;
    if (static_cast<int>(term.size()) != o.n_comp) {
        out.errors.push_back("terminal family size != number of components");
        return out;
    }
    std::vector<bool> is_term(c.n_obj(), false);
    for (int k = 0; k < o.n_comp; ++k) {
        int u = term[k];
        if (u < 0 || u >= c.n_obj() || o.comp_of[u] != k) {
            out.errors.push_back("chosen terminal of component " + std::to_string(k) + " not in component");
            continue;
        }
        is_term[u] = true;
        for (int x = 0; x < c.n_obj(); ++x) {
            if (o.comp_of[x] != k) continue;
            if (static_cast<int>(c.homset(x, u).size()) != 1)
                out.errors.push_back("chosen object " + c.obj_names[u] + " not locally terminal: |hom(" +
                                     c.obj_names[x] + ",-)| != 1");
        }
    }
    if (!out.errors.empty()) return out;

    out.left = true;
    for (int s = 0; s < c.n_obj(); ++s)
        if (!is_term[o.U(s)]) {
            out.left = false;
            out.witnesses.push_back("left: fiber of id_" + c.obj_names[s] + " is not a chosen terminal");
        }
    out.right = true;
    for (int k = 0; k < o.n_comp; ++k) {
        int u = term[k];
        for (int f = 0; f < c.n_mor(); ++f) {
            if (c.mor[f].cod != u) continue;
            if (o.fiber_obj[f] != c.mor[f].dom) {
                out.right = false;
                out.witnesses.push_back("right: fiber of " + mn(c, f) + " is not its domain");
            }
        }
        for (int top = 0; top < c.n_mor(); ++top)
            for (int leg = 0; leg < c.n_mor(); ++leg) {
                if (c.mor[leg].cod != u || !c.composable(leg, top)) continue;
                if (o.fm(top, leg) != top) {
                    out.right = false;
                    out.witnesses.push_back("right: induced map of (" + mn(c, top) + "," + mn(c, leg) +
                                            ") is not the top morphism");
                }
            }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

std::optional<std::vector<int>> choose_local_terminals(const FinCategory& c) {
    auto comp = pi0(c);
    int n = 0;
    for (int x : comp) n = std::max(n, x + 1);
    std::vector<int> term(n, -1);
    for (int k = 0; k < n; ++k) {
        for (int u = 0; u < c.n_obj(); ++u) {
            if (comp[u] != k) continue;
            bool ok = true;
            for (int x = 0; x < c.n_obj() && ok; ++x) {
                if (comp[x] != k) continue;
                ok = static_cast<int>(c.homset(x, u).size()) == 1;
            }
            if (ok) {
                term[k] = u;
                break;
            }
        }
        if (term[k] < 0) return std::nullopt;
    }
    return term;
}

int DecollageTags::find_mor(int top, int leg) const {
    for (int i = 0; i < static_cast<int>(mor_pair.size()); ++i)
        if (mor_pair[i].first == top && mor_pair[i].second == leg) return i;
    return -1;
}

UnaryOpCat decollage(const FinCategory& a, DecollageTags* tags_out) {
    UnaryOpCat o;
    DecollageTags tags;
    const int M = a.n_mor();
    for (int f = 0; f < M; ++f) o.base.obj_names.push_back(a.mor[f].name);
    for (int leg = 0; leg < M; ++leg)
        for (int top = 0; top < M; ++top) {
            if (!a.composable(leg, top)) continue;
            FinCategory::Mor m;
            m.dom = a.compose(leg, top);
            m.cod = leg;
            m.name = a.mor[top].name + "|" + a.mor[leg].name;
            o.base.mor.push_back(m);
            tags.mor_pair.emplace_back(top, leg);
        }
    o.base.id_of.assign(M, -1);
    for (int i = 0; i < o.base.n_mor(); ++i) {
        auto [top, leg] = tags.mor_pair[i];
        if (top == a.id_of[a.mor[leg].dom]) o.base.id_of[leg] = i;
    }
    o.base.init_tables();
    for (int j = 0; j < o.base.n_mor(); ++j)
        for (int i = 0; i < o.base.n_mor(); ++i) {
            if (!o.base.composable(j, i)) continue;
            int top = a.compose(tags.mor_pair[j].first, tags.mor_pair[i].first);
            o.base.set_compose(j, i, tags.find_mor(top, tags.mor_pair[j].second));
        }
    o.fiber_obj.resize(o.base.n_mor());
    for (int i = 0; i < o.base.n_mor(); ++i) o.fiber_obj[i] = tags.mor_pair[i].first;
    for (int leg = 0; leg < o.base.n_mor(); ++leg)
        for (int top = 0; top < o.base.n_mor(); ++top) {
            if (!o.base.composable(leg, top)) continue;
            int a_top = tags.mor_pair[top].first;
            int a_leg_top = tags.mor_pair[leg].first;
            o.set_fm(top, leg, tags.find_mor(a_top, a_leg_top));
        }
    o.finalize();
    std::vector<int> term(o.n_comp, -1);
    for (int obj = 0; obj < o.base.n_obj(); ++obj) {
        int k = o.comp_of[obj];
        if (term[k] < 0) term[k] = a.id_of[a.mor[obj].cod];
    }
    o.terminals = term;
    if (tags_out) *tags_out = tags;
    return o;
}

int TautTags::find_dmor(int top, int leg) const {
    for (int i = 0; i < static_cast<int>(dmor_pair.size()); ++i)
        if (dmor_pair[i].first == top && dmor_pair[i].second == leg) return n_amor + i;
    return -1;
}

TautResult tautological(const FinCategory& a) {
    TautResult out;
    UnaryOpCat& o = out.cat;
    TautTags& tags = out.tags;
    tags.n_aobj = a.n_obj();
    tags.n_amor = a.n_mor();
    const int nA = a.n_obj(), M = a.n_mor();
    for (int x = 0; x < nA; ++x) o.base.obj_names.push_back(a.obj_names[x]);
    for (int f = 0; f < M; ++f) o.base.obj_names.push_back("[" + a.mor[f].name + "]");
    for (int f = 0; f < M; ++f) {
        FinCategory::Mor m;
        m.dom = a.mor[f].dom;
        m.cod = a.mor[f].cod;
        m.name = a.mor[f].name;
        o.base.mor.push_back(m);
    }
    for (int leg = 0; leg < M; ++leg)
        for (int top = 0; top < M; ++top) {
            if (!a.composable(leg, top)) continue;
            FinCategory::Mor m;
            m.dom = nA + a.compose(leg, top);
            m.cod = nA + leg;
            m.name = a.mor[top].name + "|" + a.mor[leg].name;
            o.base.mor.push_back(m);
            tags.dmor_pair.emplace_back(top, leg);
        }
    o.base.id_of.assign(o.base.n_obj(), -1);
    for (int x = 0; x < nA; ++x) o.base.id_of[x] = a.id_of[x];
    for (int k = 0; k < static_cast<int>(tags.dmor_pair.size()); ++k) {
        auto [top, leg] = tags.dmor_pair[k];
        if (top == a.id_of[a.mor[leg].dom]) o.base.id_of[nA + leg] = M + k;
    }
    o.base.init_tables();
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f)
            if (a.composable(g, f)) o.base.set_compose(g, f, a.compose(g, f));
    for (int j = 0; j < static_cast<int>(tags.dmor_pair.size()); ++j)
        for (int i = 0; i < static_cast<int>(tags.dmor_pair.size()); ++i) {
            if (!o.base.composable(M + j, M + i)) continue;
            int top = a.compose(tags.dmor_pair[j].first, tags.dmor_pair[i].first);
            o.base.set_compose(M + j, M + i, tags.find_dmor(top, tags.dmor_pair[j].second));
        }
    o.fiber_obj.resize(o.base.n_mor());
    for (int f = 0; f < M; ++f) o.fiber_obj[f] = nA + f;
    for (int k = 0; k < static_cast<int>(tags.dmor_pair.size()); ++k)
        o.fiber_obj[M + k] = nA + tags.dmor_pair[k].first;
    for (int leg = 0; leg < M; ++leg)
        for (int top = 0; top < M; ++top) {
            if (!a.composable(leg, top)) continue;
            o.set_fm(top, leg, tags.find_dmor(top, leg));
        }
    for (int lj = 0; lj < static_cast<int>(tags.dmor_pair.size()); ++lj)
        for (int ti = 0; ti < static_cast<int>(tags.dmor_pair.size()); ++ti) {
            int leg = M + lj, top = M + ti;
            if (!o.base.composable(leg, top)) continue;
            o.set_fm(top, leg, tags.find_dmor(tags.dmor_pair[ti].first, tags.dmor_pair[lj].first));
        }
    o.finalize();
    o.terminals = choose_local_terminals(o.base);

    int odot = -1;
    out.aodot = adjoin_terminal(a, &odot);
    out.dec_aodot = decollage(out.aodot, &out.dec_tags);
    auto bang = [&](int x) { return M + x; };  // adjoin_terminal appends !x in object order
    out.embed.f.obj_map.resize(o.base.n_obj());
    out.embed.f.mor_map.resize(o.base.n_mor());
    for (int x = 0; x < nA; ++x) out.embed.f.obj_map[x] = bang(x);
    for (int f = 0; f < M; ++f) out.embed.f.obj_map[nA + f] = f;
    for (int g = 0; g < M; ++g) out.embed.f.mor_map[g] = out.dec_tags.find_mor(g, bang(a.mor[g].cod));
    for (int k = 0; k < static_cast<int>(tags.dmor_pair.size()); ++k)
        out.embed.f.mor_map[M + k] = out.dec_tags.find_mor(tags.dmor_pair[k].first, tags.dmor_pair[k].second);
    return out;
}

int MonoidOpcatResult::find_mor(int x, int a) const {
    for (int i = 0; i < static_cast<int>(mor_pair.size()); ++i)
        if (mor_pair[i].first == x && mor_pair[i].second == a) return i;
    return -1;
}

MonoidOpcatResult monoid_opcat(const MonoidLike& a) {
    const int n = a.n();
    if (static_cast<int>(a.mult.size()) != n * n) throw StructuralError("monoid: mult table size mismatch");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (a.m(a.m(x, y), z) != a.m(x, a.m(y, z)))
                    throw StructuralError("monoid: associativity fails at (" + a.names[x] + "," + a.names[y] +
                                          "," + a.names[z] + ")");
    std::vector<int> e_of(n, -1);
    if (a.unit) {
        int e = *a.unit;
        for (int x = 0; x < n; ++x) {
            if (a.m(e, x) != x || a.m(x, e) != x)
                throw StructuralError("monoid: unit law fails at " + a.names[x]);
            e_of[x] = e;
        }
    } else if (a.pseudo_units) {
        const auto& e = *a.pseudo_units;
        if (static_cast<int>(e.size()) != n) throw StructuralError("monoid: pseudo-unit family size mismatch");
        for (int z = 0; z < n; ++z)
            for (int t = 0; t < n; ++t)
                if (a.m(z, e[t]) != z)
                    throw StructuralError("monoid: (u1) fails at pair (" + a.names[z] + "," + a.names[t] + ")");
        for (int t = 0; t < n; ++t) {
            if (a.m(e[t], t) != t)
                throw StructuralError("monoid: (u2) first equation fails at " + a.names[t]);
            for (int b = 0; b < n; ++b)
                if (a.m(e[a.m(t, b)], t) != t)
                    throw StructuralError("monoid: (u2) second equation fails at pair (" + a.names[t] + "," +
                                          a.names[b] + ")");
        }
        for (int x = 0; x < n; ++x) e_of[x] = e[x];
    } else {
        throw StructuralError("monoid: neither unit nor pseudo-unit family given");
    }

    MonoidOpcatResult out;
    UnaryOpCat& o = out.cat;
    o.base.obj_names = a.names;
    for (int x = 0; x < n; ++x)
        for (int aa = 0; aa < n; ++aa) {
            FinCategory::Mor m;
            m.dom = a.m(x, aa);
            m.cod = aa;
            m.name = "(" + a.names[x] + "," + a.names[aa] + ")";
            o.base.mor.push_back(m);
            out.mor_pair.emplace_back(x, aa);
        }
    o.base.id_of.assign(n, -1);
    for (int aa = 0; aa < n; ++aa) o.base.id_of[aa] = out.find_mor(e_of[aa], aa);
    o.base.init_tables();
    for (int g = 0; g < o.base.n_mor(); ++g)
        for (int f = 0; f < o.base.n_mor(); ++f) {
            if (!o.base.composable(g, f)) continue;
            auto [x, aa] = out.mor_pair[g];
            auto [y, b] = out.mor_pair[f];
            (void)b;
            o.base.set_compose(g, f, out.find_mor(a.m(y, x), aa));
        }
    o.fiber_obj.resize(o.base.n_mor());
    for (int i = 0; i < o.base.n_mor(); ++i) o.fiber_obj[i] = out.mor_pair[i].first;
    for (int leg = 0; leg < o.base.n_mor(); ++leg)
        for (int top = 0; top < o.base.n_mor(); ++top) {
            if (!o.base.composable(leg, top)) continue;
            auto [w, b] = out.mor_pair[top];
            (void)b;
            auto [x, aa] = out.mor_pair[leg];
            (void)aa;
            o.set_fm(top, leg, out.find_mor(w, x));
        }
    o.finalize();
    std::vector<int> term(o.n_comp, -1);
    for (int k = 0; k < o.n_comp; ++k) term[k] = a.unit ? *a.unit : (*a.pseudo_units)[0];
    o.terminals = term;
    return out;
}

NerveDiag nerve_diagnostic(const UnaryOpCat& o) {
    NerveDiag d;
    const FinCategory& c = o.base;
    const int M = c.n_mor();
    for (int f0 = 0; f0 < M; ++f0)
        for (int f1 = 0; f1 < M; ++f1) {
            if (!c.composable(f1, f0)) continue;
            int m = o.fm(f0, f1);
            if (m < 0) {
                d.always_identities_ok = false;
                d.witnesses.push_back("missing d3 value at (" + mn(c, f0) + "," + mn(c, f1) + ")");
                continue;
            }
            if (c.mor[m].cod != o.fiber_obj[f1] || c.mor[m].dom != o.fiber_obj[c.compose(f1, f0)]) {
                d.always_identities_ok = false;
                d.witnesses.push_back("d_i d3 = d2 d_i fails at (" + mn(c, f0) + "," + mn(c, f1) + ")");
            }
            if (o.fiber_obj[m] != o.fiber_obj[f0]) {
                d.n2_ok = false;
                d.witnesses.push_back("d2 d3 != d2 d2 at (" + mn(c, f0) + "," + mn(c, f1) + ")");
            }
        }
    for (int f0 = 0; f0 < M; ++f0)
        for (int f1 = 0; f1 < M; ++f1) {
            if (!c.composable(f1, f0)) continue;
            for (int f2 = 0; f2 < M; ++f2) {
                if (!c.composable(f2, f1)) continue;
                int g0 = o.fm(f0, c.compose(f2, f1));
                int g1 = o.fm(f1, f2);
                if (g0 < 0 || g1 < 0 || !c.composable(g1, g0)) {
                    d.n3_ok = false;
                    d.witnesses.push_back("d4 ill-typed at (" + mn(c, f0) + "," + mn(c, f1) + "," + mn(c, f2) + ")");
                    continue;
                }
                if (o.fm(g0, g1) != o.fm(f0, f1)) {
                    d.n3_ok = false;
                    d.witnesses.push_back("d3 d4 != d3 d3 at (" + mn(c, f0) + "," + mn(c, f1) + "," + mn(c, f2) +
                                          ")");
                }
            }
        }
    std::sort(d.witnesses.begin(), d.witnesses.end());
    return d;
}

}  // namespace opcat
