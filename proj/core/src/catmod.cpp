#include "opcat/catmod.hpp"

#include <algorithm>

#include "opcat/common.hpp"

namespace opcat {

std::vector<int> CatLeftModule::arrows_from(int l) const {
    std::vector<int> out;
    for (int a = 0; a < n_arr(); ++a)
        if (arrows[a].dom_l == l) out.push_back(a);
    return out;
}

std::vector<int> CatLeftModule::arrow_set(int l, int s) const {
    std::vector<int> out;
    for (int a = 0; a < n_arr(); ++a)
        if (arrows[a].dom_l == l && arrows[a].cod_o == s) out.push_back(a);
    return out;
}

int CatLeftModule::find_arrow(const std::string& name) const {
    for (int a = 0; a < n_arr(); ++a)
        if (arrows[a].name == name) return a;
    return -1;
}

ValidationReport validate_cat_module(const FinCategory& c, const CatLeftModule& m) {
    ValidationReport rep;
    if (m.action.size() != static_cast<size_t>(c.n_mor()) * m.n_arr())
        throw StructuralError("module action table size mismatch");
    for (const auto& a : m.arrows)
        if (a.dom_l < 0 || a.dom_l >= m.n_lobj() || a.cod_o < 0 || a.cod_o >= c.n_obj())
            throw StructuralError("module arrow " + a.name + " out of range");
    for (int g = 0; g < c.n_mor(); ++g)
        for (int a = 0; a < m.n_arr(); ++a) {
            int v = m.act(g, a);
            bool comp = m.arrows[a].cod_o == c.mor[g].dom;
            if (!comp) {
                if (v != -1)
                    rep.add("action: entry on non-composable pair (" + c.mor[g].name + "," + m.arrows[a].name + ")");
                continue;
            }
            if (v < 0) {
                rep.add("action: missing entry (" + c.mor[g].name + "," + m.arrows[a].name + ")");
                continue;
            }
            if (m.arrows[v].dom_l != m.arrows[a].dom_l || m.arrows[v].cod_o != c.mor[g].cod)
                rep.add("action: dom/cod wrong at (" + c.mor[g].name + "," + m.arrows[a].name + ")");
        }
    if (!rep.ok()) {
        rep.sort();
        return rep;
    }
    for (int a = 0; a < m.n_arr(); ++a)
        if (m.act(c.id_of[m.arrows[a].cod_o], a) != a)
            rep.add("unit law: 1·" + m.arrows[a].name + " != " + m.arrows[a].name);
    for (int f = 0; f < c.n_mor(); ++f)
        for (int g = 0; g < c.n_mor(); ++g) {
            if (!c.composable(f, g)) continue;
            int fg = c.compose(f, g);
            for (int a = 0; a < m.n_arr(); ++a) {
                if (m.arrows[a].cod_o != c.mor[g].dom) continue;
                if (m.act(fg, a) != m.act(f, m.act(g, a)))
                    rep.add("associativity: (fg)a != f(ga) at (" + c.mor[f].name + "," + c.mor[g].name + "," +
                            m.arrows[a].name + ")");
            }
        }
    rep.sort();
    return rep;
}

ValidationReport validate_operadic_module(const UnaryOpCat& o, const OperadicLeftModule& mm) {
    ValidationReport rep = validate_cat_module(o.base, mm.m);
    if (!rep.ok()) return rep;
    const FinCategory& c = o.base;
    const CatLeftModule& m = mm.m;
    if (static_cast<int>(mm.fiber_obj_m.size()) != m.n_arr())
        throw StructuralError("module fiber_obj size mismatch");
    for (int a = 0; a < m.n_arr(); ++a)
        for (int g = 0; g < c.n_mor(); ++g) {
            int v = mm.fmm(a, g);
            bool comp = m.arrows[a].cod_o == c.mor[g].dom;
            if (!comp) {
                if (v >= 0)
                    rep.add("module fiber_mor: entry on non-triangle (" + m.arrows[a].name + "," +
                            c.mor[g].name + ")");
                continue;
            }
            if (v < 0) {
                rep.add("module fiber_mor: missing triangle (" + m.arrows[a].name + "," + c.mor[g].name + ")");
                continue;
            }
            int ga = m.act(g, a);
            if (m.arrows[v].dom_l != mm.fiber_obj_m[ga] || m.arrows[v].cod_o != o.fiber_obj[g])
                rep.add("module fiber_mor: dom/cod wrong at (" + m.arrows[a].name + "," + c.mor[g].name + ")");
        }
    if (!rep.ok()) {
        rep.sort();
        return rep;
    }
    // compatibility of the family (G_S) with the action:
    // fmm(psi·phi, g') = fm(psi, g')·fmm(phi, g'∘psi)
    for (int phi = 0; phi < m.n_arr(); ++phi)
        for (int psi = 0; psi < c.n_mor(); ++psi) {
            if (m.arrows[phi].cod_o != c.mor[psi].dom) continue;
            for (int g2 = 0; g2 < c.n_mor(); ++g2) {
                if (!c.composable(g2, psi)) continue;
                int g = c.compose(g2, psi);
                int lhs = mm.fmm(m.act(psi, phi), g2);
                int rhs = m.act(o.fm(psi, g2), mm.fmm(phi, g));
                if (lhs != rhs)
                    rep.add("module fiber family: compatibility fails at (" + m.arrows[phi].name + "," +
                            c.mor[psi].name + "," + c.mor[g2].name + ")");
            }
        }
    // fiber-of-fiber, object part
    for (int a = 0; a < m.n_arr(); ++a)
        for (int g = 0; g < c.n_mor(); ++g) {
            if (m.arrows[a].cod_o != c.mor[g].dom) continue;
            if (mm.fiber_obj_m[mm.fmm(a, g)] != mm.fiber_obj_m[a])
                rep.add("module fiber-of-fiber (objects): fails at (" + m.arrows[a].name + "," + c.mor[g].name +
                        ")");
        }
    // fiber-of-fiber, morphism part: (phi_T)_{F(c)} = phi_S
    for (int phi = 0; phi < m.n_arr(); ++phi)
        for (int a = 0; a < c.n_mor(); ++a) {
            if (m.arrows[phi].cod_o != c.mor[a].dom) continue;
            for (int cc = 0; cc < c.n_mor(); ++cc) {
                if (!c.composable(cc, a)) continue;
                int l = c.compose(cc, a);
                int phi_S = mm.fmm(phi, a);
                int phi_T = mm.fmm(phi, l);
                int a_T = o.fm(a, cc);
                if (m.arrows[phi_T].cod_o != c.mor[a_T].dom) {
                    rep.add("module fiber-of-fiber (morphisms): ill-typed at (" + m.arrows[phi].name + "," +
                            c.mor[a].name + "," + c.mor[cc].name + ")");
                    continue;
                }
                if (mm.fmm(phi_T, a_T) != phi_S)
                    rep.add("module fiber-of-fiber (morphisms): fails at (" + m.arrows[phi].name + "," +
                            c.mor[a].name + "," + c.mor[cc].name + ")");
            }
        }
    rep.sort();
    return rep;
}

CatLeftModule chaos(const std::vector<std::string>& lobj, const FinCategory& c) {
    CatLeftModule m;
    m.lobj = lobj;
    for (int l = 0; l < m.n_lobj(); ++l)
        for (int s = 0; s < c.n_obj(); ++s) m.arrows.push_back({l, s, lobj[l] + "->" + c.obj_names[s]});
    m.init_tables(c);
    for (int g = 0; g < c.n_mor(); ++g)
        for (int a = 0; a < m.n_arr(); ++a) {
            if (m.arrows[a].cod_o != c.mor[g].dom) continue;
            m.set_act(g, a, m.arrows[a].dom_l * c.n_obj() + c.mor[g].cod);
        }
    return m;
}

OperadicLeftModule self_module(const UnaryOpCat& o) {
    OperadicLeftModule out;
    const FinCategory& c = o.base;
    out.m.lobj = c.obj_names;
    for (int f = 0; f < c.n_mor(); ++f) out.m.arrows.push_back({c.mor[f].dom, c.mor[f].cod, c.mor[f].name});
    out.m.init_tables(c);
    for (int g = 0; g < c.n_mor(); ++g)
        for (int f = 0; f < c.n_mor(); ++f)
            if (c.composable(g, f)) out.m.set_act(g, f, c.compose(g, f));
    out.fiber_obj_m.resize(c.n_mor());
    for (int f = 0; f < c.n_mor(); ++f) out.fiber_obj_m[f] = o.fiber_obj[f];
    for (int a = 0; a < c.n_mor(); ++a)
        for (int g = 0; g < c.n_mor(); ++g)
            if (c.composable(g, a)) out.set_fmm(a, g, o.fm(a, g));
    return out;
}

CatLeftModule module_from_functor(const FinCategory& d, const FinCategory& c, const FinFunctor& f) {
    CatLeftModule m;
    m.lobj = d.obj_names;
    for (int l = 0; l < d.n_obj(); ++l)
        for (int g = 0; g < c.n_mor(); ++g)
            if (c.mor[g].dom == f.obj_map[l]) m.arrows.push_back({l, c.mor[g].cod, d.obj_names[l] + ":" + c.mor[g].name});
    // arrow i corresponds to the underlying morphism of c recovered by name
    m.init_tables(c);
    for (int g = 0; g < c.n_mor(); ++g)
        for (int a = 0; a < m.n_arr(); ++a) {
            if (m.arrows[a].cod_o != c.mor[g].dom) continue;
            // find the underlying morphism of arrow a
            int l = m.arrows[a].dom_l;
            std::string base = m.arrows[a].name.substr(d.obj_names[l].size() + 1);
            int underlying = c.find_mor(base);
            int composed = c.compose(g, underlying);
            m.set_act(g, a, m.find_arrow(d.obj_names[l] + ":" + c.mor[composed].name));
        }
    return m;
}

OvermoduleResult overmodule(const FinCategory& c, const CatLeftModule& m, int S) {
    OvermoduleResult out;
    auto sl = slice(c, S);
    std::vector<int> over_of(m.n_arr(), -1);
    for (int a = 0; a < m.n_arr(); ++a) {
        if (m.arrows[a].cod_o != S) continue;
        over_of[a] = static_cast<int>(out.obj_to_arrow.size());
        out.obj_to_arrow.push_back(a);
        out.mod.lobj.push_back(m.arrows[a].name);
    }
    for (int t = 0; t < sl.cat.n_obj(); ++t) {
        int g = sl.obj_to_mor[t];
        for (int phi = 0; phi < m.n_arr(); ++phi) {
            if (m.arrows[phi].cod_o != c.mor[g].dom) continue;
            int alpha = m.act(g, phi);
            CatLeftModule::Arrow arr;
            arr.dom_l = over_of[alpha];
            arr.cod_o = t;
            arr.name = m.arrows[phi].name + "|" + c.mor[g].name;
            out.mod.arrows.push_back(arr);
            out.arr_tag.emplace_back(phi, t);
        }
    }
    out.mod.init_tables(sl.cat);
    for (int mu = 0; mu < sl.cat.n_mor(); ++mu) {
        auto [top, tgt] = sl.mor_to_tri[mu];
        for (int a = 0; a < static_cast<int>(out.arr_tag.size()); ++a) {
            if (out.mod.arrows[a].cod_o != sl.cat.mor[mu].dom) continue;
            int phi = out.arr_tag[a].first;
            int res_phi = m.act(top, phi);
            for (int b = 0; b < static_cast<int>(out.arr_tag.size()); ++b)
                if (out.arr_tag[b].first == res_phi && out.arr_tag[b].second == tgt) {
                    out.mod.set_act(mu, a, b);
                    break;
                }
        }
    }
    return out;
}

int DecollageModuleResult::find_arrow(int psi, int leg) const {
    for (int i = 0; i < static_cast<int>(arr_tag.size()); ++i)
        if (arr_tag[i].first == psi && arr_tag[i].second == leg) return i;
    return -1;
}

DecollageModuleResult decollage_module(const FinCategory& a, const CatLeftModule& b,
                                       const DecollageTags& dec_tags) {
    DecollageModuleResult out;
    CatLeftModule& m = out.mod.m;
    for (int i = 0; i < b.n_arr(); ++i) m.lobj.push_back("[" + b.arrows[i].name + "]");
    for (int psi = 0; psi < b.n_arr(); ++psi)
        for (int f = 0; f < a.n_mor(); ++f) {
            if (b.arrows[psi].cod_o != a.mor[f].dom) continue;
            CatLeftModule::Arrow arr;
            arr.dom_l = b.act(f, psi);
            arr.cod_o = f;
            arr.name = b.arrows[psi].name + "|" + a.mor[f].name;
            m.arrows.push_back(arr);
            out.arr_tag.emplace_back(psi, f);
        }
    int n_dmor = static_cast<int>(dec_tags.mor_pair.size());
    m.action.assign(static_cast<size_t>(n_dmor) * m.n_arr(), -1);
    for (int mu = 0; mu < n_dmor; ++mu) {
        auto [top, leg] = dec_tags.mor_pair[mu];
        int dom_obj = a.compose(leg, top);
        for (int i = 0; i < m.n_arr(); ++i) {
            if (out.arr_tag[i].second != dom_obj) continue;
            int psi = out.arr_tag[i].first;
            m.set_act(mu, i, out.find_arrow(b.act(top, psi), leg));
        }
    }
    out.mod.fiber_obj_m.resize(m.n_arr());
    for (int i = 0; i < m.n_arr(); ++i) out.mod.fiber_obj_m[i] = out.arr_tag[i].first;
    for (int i = 0; i < m.n_arr(); ++i)
        for (int mu = 0; mu < n_dmor; ++mu) {
            auto [top, leg] = dec_tags.mor_pair[mu];
            if (out.arr_tag[i].second != a.compose(leg, top)) continue;
            out.mod.set_fmm(i, mu, out.find_arrow(out.arr_tag[i].first, top));
        }
    return out;
}

int TautModuleResult::find_darr(int psi, int leg) const {
    for (int i = 0; i < static_cast<int>(darr_tag.size()); ++i)
        if (darr_tag[i].first == psi && darr_tag[i].second == leg) return n_barr + i;
    return -1;
}

TautModuleResult tautological_module(const FinCategory& a, const CatLeftModule& b,
                                     const TautTags& taut_tags) {
    TautModuleResult out;
    out.n_bobj = b.n_lobj();
    out.n_barr = b.n_arr();
    CatLeftModule& m = out.mod.m;
    for (int l = 0; l < b.n_lobj(); ++l) m.lobj.push_back(b.lobj[l]);
    for (int i = 0; i < b.n_arr(); ++i) m.lobj.push_back("[" + b.arrows[i].name + "]");
    for (int al = 0; al < b.n_arr(); ++al) {
        CatLeftModule::Arrow arr;
        arr.dom_l = b.arrows[al].dom_l;
        arr.cod_o = taut_tags.obj_of_aobj(b.arrows[al].cod_o);
        arr.name = b.arrows[al].name;
        m.arrows.push_back(arr);
    }
    for (int psi = 0; psi < b.n_arr(); ++psi)
        for (int f = 0; f < a.n_mor(); ++f) {
            if (b.arrows[psi].cod_o != a.mor[f].dom) continue;
            CatLeftModule::Arrow arr;
            arr.dom_l = out.n_bobj + b.act(f, psi);
            arr.cod_o = taut_tags.obj_of_amor(f);
            arr.name = b.arrows[psi].name + "|" + a.mor[f].name;
            m.arrows.push_back(arr);
            out.darr_tag.emplace_back(psi, f);
        }
    const int n_tmor = taut_tags.n_amor + static_cast<int>(taut_tags.dmor_pair.size());
    m.action.assign(static_cast<size_t>(n_tmor) * m.n_arr(), -1);
    for (int g = 0; g < taut_tags.n_amor; ++g)
        for (int al = 0; al < b.n_arr(); ++al) {
            if (b.arrows[al].cod_o != a.mor[g].dom) continue;
            m.set_act(g, al, b.act(g, al));
        }
    for (int k = 0; k < static_cast<int>(taut_tags.dmor_pair.size()); ++k) {
        int mu = taut_tags.n_amor + k;
        auto [top, leg] = taut_tags.dmor_pair[k];
        int dom_obj = taut_tags.obj_of_amor(a.compose(leg, top));
        for (int i = 0; i < static_cast<int>(out.darr_tag.size()); ++i) {
            int arr = out.n_barr + i;
            if (m.arrows[arr].cod_o != dom_obj) continue;
            int psi = out.darr_tag[i].first;
            m.set_act(mu, arr, out.find_darr(b.act(top, psi), leg));
        }
    }
    out.mod.fiber_obj_m.resize(m.n_arr());
    for (int al = 0; al < b.n_arr(); ++al) out.mod.fiber_obj_m[al] = out.n_bobj + al;
    for (int i = 0; i < static_cast<int>(out.darr_tag.size()); ++i)
        out.mod.fiber_obj_m[out.n_barr + i] = out.n_bobj + out.darr_tag[i].first;
    for (int al = 0; al < b.n_arr(); ++al)
        for (int g = 0; g < taut_tags.n_amor; ++g) {
            if (b.arrows[al].cod_o != a.mor[g].dom) continue;
            out.mod.set_fmm(al, g, out.find_darr(al, g));
        }
    for (int i = 0; i < static_cast<int>(out.darr_tag.size()); ++i)
        for (int k = 0; k < static_cast<int>(taut_tags.dmor_pair.size()); ++k) {
            int mu = taut_tags.n_amor + k;
            auto [top, leg] = taut_tags.dmor_pair[k];
            int arr = out.n_barr + i;
            int dom_obj = taut_tags.obj_of_amor(a.compose(leg, top));
            if (m.arrows[arr].cod_o != dom_obj) continue;
            out.mod.set_fmm(arr, mu, out.find_darr(out.darr_tag[i].first, top));
        }
    return out;
}

WbuReport check_wbu_cat(const UnaryOpCat& o) {
    WbuReport out;
    const FinCategory& c = o.base;
    for (int f1 = 0; f1 < c.n_mor(); ++f1) {
        int F1 = o.fiber_obj[f1];
        for (int phi = 0; phi < c.n_mor(); ++phi) {
            if (c.mor[phi].dom != F1) continue;
            int count = 0;
            for (int f2 = 0; f2 < c.n_mor(); ++f2) {
                if (c.mor[f2].cod != c.mor[f1].cod) continue;
                for (int ph = 0; ph < c.n_mor(); ++ph) {
                    if (!c.composable(f2, ph) || c.compose(f2, ph) != f1) continue;
                    if (o.fm(ph, f2) == phi) ++count;
                }
            }
            if (count != 1) {
                out.ok = false;
                out.witnesses.push_back("WBU: " + std::to_string(count) + " completions of (" + c.mor[f1].name +
                                        "," + c.mor[phi].name + ")");
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

WbuReport check_wbu_mod(const UnaryOpCat& o, const OperadicLeftModule& mm) {
    WbuReport out;
    const FinCategory& c = o.base;
    const CatLeftModule& m = mm.m;
    for (int alpha = 0; alpha < m.n_arr(); ++alpha) {
        int G = mm.fiber_obj_m[alpha];
        for (int beta = 0; beta < m.n_arr(); ++beta) {
            if (m.arrows[beta].dom_l != G) continue;
            int count = 0;
            for (int g = 0; g < c.n_mor(); ++g) {
                if (c.mor[g].cod != m.arrows[alpha].cod_o) continue;
                for (int om = 0; om < m.n_arr(); ++om) {
                    if (m.arrows[om].cod_o != c.mor[g].dom) continue;
                    if (m.act(g, om) != alpha) continue;
                    if (mm.fmm(om, g) == beta) ++count;
                }
            }
            if (count != 1) {
                out.ok = false;
                out.witnesses.push_back("module WBU: " + std::to_string(count) + " completions of (" +
                                        m.arrows[alpha].name + "," + m.arrows[beta].name + ")");
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

std::optional<std::pair<int, int>> wbu_complete_cat(const UnaryOpCat& o, int f1, int phi) {
    const FinCategory& c = o.base;
    std::optional<std::pair<int, int>> found;
    for (int f2 = 0; f2 < c.n_mor(); ++f2) {
        if (c.mor[f2].cod != c.mor[f1].cod) continue;
        for (int ph = 0; ph < c.n_mor(); ++ph) {
            if (!c.composable(f2, ph) || c.compose(f2, ph) != f1) continue;
            if (o.fm(ph, f2) == phi) {
                if (found) return std::nullopt;
                found = std::make_pair(ph, f2);
            }
        }
    }
    return found;
}

std::optional<std::pair<int, int>> wbu_complete_mod(const UnaryOpCat& o, const OperadicLeftModule& mm,
                                                    int alpha, int beta) {
    const FinCategory& c = o.base;
    const CatLeftModule& m = mm.m;
    std::optional<std::pair<int, int>> found;
    for (int g = 0; g < c.n_mor(); ++g) {
        if (c.mor[g].cod != m.arrows[alpha].cod_o) continue;
        for (int om = 0; om < m.n_arr(); ++om) {
            if (m.arrows[om].cod_o != c.mor[g].dom) continue;
            if (m.act(g, om) != alpha) continue;
            if (mm.fmm(om, g) == beta) {
                if (found) return std::nullopt;
                found = std::make_pair(om, g);
            }
        }
    }
    return found;
}

bool rigid(const UnaryOpCat& o, const OperadicLeftModule& mm, int x, std::string* witness) {
    (void)o;
    int count = 0;
    std::string where;
    for (int a = 0; a < mm.m.n_arr(); ++a)
        if (mm.m.arrows[a].dom_l == x && mm.fiber_obj_m[a] == x) {
            ++count;
            where += (where.empty() ? "" : ", ") + mm.m.arrows[a].name;
        }
    if (witness) *witness = where;
    return count == 1;
}

P1P2Result p1p2(const UnaryOpCat& o, const OperadicLeftModule& mm, int upsilon) {
    P1P2Result out;
    const FinCategory& c = o.base;
    const CatLeftModule& m = mm.m;
    auto from_u = m.arrows_from(upsilon);
    for (int bang : from_u) {
        int w = m.arrows[bang].cod_o;
        bool terminal = true;
        for (int alpha : from_u) {
            int count = 0;
            for (int h = 0; h < c.n_mor(); ++h) {
                if (c.mor[h].dom != m.arrows[alpha].cod_o || c.mor[h].cod != w) continue;
                if (m.act(h, alpha) == bang) ++count;
            }
            if (count != 1) {
                terminal = false;
                break;
            }
        }
        if (!terminal) continue;
        if (mm.fiber_obj_m[bang] != upsilon) continue;
        bool dom_ok = true;
        for (int f = 0; f < c.n_mor(); ++f) {
            if (c.mor[f].cod != w) continue;
            if (o.fiber_obj[f] != c.mor[f].dom) dom_ok = false;
        }
        for (int top = 0; top < c.n_mor() && dom_ok; ++top)
            for (int leg = 0; leg < c.n_mor(); ++leg) {
                if (c.mor[leg].cod != w || !c.composable(leg, top)) continue;
                if (o.fm(top, leg) != top) dom_ok = false;
            }
        if (!dom_ok) continue;
        out.ok = true;
        out.odot = w;
        out.bang = bang;
        return out;
    }
    out.witnesses.push_back("no arrow out of " + m.lobj[upsilon] + " satisfies (P1)-(P2)");
    return out;
}

ValidationReport validate_opmod_morphism(const UnaryOpCat& o1, const OperadicLeftModule& m1,
                                         const UnaryOpCat& o2, const OperadicLeftModule& m2,
                                         const OpModMorphism& f) {
    ValidationReport rep = validate_operadic_functor(o1, o2, f.phi);
    if (!rep.ok()) return rep;
    const CatLeftModule& a = m1.m;
    const CatLeftModule& b = m2.m;
    if (static_cast<int>(f.psi_obj.size()) != a.n_lobj() || static_cast<int>(f.psi_arrow.size()) != a.n_arr())
        throw StructuralError("module morphism map size mismatch");
    for (int i = 0; i < a.n_arr(); ++i) {
        int j = f.psi_arrow[i];
        if (b.arrows[j].dom_l != f.psi_obj[a.arrows[i].dom_l] ||
            b.arrows[j].cod_o != f.phi.f.obj_map[a.arrows[i].cod_o])
            rep.add("module morphism: dom/cod not preserved at " + a.arrows[i].name);
    }
    for (int g = 0; g < o1.base.n_mor(); ++g)
        for (int i = 0; i < a.n_arr(); ++i) {
            if (a.arrows[i].cod_o != o1.base.mor[g].dom) continue;
            if (f.psi_arrow[a.act(g, i)] != b.act(f.phi.f.mor_map[g], f.psi_arrow[i]))
                rep.add("module morphism: action not preserved at (" + o1.base.mor[g].name + "," +
                        a.arrows[i].name + ")");
        }
    for (int i = 0; i < a.n_arr(); ++i)
        if (f.psi_obj[m1.fiber_obj_m[i]] != m2.fiber_obj_m[f.psi_arrow[i]])
            rep.add("module morphism: fiber objects not preserved at " + a.arrows[i].name);
    for (int i = 0; i < a.n_arr(); ++i)
        for (int g = 0; g < o1.base.n_mor(); ++g) {
            if (a.arrows[i].cod_o != o1.base.mor[g].dom) continue;
            if (f.psi_arrow[m1.fmm(i, g)] != m2.fmm(f.psi_arrow[i], f.phi.f.mor_map[g]))
                rep.add("module morphism: induced fiber arrows not preserved at (" + a.arrows[i].name + "," +
                        o1.base.mor[g].name + ")");
        }
    rep.sort();
    return rep;
}

}  // namespace opcat
