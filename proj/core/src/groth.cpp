#include "opcat/groth.hpp"

#include <algorithm>
#include <functional>

#include "opcat/common.hpp"

namespace opcat {

int GrothResult::find_obj(int T, int t) const {
    for (int i = 0; i < static_cast<int>(obj_tag.size()); ++i)
        if (obj_tag[i].first == T && obj_tag[i].second == t) return i;
    return -1;
}

int GrothResult::find_mor(int f, int eps, int t) const {
    for (int i = 0; i < static_cast<int>(mor_tag.size()); ++i)
        if (mor_tag[i].f == f && mor_tag[i].eps == eps && mor_tag[i].t == t) return i;
    return -1;
}

namespace {

// shared construction; identity element of t in S(T) supplied by flavor
GrothResult build_total(const UnaryOpCat& o, const SetOperad& s,
                        const std::function<int(int, int)>& unit_of) {
    GrothResult out;
    const FinCategory& c = o.base;
    for (int T = 0; T < c.n_obj(); ++T)
        for (int t = 0; t < s.dim(T); ++t) {
            out.obj_tag.emplace_back(T, t);
            out.total.base.obj_names.push_back(s.carrier[T][t] + "@" + c.obj_names[T]);
        }
    for (int f = 0; f < c.n_mor(); ++f) {
        int T = c.mor[f].cod, F = o.fiber_obj[f];
        for (int eps = 0; eps < s.dim(F); ++eps)
            for (int t = 0; t < s.dim(T); ++t) {
                int src = s.g(o, f, eps, t);
                if (src < 0) continue;  // outside the domain of a partial operad
                FinCategory::Mor m;
                m.dom = out.find_obj(c.mor[f].dom, src);
                m.cod = out.find_obj(T, t);
                m.name = "(" + s.carrier[F][eps] + "," + c.mor[f].name + ")->" + s.carrier[T][t];
                out.total.base.mor.push_back(m);
                out.mor_tag.push_back({f, eps, t});
            }
    }
    out.total.base.id_of.assign(out.total.base.n_obj(), -1);
    for (int i = 0; i < out.total.base.n_obj(); ++i) {
        auto [T, t] = out.obj_tag[i];
        int e = unit_of(T, t);
        int id = out.find_mor(c.id_of[T], e, t);
        if (id < 0)
            throw StructuralError("grothendieck: identity (e_t, 1_T) is not a morphism at " +
                                  out.total.base.obj_names[i]);
        out.total.base.id_of[i] = id;
    }
    out.total.base.init_tables();
    for (int j = 0; j < out.total.base.n_mor(); ++j)
        for (int i = 0; i < out.total.base.n_mor(); ++i) {
            if (!out.total.base.composable(j, i)) continue;
            // psi = (y, g) after phi = (omega, f); composite (gamma_{f_C}(omega, y), gf)
            auto [g, y, tc] = out.mor_tag[j];
            auto [f, om, tb] = out.mor_tag[i];
            (void)tb;
            int fC = o.fm(f, g);
            int x = s.g(o, fC, om, y);
            if (x < 0)
                throw StructuralError("grothendieck: composite fiber element undefined; domain coherence broken");
            out.total.base.set_compose(j, i, out.find_mor(c.compose(g, f), x, tc));
        }
    // fibers
    out.total.fiber_obj.resize(out.total.base.n_mor());
    for (int i = 0; i < out.total.base.n_mor(); ++i) {
        auto tag = out.mor_tag[i];
        out.total.fiber_obj[i] = out.find_obj(o.fiber_obj[tag.f], tag.eps);
    }
    for (int leg = 0; leg < out.total.base.n_mor(); ++leg)
        for (int top = 0; top < out.total.base.n_mor(); ++top) {
            if (!out.total.base.composable(leg, top)) continue;
            auto tl = out.mor_tag[leg];
            auto tt = out.mor_tag[top];
            int m = o.fm(tt.f, tl.f);
            out.total.set_fm(top, leg, out.find_mor(m, tt.eps, tl.eps));
        }
    // projection
    out.projection.f.obj_map.resize(out.total.base.n_obj());
    out.projection.f.mor_map.resize(out.total.base.n_mor());
    for (int i = 0; i < out.total.base.n_obj(); ++i) out.projection.f.obj_map[i] = out.obj_tag[i].first;
    for (int i = 0; i < out.total.base.n_mor(); ++i) out.projection.f.mor_map[i] = out.mor_tag[i].f;
    return out;
}

}  // namespace

GrothResult grothendieck_cat(const UnaryOpCat& o_in, const SetOperad& s, const std::vector<int>& e_c) {
    UnaryOpCat o = o_in;
    o.finalize();
    if (!o.terminals) throw StructuralError("grothendieck_cat: base category has no chosen terminals");
    auto vr = validate_set_operad(o, s);
    if (!vr.ok()) throw StructuralError("grothendieck_cat: operad does not validate:\n" + vr.str());
    if (s.partial) throw StructuralError("grothendieck_cat: unital flavor expects a total operad");
    auto lr = check_unital_cat_set(o, s, e_c);
    if (!lr.left || !lr.right) throw StructuralError("grothendieck_cat: unit family is not two-sided unital");
    auto out = build_total(o, s, [&](int T, int) { return e_c[o.comp_of[o.U(T)]]; });
    out.total.finalize();
    std::vector<int> term(out.total.n_comp, -1);
    for (int i = 0; i < out.total.base.n_obj(); ++i) {
        int k = out.total.comp_of[i];
        if (term[k] >= 0) continue;
        int base_comp = o.comp_of[out.obj_tag[i].first];
        term[k] = out.find_obj((*o.terminals)[base_comp], e_c[base_comp]);
    }
    out.total.terminals = term;
    return out;
}

GrothResult grothendieck_pseudo(const UnaryOpCat& o_in, const SetOperad& s,
                                const std::vector<std::vector<int>>& e) {
    UnaryOpCat o = o_in;
    o.finalize();
    auto vr = validate_set_operad(o, s);
    if (!vr.ok()) throw StructuralError("grothendieck_pseudo: operad does not validate:\n" + vr.str());
    auto lr = check_pseudo_unital(o, s, e);
    if (!lr.left || !lr.right) throw StructuralError("grothendieck_pseudo: family is not pseudo-unital");
    auto out = build_total(o, s, [&](int T, int t) { return e[T][t]; });
    out.total.finalize();
    return out;
}

ValidationReport check_discrete_fibration(const UnaryOpCat& q, const UnaryOpCat& o,
                                          const OperadicFunctor& p, bool require_pi0_epi) {
    ValidationReport rep = validate_operadic_functor(q, o, p);
    if (!rep.ok()) return rep;
    const FinCategory& cq = q.base;
    const FinCategory& co = o.base;
    for (int f = 0; f < co.n_mor(); ++f) {
        int S = co.mor[f].cod, F = o.fiber_obj[f];
        for (int s = 0; s < cq.n_obj(); ++s) {
            if (p.f.obj_map[s] != S) continue;
            for (int eps = 0; eps < cq.n_obj(); ++eps) {
                if (p.f.obj_map[eps] != F) continue;
                int count = 0;
                for (int sg = 0; sg < cq.n_mor(); ++sg)
                    if (p.f.mor_map[sg] == f && cq.mor[sg].cod == s && q.fiber_obj[sg] == eps) ++count;
                if (count != 1)
                    rep.add("lifting: " + std::to_string(count) + " lifts of " + co.mor[f].name + " at (" +
                            cq.obj_names[eps] + "," + cq.obj_names[s] + ")");
            }
        }
    }
    if (require_pi0_epi) {
        UnaryOpCat qq = q, oo = o;
        qq.finalize();
        oo.finalize();
        std::vector<bool> hit(oo.n_comp, false);
        for (int i = 0; i < cq.n_obj(); ++i) hit[oo.comp_of[p.f.obj_map[i]]] = true;
        for (int k = 0; k < oo.n_comp; ++k)
            if (!hit[k]) rep.add("pi0: component " + std::to_string(k) + " of the base not hit");
    }
    rep.sort();
    return rep;
}

ValidationReport check_partial_discrete_fibration(const UnaryOpCat& q, const UnaryOpCat& o,
                                                  const OperadicFunctor& p, const LiftDomains& lifts) {
    ValidationReport rep = validate_operadic_functor(q, o, p);
    if (!rep.ok()) return rep;
    const FinCategory& cq = q.base;
    const FinCategory& co = o.base;
    if (static_cast<int>(lifts.size()) != co.n_mor()) throw StructuralError("lift domains size mismatch");

    auto find_lift = [&](int f, int eps, int s) {
        int found = -1, count = 0;
        for (int sg = 0; sg < cq.n_mor(); ++sg)
            if (p.f.mor_map[sg] == f && cq.mor[sg].cod == s && q.fiber_obj[sg] == eps) {
                found = sg;
                ++count;
            }
        return std::make_pair(found, count);
    };

    // (i) unique lift on each declared pair
    for (int f = 0; f < co.n_mor(); ++f)
        for (auto [eps, s] : lifts[f]) {
            auto [sg, count] = find_lift(f, eps, s);
            (void)sg;
            if (count != 1)
                rep.add("(i): " + std::to_string(count) + " lifts of " + co.mor[f].name + " at (" +
                        cq.obj_names[eps] + "," + cq.obj_names[s] + ")");
        }
    // (ii) every morphism of Q is a declared lift
    for (int sg = 0; sg < cq.n_mor(); ++sg) {
        int f = p.f.mor_map[sg];
        if (!lifts[f].count({q.fiber_obj[sg], cq.mor[sg].cod}))
            rep.add("(ii): morphism " + cq.mor[sg].name + " not in L(" + co.mor[f].name + ")");
    }
    // (iii) identities are liftable
    for (int t = 0; t < cq.n_obj(); ++t) {
        int ut = q.fiber_obj[cq.id_of[t]];
        if (!lifts[co.id_of[p.f.obj_map[t]]].count({ut, t}))
            rep.add("(iii): identity pair missing at " + cq.obj_names[t]);
    }
    // composability equivalence
    for (int g = 0; g < co.n_mor(); ++g)
        for (int f = 0; f < co.n_mor(); ++f) {
            if (!co.composable(g, f)) continue;
            int gf = co.compose(g, f);
            int fC = o.fm(f, g);
            int Y = o.fiber_obj[g], C = co.mor[g].cod, F = o.fiber_obj[f];
            for (int y = 0; y < cq.n_obj(); ++y) {
                if (p.f.obj_map[y] != Y) continue;
                for (int cc = 0; cc < cq.n_obj(); ++cc) {
                    if (p.f.obj_map[cc] != C) continue;
                    for (int eps = 0; eps < cq.n_obj(); ++eps) {
                        if (p.f.obj_map[eps] != F) continue;
                        bool lhs = false, rhs = false;
                        if (lifts[g].count({y, cc})) {
                            auto [sg, n] = find_lift(g, y, cc);
                            if (n == 1) lhs = lifts[f].count({eps, cq.mor[sg].dom}) > 0;
                        }
                        if (lifts[fC].count({eps, y})) {
                            auto [sg, n] = find_lift(fC, eps, y);
                            if (n == 1) rhs = lifts[gf].count({cq.mor[sg].dom, cc}) > 0;
                        }
                        if (lhs != rhs)
                            rep.add("composability equivalence: fails at (" + co.mor[f].name + "," +
                                    co.mor[g].name + ") objs (" + cq.obj_names[eps] + "," + cq.obj_names[y] +
                                    "," + cq.obj_names[cc] + ")");
                    }
                }
            }
        }
    rep.sort();
    return rep;
}

ExtractResult fibration_to_operad(const UnaryOpCat& q, const UnaryOpCat& o, const OperadicFunctor& p,
                                  const LiftDomains* lifts) {
    ExtractResult out;
    const FinCategory& cq = q.base;
    const FinCategory& co = o.base;
    out.elem_of.assign(co.n_obj(), {});
    std::vector<int> idx_in(cq.n_obj(), -1);
    for (int i = 0; i < cq.n_obj(); ++i) {
        int T = p.f.obj_map[i];
        idx_in[i] = static_cast<int>(out.elem_of[T].size());
        out.elem_of[T].push_back(i);
    }
    out.s.partial = lifts != nullptr;
    out.s.carrier.resize(co.n_obj());
    for (int T = 0; T < co.n_obj(); ++T)
        for (int i : out.elem_of[T]) out.s.carrier[T].push_back(cq.obj_names[i]);
    out.s.init_tables(o);
    for (int sg = 0; sg < cq.n_mor(); ++sg) {
        int f = p.f.mor_map[sg];
        int eps = q.fiber_obj[sg];
        int t = cq.mor[sg].cod;
        out.s.set_g(o, f, idx_in[eps], idx_in[t], idx_in[cq.mor[sg].dom]);
    }
    if (!out.s.partial) {
        for (int h = 0; h < co.n_mor(); ++h)
            for (int v : out.s.gamma[h])
                if (v < 0) throw StructuralError("fibration_to_operad: missing lift; run the fibration check");
    }
    out.pseudo_units.assign(co.n_obj(), {});
    for (int T = 0; T < co.n_obj(); ++T)
        for (int i : out.elem_of[T]) out.pseudo_units[T].push_back(idx_in[q.fiber_obj[cq.id_of[i]]]);
    if (q.terminals && o.terminals) {
        UnaryOpCat qq = q, oo = o;
        qq.finalize();
        oo.finalize();
        out.cat_units.assign(oo.n_comp, -1);
        for (int k = 0; k < qq.n_comp; ++k) {
            int u = (*q.terminals)[k];
            out.cat_units[oo.comp_of[p.f.obj_map[u]]] = idx_in[u];
        }
    }
    return out;
}

bool is_operadic_iso(const UnaryOpCat& a, const UnaryOpCat& b, const std::vector<int>& obj_map,
                     const std::vector<int>& mor_map, std::string* why) {
    std::string w;
    if (!is_category_iso(a.base, b.base, obj_map, mor_map, &w)) {
        if (why) *why = w;
        return false;
    }
    OperadicFunctor phi;
    phi.f.obj_map = obj_map;
    phi.f.mor_map = mor_map;
    auto rep = validate_operadic_functor(a, b, phi);
    if (!rep.ok()) {
        if (why) *why = rep.items.front();
        return false;
    }
    return true;
}

namespace {

RoundTrip compare_operads(const UnaryOpCat& o, const SetOperad& s, const GrothResult& g,
                          const ExtractResult& e) {
    RoundTrip rt;
    const FinCategory& co = o.base;
    for (int T = 0; T < co.n_obj(); ++T) {
        if (e.s.dim(T) != s.dim(T)) {
            rt.why = "carrier dimension differs at " + co.obj_names[T];
            return rt;
        }
        for (int t = 0; t < s.dim(T); ++t)
            if (g.obj_tag[e.elem_of[T][t]] != std::make_pair(T, t)) {
                rt.why = "canonical tagging broken at " + co.obj_names[T];
                return rt;
            }
    }
    for (int h = 0; h < co.n_mor(); ++h)
        if (e.s.gamma[h] != s.gamma[h]) {
            rt.why = "gamma differs at " + co.mor[h].name;
            return rt;
        }
    rt.ok = true;
    return rt;
}

}  // namespace

RoundTrip roundtrip_operad_pseudo(const UnaryOpCat& o, const SetOperad& s,
                                  const std::vector<std::vector<int>>& e) {
    auto g = grothendieck_pseudo(o, s, e);
    LiftDomains lifts(o.base.n_mor());
    for (int i = 0; i < g.total.base.n_mor(); ++i) {
        auto tag = g.mor_tag[i];
        lifts[tag.f].insert({g.total.fiber_obj[i], g.total.base.mor[i].cod});
    }
    auto fr = s.partial ? check_partial_discrete_fibration(g.total, o, g.projection, lifts)
                        : check_discrete_fibration(g.total, o, g.projection, false);
    if (!fr.ok()) return {false, "projection is not a fibration: " + fr.items.front()};
    auto ex = fibration_to_operad(g.total, o, g.projection, s.partial ? &lifts : nullptr);
    auto rt = compare_operads(o, s, g, ex);
    if (!rt.ok) return rt;
    if (ex.pseudo_units != e) return {false, "pseudo-units differ after the round trip"};
    return {true, ""};
}

RoundTrip roundtrip_operad_cat(const UnaryOpCat& o_in, const SetOperad& s, const std::vector<int>& e_c) {
    UnaryOpCat o = o_in;
    o.finalize();
    auto g = grothendieck_cat(o, s, e_c);
    auto fr = check_discrete_fibration(g.total, o, g.projection, true);
    if (!fr.ok()) return {false, "projection is not a fibration: " + fr.items.front()};
    auto ex = fibration_to_operad(g.total, o, g.projection, nullptr);
    auto rt = compare_operads(o, s, g, ex);
    if (!rt.ok) return rt;
    if (ex.cat_units != e_c) return {false, "cat units differ after the round trip"};
    return {true, ""};
}

RoundTrip roundtrip_fibration_pseudo(const UnaryOpCat& q, const UnaryOpCat& o, const OperadicFunctor& p,
                                     const LiftDomains* lifts) {
    auto ex = fibration_to_operad(q, o, p, lifts);
    auto g = grothendieck_pseudo(o, ex.s, ex.pseudo_units);
    std::vector<int> obj_map(g.total.base.n_obj(), -1);
    for (int i = 0; i < g.total.base.n_obj(); ++i) {
        auto [T, t] = g.obj_tag[i];
        obj_map[i] = ex.elem_of[T][t];
    }
    std::vector<int> mor_map(g.total.base.n_mor(), -1);
    for (int i = 0; i < g.total.base.n_mor(); ++i) {
        auto tag = g.mor_tag[i];
        int eps = obj_map[g.total.fiber_obj[i]];
        int cod = obj_map[g.total.base.mor[i].cod];
        int found = -1, count = 0;
        for (int sg = 0; sg < q.base.n_mor(); ++sg)
            if (p.f.mor_map[sg] == tag.f && q.base.mor[sg].cod == cod && q.fiber_obj[sg] == eps) {
                found = sg;
                ++count;
            }
        if (count != 1) return {false, "lift not unique while rebuilding " + g.total.base.mor[i].name};
        mor_map[i] = found;
    }
    UnaryOpCat qq = q;
    qq.terminals.reset();  // compare the non-unital structures
    UnaryOpCat tt = g.total;
    tt.terminals.reset();
    std::string why;
    if (!is_operadic_iso(tt, qq, obj_map, mor_map, &why)) return {false, why};
    return {true, ""};
}

bool pi0_bijection(const UnaryOpCat& total, const UnaryOpCat& base, const OperadicFunctor& p) {
    UnaryOpCat t = total, b = base;
    t.finalize();
    b.finalize();
    std::vector<int> img(t.n_comp, -1);
    std::vector<bool> hit(b.n_comp, false);
    for (int i = 0; i < t.base.n_obj(); ++i) {
        int k = t.comp_of[i], l = b.comp_of[p.f.obj_map[i]];
        if (img[k] >= 0 && img[k] != l) return false;
        img[k] = l;
    }
    for (int k = 0; k < t.n_comp; ++k) {
        if (img[k] < 0) return false;
        if (hit[img[k]]) return false;
        hit[img[k]] = true;
    }
    for (bool h : hit)
        if (!h) return false;
    return true;
}

}  // namespace opcat
