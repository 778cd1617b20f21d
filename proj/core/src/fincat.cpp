#include "opcat/fincat.hpp"

#include <algorithm>

#include "opcat/common.hpp"

namespace opcat {

int FinCategory::find_obj(const std::string& name) const {
    for (int i = 0; i < n_obj(); ++i)
        if (obj_names[i] == name) return i;
    return -1;
}

int FinCategory::find_mor(const std::string& name) const {
    for (int i = 0; i < n_mor(); ++i)
        if (mor[i].name == name) return i;
    return -1;
}

int FinCategory::unique_hom(int dom, int cod) const {
    int found = -1;
    for (int i = 0; i < n_mor(); ++i)
        if (mor[i].dom == dom && mor[i].cod == cod) {
            if (found >= 0) return -1;
            found = i;
        }
    return found;
}

std::vector<int> FinCategory::homset(int dom, int cod) const {
    std::vector<int> out;
    for (int i = 0; i < n_mor(); ++i)
        if (mor[i].dom == dom && mor[i].cod == cod) out.push_back(i);
    return out;
}

ValidationReport validate_category(const FinCategory& c) {
    ValidationReport rep;
    const int M = c.n_mor();
    if (static_cast<int>(c.id_of.size()) != c.n_obj()) {
        rep.add("structure: identity table size mismatch");
        return rep;
    }
    if (c.comp.size() != static_cast<size_t>(M) * M) {
        rep.add("structure: composition table size mismatch");
        return rep;
    }
    for (int i = 0; i < M; ++i) {
        if (c.mor[i].dom < 0 || c.mor[i].dom >= c.n_obj() || c.mor[i].cod < 0 || c.mor[i].cod >= c.n_obj())
            throw StructuralError("morphism " + c.mor[i].name + ": dom/cod index out of range");
    }
    for (int x = 0; x < c.n_obj(); ++x) {
        int e = c.id_of[x];
        if (e < 0 || e >= M) throw StructuralError("identity index out of range at object " + c.obj_names[x]);
        if (c.mor[e].dom != x || c.mor[e].cod != x)
            rep.add("identity: id(" + c.obj_names[x] + ") is not an endomorphism of its object");
    }
    // composition totality / dom-cod discipline
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            int gf = c.compose(g, f);
            if (!c.composable(g, f)) {
                if (gf != -1)
                    rep.add("compose: table entry on non-composable pair (" + c.mor[g].name + "," + c.mor[f].name + ")");
                continue;
            }
            if (gf < 0) {
                rep.add("compose: missing entry for composable pair (" + c.mor[g].name + "," + c.mor[f].name + ")");
                continue;
            }
            if (c.mor[gf].dom != c.mor[f].dom || c.mor[gf].cod != c.mor[g].cod)
                rep.add("compose: dom/cod of " + c.mor[g].name + "∘" + c.mor[f].name + " wrong");
        }
    if (!rep.ok()) {
        rep.sort();
        return rep;  // laws below assume a well-shaped table
    }
    // unit laws
    for (int f = 0; f < M; ++f) {
        if (c.compose(f, c.id_of[c.mor[f].dom]) != f)
            rep.add("unit: " + c.mor[f].name + "∘id != " + c.mor[f].name);
        if (c.compose(c.id_of[c.mor[f].cod], f) != f)
            rep.add("unit: id∘" + c.mor[f].name + " != " + c.mor[f].name);
    }
    // associativity
    for (int h = 0; h < M; ++h)
        for (int g = 0; g < M; ++g) {
            if (!c.composable(h, g)) continue;
            int hg = c.compose(h, g);
            for (int f = 0; f < M; ++f) {
                if (!c.composable(g, f)) continue;
                if (c.compose(hg, f) != c.compose(h, c.compose(g, f)))
                    rep.add("assoc: (" + c.mor[h].name + "∘" + c.mor[g].name + ")∘" + c.mor[f].name + " differs");
            }
        }
    rep.sort();
    return rep;
}

std::vector<int> pi0(const FinCategory& c) {
    std::vector<int> comp(c.n_obj(), -1);
    std::vector<std::vector<int>> adj(c.n_obj());
    for (const auto& m : c.mor) {
        adj[m.dom].push_back(m.cod);
        adj[m.cod].push_back(m.dom);
    }
    int next = 0;
    for (int s = 0; s < c.n_obj(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return comp;
}

int pi0_count(const FinCategory& c) {
    auto comp = pi0(c);
    int n = 0;
    for (int x : comp) n = std::max(n, x + 1);
    return n;
}

ValidationReport validate_functor(const FinCategory& src, const FinCategory& dst, const FinFunctor& f) {
    ValidationReport rep;
    if (static_cast<int>(f.obj_map.size()) != src.n_obj() || static_cast<int>(f.mor_map.size()) != src.n_mor())
        throw StructuralError("functor: map size mismatch");
    for (int m = 0; m < src.n_mor(); ++m) {
        int fm = f.mor_map[m];
        if (dst.mor[fm].dom != f.obj_map[src.mor[m].dom] || dst.mor[fm].cod != f.obj_map[src.mor[m].cod])
            rep.add("functor: dom/cod not preserved at " + src.mor[m].name);
    }
    for (int x = 0; x < src.n_obj(); ++x)
        if (f.mor_map[src.id_of[x]] != dst.id_of[f.obj_map[x]])
            rep.add("functor: identity not preserved at " + src.obj_names[x]);
    for (int g = 0; g < src.n_mor(); ++g)
        for (int m = 0; m < src.n_mor(); ++m) {
            if (!src.composable(g, m)) continue;
            if (f.mor_map[src.compose(g, m)] != dst.compose(f.mor_map[g], f.mor_map[m]))
                rep.add("functor: composition not preserved at (" + src.mor[g].name + "," + src.mor[m].name + ")");
        }
    rep.sort();
    return rep;
}

FinCategory adjoin_terminal(const FinCategory& c, int* terminal_obj) {
    FinCategory out = c;
    int odot = out.n_obj();
    out.obj_names.push_back("⊙");
    if (terminal_obj) *terminal_obj = odot;
    int M = c.n_mor();
    // bang[x]: the new morphism x -> ⊙; id of ⊙ is bang[odot]
    std::vector<int> bang(odot + 1);
    for (int x = 0; x <= odot; ++x) {
        bang[x] = out.n_mor();
        FinCategory::Mor m;
        m.dom = x;
        m.cod = odot;
        m.name = (x == odot) ? "id_⊙" : ("!" + c.obj_names[x]);
        out.mor.push_back(m);
    }
    out.id_of.push_back(bang[odot]);
    out.init_tables();
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) out.set_compose(g, f, c.compose(g, f));
    // bang ∘ f = bang(dom f); id_⊙ ∘ bang = bang
    for (int f = 0; f < M; ++f) out.set_compose(bang[c.mor[f].cod], f, bang[c.mor[f].dom]);
    for (int x = 0; x <= odot; ++x) out.set_compose(bang[odot], bang[x], bang[x]);
    return out;
}

SliceResult slice(const FinCategory& c, int S) {
    if (S < 0 || S >= c.n_obj()) throw StructuralError("slice: object index out of range");
    SliceResult out;
    std::vector<int> slice_of(c.n_mor(), -1);
    for (int f = 0; f < c.n_mor(); ++f) {
        if (c.mor[f].cod != S) continue;
        slice_of[f] = static_cast<int>(out.obj_to_mor.size());
        out.obj_to_mor.push_back(f);
        out.cat.obj_names.push_back(c.mor[f].name);
    }
    // morphisms: triangles (top φ, target g) with g∘φ = source
    for (size_t t = 0; t < out.obj_to_mor.size(); ++t) {
        int g = out.obj_to_mor[t];
        for (int phi = 0; phi < c.n_mor(); ++phi) {
            if (!c.composable(g, phi)) continue;
            int f = c.compose(g, phi);
            // triangle: φ : f -> g in c/S
            FinCategory::Mor m;
            m.dom = slice_of[f];
            m.cod = static_cast<int>(t);
            m.name = c.mor[phi].name + "|" + c.mor[g].name;
            out.mor_to_tri.emplace_back(phi, static_cast<int>(t));
            out.cat.mor.push_back(m);
        }
    }
    out.cat.id_of.assign(out.cat.n_obj(), -1);
    for (int i = 0; i < out.cat.n_mor(); ++i) {
        auto [phi, t] = out.mor_to_tri[i];
        int f = out.cat.mor[i].dom;
        if (phi == c.id_of[c.mor[out.obj_to_mor[f]].dom] && f == static_cast<int>(t)) out.cat.id_of[f] = i;
    }
    out.cat.init_tables();
    for (int j = 0; j < out.cat.n_mor(); ++j)
        for (int i = 0; i < out.cat.n_mor(); ++i) {
            if (!out.cat.composable(j, i)) continue;
            int top = c.compose(out.mor_to_tri[j].first, out.mor_to_tri[i].first);
            // locate triangle (top, cod j)
            int target = -1;
            for (int k = 0; k < out.cat.n_mor(); ++k)
                if (out.mor_to_tri[k].first == top && out.cat.mor[k].cod == out.cat.mor[j].cod &&
                    out.cat.mor[k].dom == out.cat.mor[i].dom) {
                    target = k;
                    break;
                }
            out.cat.set_compose(j, i, target);
        }
    out.projection.obj_map.resize(out.cat.n_obj());
    out.projection.mor_map.resize(out.cat.n_mor());
    for (int i = 0; i < out.cat.n_obj(); ++i) out.projection.obj_map[i] = c.mor[out.obj_to_mor[i]].dom;
    for (int i = 0; i < out.cat.n_mor(); ++i) out.projection.mor_map[i] = out.mor_to_tri[i].first;
    return out;
}

bool is_category_iso(const FinCategory& a, const FinCategory& b, const std::vector<int>& obj_map,
                     const std::vector<int>& mor_map, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.n_obj() != b.n_obj() || a.n_mor() != b.n_mor()) return fail("cardinality mismatch");
    std::vector<bool> ohit(b.n_obj(), false), mhit(b.n_mor(), false);
    for (int x : obj_map) {
        if (x < 0 || x >= b.n_obj() || ohit[x]) return fail("object map not bijective");
        ohit[x] = true;
    }
    for (int x : mor_map) {
        if (x < 0 || x >= b.n_mor() || mhit[x]) return fail("morphism map not bijective");
        mhit[x] = true;
    }
    FinFunctor f{obj_map, mor_map};
    auto rep = validate_functor(a, b, f);
    if (!rep.ok()) return fail("not a functor: " + rep.items.front());
    return true;
}

}  // namespace opcat
