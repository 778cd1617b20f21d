#include "opcat/fixtures.hpp"

#include <fstream>

#include "opcat/common.hpp"

namespace opcat {

std::string canonical_dump(const Json& j) {
    return j.dump(2) + "\n";
}

uint64_t fixture_hash(const Json& j) {
    return fnv1a64(canonical_dump(j));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open fixture " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write fixture " + path);
    out << canonical_dump(j);
}

namespace {

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

int obj_index(const FinCategory& c, const std::string& name) {
    int i = c.find_obj(name);
    if (i < 0) throw StructuralError("unknown object name " + name);
    return i;
}

int mor_index(const FinCategory& c, const std::string& name) {
    int i = c.find_mor(name);
    if (i < 0) throw StructuralError("unknown morphism name " + name);
    return i;
}

}  // namespace

Json save_fincat(const FinCategory& c) {
    Json j;
    j["kind"] = "fincat";
    j["objects"] = c.obj_names;
    Json mors = Json::array();
    for (const auto& m : c.mor) {
        Json e;
        e["name"] = m.name;
        e["dom"] = c.obj_names[m.dom];
        e["cod"] = c.obj_names[m.cod];
        mors.push_back(e);
    }
    j["morphisms"] = mors;
    Json ids = Json::object();
    for (int x = 0; x < c.n_obj(); ++x) ids[c.obj_names[x]] = c.mor[c.id_of[x]].name;
    j["identities"] = ids;
    Json comp = Json::array();
    for (int g = 0; g < c.n_mor(); ++g)
        for (int f = 0; f < c.n_mor(); ++f)
            if (c.composable(g, f) && c.compose(g, f) >= 0)
                comp.push_back(Json::array({c.mor[g].name, c.mor[f].name, c.mor[c.compose(g, f)].name}));
    j["compose"] = comp;
    return j;
}

FinCategory load_fincat(const Json& j) {
    FinCategory c;
    for (const auto& o : j.at("objects")) c.obj_names.push_back(o.get<std::string>());
    for (const auto& m : j.at("morphisms")) {
        FinCategory::Mor mm;
        mm.name = m.at("name").get<std::string>();
        mm.dom = obj_index(c, m.at("dom").get<std::string>());
        mm.cod = obj_index(c, m.at("cod").get<std::string>());
        c.mor.push_back(mm);
    }
    c.id_of.assign(c.n_obj(), -1);
    for (auto it = j.at("identities").begin(); it != j.at("identities").end(); ++it)
        c.id_of[obj_index(c, it.key())] = mor_index(c, it.value().get<std::string>());
    for (int x = 0; x < c.n_obj(); ++x)
        if (c.id_of[x] < 0) throw StructuralError("identity missing for object " + c.obj_names[x]);
    c.init_tables();
    for (const auto& e : j.at("compose"))
        c.set_compose(mor_index(c, e.at(0).get<std::string>()), mor_index(c, e.at(1).get<std::string>()),
                      mor_index(c, e.at(2).get<std::string>()));
    return c;
}

Json save_opcat(const UnaryOpCat& o) {
    Json j;
    j["kind"] = "opcat";
    j["base"] = save_fincat(o.base);
    j["base"].erase("kind");
    Json fo = Json::object();
    for (int f = 0; f < o.base.n_mor(); ++f) fo[o.base.mor[f].name] = o.base.obj_names[o.fiber_obj[f]];
    j["fiber_obj"] = fo;
    Json fm = Json::array();
    for (int leg = 0; leg < o.base.n_mor(); ++leg)
        for (int top = 0; top < o.base.n_mor(); ++top)
            if (o.base.composable(leg, top) && o.fm(top, leg) >= 0)
                fm.push_back(Json::array(
                    {o.base.mor[top].name, o.base.mor[leg].name, o.base.mor[o.fm(top, leg)].name}));
    j["fiber_mor"] = fm;
    if (o.terminals) {
        Json t = Json::array();
        for (int u : *o.terminals) t.push_back(o.base.obj_names[u]);
        j["terminals"] = t;
    }
    return j;
}

UnaryOpCat load_opcat(const Json& j) {
    UnaryOpCat o;
    o.base = load_fincat(j.at("base"));
    o.fiber_obj.assign(o.base.n_mor(), -1);
    for (auto it = j.at("fiber_obj").begin(); it != j.at("fiber_obj").end(); ++it)
        o.fiber_obj[mor_index(o.base, it.key())] = obj_index(o.base, it.value().get<std::string>());
    for (const auto& e : j.at("fiber_mor"))
        o.set_fm(mor_index(o.base, e.at(0).get<std::string>()), mor_index(o.base, e.at(1).get<std::string>()),
                 mor_index(o.base, e.at(2).get<std::string>()));
    if (j.contains("terminals")) {
        std::vector<int> t;
        for (const auto& u : j.at("terminals")) t.push_back(obj_index(o.base, u.get<std::string>()));
        o.terminals = t;
    }
    o.finalize();
    return o;
}

Json save_monoid(const MonoidLike& m) {
    Json j;
    j["kind"] = "monoid";
    j["elements"] = m.names;
    Json tbl = Json::array();
    for (int x = 0; x < m.n(); ++x) {
        Json row = Json::array();
        for (int y = 0; y < m.n(); ++y) row.push_back(m.names[m.m(x, y)]);
        tbl.push_back(row);
    }
    j["table"] = tbl;
    if (m.unit) j["unit"] = m.names[*m.unit];
    if (m.pseudo_units) {
        Json pu = Json::object();
        for (int x = 0; x < m.n(); ++x) pu[m.names[x]] = m.names[(*m.pseudo_units)[x]];
        j["pseudo_units"] = pu;
    }
    return j;
}

MonoidLike load_monoid(const Json& j) {
    MonoidLike m;
    for (const auto& e : j.at("elements")) m.names.push_back(e.get<std::string>());
    auto idx = [&](const std::string& s) {
        for (int i = 0; i < m.n(); ++i)
            if (m.names[i] == s) return i;
        throw StructuralError("unknown monoid element " + s);
    };
    m.mult.assign(static_cast<size_t>(m.n()) * m.n(), -1);
    const auto& tbl = j.at("table");
    for (int x = 0; x < m.n(); ++x)
        for (int y = 0; y < m.n(); ++y) m.mult[x * m.n() + y] = idx(tbl.at(x).at(y).get<std::string>());
    if (j.contains("unit")) m.unit = idx(j.at("unit").get<std::string>());
    if (j.contains("pseudo_units")) {
        std::vector<int> pu(m.n(), -1);
        for (auto it = j.at("pseudo_units").begin(); it != j.at("pseudo_units").end(); ++it)
            pu[idx(it.key())] = idx(it.value().get<std::string>());
        m.pseudo_units = pu;
    }
    return m;
}

Json save_set_operad(const SetOperadFixture& f) {
    Json j;
    j["kind"] = "set_operad";
    j["category"] = f.category_ref;
    j["partial"] = f.operad.partial;
    Json car = Json::object();
    for (int x = 0; x < f.category.base.n_obj(); ++x) car[f.category.base.obj_names[x]] = f.operad.carrier[x];
    j["carrier"] = car;
    Json g = Json::array();
    const auto& c = f.category.base;
    for (int h = 0; h < c.n_mor(); ++h) {
        int F = f.category.fiber_obj[h], B = c.mor[h].cod;
        for (int a = 0; a < f.operad.dim(F); ++a)
            for (int b = 0; b < f.operad.dim(B); ++b) {
                int v = f.operad.g(f.category, h, a, b);
                if (v < 0) continue;
                g.push_back(Json::array({c.mor[h].name, f.operad.carrier[F][a], f.operad.carrier[B][b],
                                         f.operad.carrier[c.mor[h].dom][v]}));
            }
    }
    j["gamma"] = g;
    if (f.cat_units) {
        Json u = Json::array();
        for (size_t k = 0; k < f.cat_units->size(); ++k) {
            // component units are listed by the carrier element name at the
            // chosen terminal of the component
            u.push_back((*f.cat_units)[k]);
        }
        j["cat_units"] = u;
    }
    if (f.pseudo_units) j["pseudo_units"] = *f.pseudo_units;
    return j;
}

SetOperadFixture load_set_operad(const Json& j, const std::string& base_dir) {
    SetOperadFixture f;
    f.category_ref = j.at("category").get<std::string>();
    f.category = load_opcat(read_json_file(base_dir + "/" + f.category_ref));
    f.operad.partial = j.value("partial", false);
    f.operad.carrier.resize(f.category.base.n_obj());
    for (auto it = j.at("carrier").begin(); it != j.at("carrier").end(); ++it) {
        int x = obj_index(f.category.base, it.key());
        for (const auto& e : it.value()) f.operad.carrier[x].push_back(e.get<std::string>());
    }
    auto elem = [&](int obj, const std::string& name) {
        for (int i = 0; i < f.operad.dim(obj); ++i)
            if (f.operad.carrier[obj][i] == name) return i;
        throw StructuralError("unknown carrier element " + name);
    };
    f.operad.init_tables(f.category);
    for (const auto& e : j.at("gamma")) {
        int h = mor_index(f.category.base, e.at(0).get<std::string>());
        int F = f.category.fiber_obj[h], B = f.category.base.mor[h].cod, A = f.category.base.mor[h].dom;
        f.operad.set_g(f.category, h, elem(F, e.at(1).get<std::string>()), elem(B, e.at(2).get<std::string>()),
                       elem(A, e.at(3).get<std::string>()));
    }
    if (j.contains("cat_units")) f.cat_units = j.at("cat_units").get<std::vector<int>>();
    if (j.contains("pseudo_units")) f.pseudo_units = j.at("pseudo_units").get<std::vector<std::vector<int>>>();
    return f;
}

namespace {

Json save_basis(const Basis& b) {
    Json j;
    j["labels"] = b.labels;
    if (!b.degree.empty()) j["degrees"] = b.degree;
    return j;
}

Basis load_basis(const Json& j) {
    Basis b;
    for (const auto& l : j.at("labels")) b.labels.push_back(l.get<std::string>());
    if (j.contains("degrees")) b.degree = j.at("degrees").get<std::vector<int>>();
    return b;
}

Json save_vec(const RatVec& v) {
    Json j = Json::array();
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0) j.push_back(Json::array({rat_str(v[i]), i}));
    return j;
}

RatVec load_vec(const Json& j, int dim) {
    RatVec v(dim);
    for (const auto& e : j) v[e.at(1).get<int>()] = rat_parse(e.at(0).get<std::string>());
    return v;
}

}  // namespace

Json save_lin_operad(const LinOperadFixture& f) {
    Json j;
    j["kind"] = "lin_operad";
    j["category"] = f.category_ref;
    Json car = Json::object();
    for (int x = 0; x < f.category.base.n_obj(); ++x)
        car[f.category.base.obj_names[x]] = save_basis(f.operad.carrier[x]);
    j["carrier"] = car;
    Json g = Json::array();
    const auto& c = f.category.base;
    for (int h = 0; h < c.n_mor(); ++h) {
        int F = f.category.fiber_obj[h], B = c.mor[h].cod;
        for (int a = 0; a < f.operad.dim(F); ++a)
            for (int b = 0; b < f.operad.dim(B); ++b) {
                const RatVec& v = f.operad.gamma[h][static_cast<size_t>(a) * f.operad.dim(B) + b];
                bool nz = false;
                for (const auto& x : v) nz |= x != 0;
                if (nz) g.push_back(Json::array({c.mor[h].name, a, b, save_vec(v)}));
            }
    }
    j["gamma"] = g;
    if (f.fiberwise_units) {
        Json u = Json::array();
        for (const auto& v : *f.fiberwise_units) u.push_back(save_vec(v));
        j["fiberwise_units"] = u;
    }
    return j;
}

LinOperadFixture load_lin_operad(const Json& j, const std::string& base_dir) {
    LinOperadFixture f;
    f.category_ref = j.at("category").get<std::string>();
    f.category = load_opcat(read_json_file(base_dir + "/" + f.category_ref));
    f.operad.carrier.resize(f.category.base.n_obj());
    for (auto it = j.at("carrier").begin(); it != j.at("carrier").end(); ++it)
        f.operad.carrier[obj_index(f.category.base, it.key())] = load_basis(it.value());
    f.operad.init_tables(f.category);
    for (const auto& e : j.at("gamma")) {
        int h = mor_index(f.category.base, e.at(0).get<std::string>());
        int B = f.category.base.mor[h].cod, A = f.category.base.mor[h].dom;
        f.operad.gamma[h][static_cast<size_t>(e.at(1).get<int>()) * f.operad.dim(B) + e.at(2).get<int>()] =
            load_vec(e.at(3), f.operad.dim(A));
    }
    if (j.contains("fiberwise_units")) {
        std::vector<RatVec> us;
        for (int T = 0; T < f.category.base.n_obj(); ++T)
            us.push_back(load_vec(j.at("fiberwise_units").at(T), f.operad.dim(f.category.U(T))));
        f.fiberwise_units = us;
    }
    return f;
}

Json save_op_module(const OpModuleFixture& f) {
    Json j;
    j["kind"] = "op_module";
    j["category"] = f.category_ref;
    j["objects"] = f.module.m.lobj;
    Json arr = Json::array();
    for (const auto& a : f.module.m.arrows) {
        Json e;
        e["name"] = a.name;
        e["dom"] = f.module.m.lobj[a.dom_l];
        e["cod"] = f.category.base.obj_names[a.cod_o];
        arr.push_back(e);
    }
    j["arrows"] = arr;
    Json act = Json::array();
    for (int g = 0; g < f.category.base.n_mor(); ++g)
        for (int a = 0; a < f.module.m.n_arr(); ++a)
            if (f.module.m.arrows[a].cod_o == f.category.base.mor[g].dom)
                act.push_back(Json::array({f.category.base.mor[g].name, f.module.m.arrows[a].name,
                                           f.module.m.arrows[f.module.m.act(g, a)].name}));
    j["action"] = act;
    Json fo = Json::array();
    for (int a = 0; a < f.module.m.n_arr(); ++a) fo.push_back(f.module.m.lobj[f.module.fiber_obj_m[a]]);
    j["fiber_obj"] = fo;
    Json fm = Json::array();
    for (int a = 0; a < f.module.m.n_arr(); ++a)
        for (int g = 0; g < f.category.base.n_mor(); ++g)
            if (f.module.m.arrows[a].cod_o == f.category.base.mor[g].dom)
                fm.push_back(Json::array({f.module.m.arrows[a].name, f.category.base.mor[g].name,
                                          f.module.m.arrows[f.module.fmm(a, g)].name}));
    j["fiber_mor"] = fm;
    return j;
}

OpModuleFixture load_op_module(const Json& j, const std::string& base_dir) {
    OpModuleFixture f;
    f.category_ref = j.at("category").get<std::string>();
    f.category = load_opcat(read_json_file(base_dir + "/" + f.category_ref));
    for (const auto& o : j.at("objects")) f.module.m.lobj.push_back(o.get<std::string>());
    auto lidx = [&](const std::string& s) {
        for (int i = 0; i < f.module.m.n_lobj(); ++i)
            if (f.module.m.lobj[i] == s) return i;
        throw StructuralError("unknown module object " + s);
    };
    for (const auto& a : j.at("arrows")) {
        CatLeftModule::Arrow arr;
        arr.name = a.at("name").get<std::string>();
        arr.dom_l = lidx(a.at("dom").get<std::string>());
        arr.cod_o = obj_index(f.category.base, a.at("cod").get<std::string>());
        f.module.m.arrows.push_back(arr);
    }
    auto aidx = [&](const std::string& s) {
        int i = f.module.m.find_arrow(s);
        if (i < 0) throw StructuralError("unknown module arrow " + s);
        return i;
    };
    f.module.m.init_tables(f.category.base);
    for (const auto& e : j.at("action"))
        f.module.m.set_act(mor_index(f.category.base, e.at(0).get<std::string>()),
                           aidx(e.at(1).get<std::string>()), aidx(e.at(2).get<std::string>()));
    f.module.fiber_obj_m.clear();
    for (const auto& o : j.at("fiber_obj")) f.module.fiber_obj_m.push_back(lidx(o.get<std::string>()));
    for (const auto& e : j.at("fiber_mor"))
        f.module.set_fmm(aidx(e.at(0).get<std::string>()),
                         mor_index(f.category.base, e.at(1).get<std::string>()),
                         aidx(e.at(2).get<std::string>()));
    return f;
}

Json save_pmodule(const PModuleFixture& f) {
    Json j;
    j["kind"] = "pmodule";
    j["operad"] = f.operad_ref;
    j["module"] = f.module_ref;
    Json car = Json::array();
    for (int l = 0; l < f.module.module.m.n_lobj(); ++l) car.push_back(save_basis(f.pmod.carrier[l]));
    j["carrier"] = car;
    Json nu = Json::array();
    const auto& cm = f.module.module.m;
    for (int a = 0; a < cm.n_arr(); ++a) {
        int G = f.module.module.fiber_obj_m[a], S = cm.arrows[a].cod_o;
        for (int ig = 0; ig < f.pmod.dim(G); ++ig)
            for (int is = 0; is < f.operad.operad.dim(S); ++is) {
                const RatVec& v = f.pmod.nu[a][static_cast<size_t>(ig) * f.operad.operad.dim(S) + is];
                bool nz = false;
                for (const auto& x : v) nz |= x != 0;
                if (nz) nu.push_back(Json::array({cm.arrows[a].name, ig, is, save_vec(v)}));
            }
    }
    j["nu"] = nu;
    return j;
}

PModuleFixture load_pmodule(const Json& j, const std::string& base_dir) {
    PModuleFixture f;
    f.operad_ref = j.at("operad").get<std::string>();
    f.module_ref = j.at("module").get<std::string>();
    f.operad = load_lin_operad(read_json_file(base_dir + "/" + f.operad_ref), dir_of(base_dir + "/" + f.operad_ref));
    f.module = load_op_module(read_json_file(base_dir + "/" + f.module_ref), dir_of(base_dir + "/" + f.module_ref));
    f.pmod.carrier.clear();
    for (const auto& b : j.at("carrier")) f.pmod.carrier.push_back(load_basis(b));
    f.pmod.init_tables(f.operad.category, f.module.module, f.operad.operad);
    const auto& cm = f.module.module.m;
    for (const auto& e : j.at("nu")) {
        int a = cm.find_arrow(e.at(0).get<std::string>());
        int S = cm.arrows[a].cod_o, L = cm.arrows[a].dom_l;
        f.pmod.nu[a][static_cast<size_t>(e.at(1).get<int>()) * f.operad.operad.dim(S) + e.at(2).get<int>()] =
            load_vec(e.at(3), f.pmod.dim(L));
    }
    return f;
}

Json save_blob_model(const BlobModel& m) {
    Json j;
    j["kind"] = "blob_model";
    j["name"] = m.name;
    j["N"] = m.N;
    j["vertices"] = m.vnames;
    Json es = Json::array();
    for (const auto& e : m.edges) {
        Json x;
        x["name"] = e.name;
        x["src"] = m.vnames[e.src];
        x["dst"] = m.vnames[e.dst];
        es.push_back(x);
    }
    j["edges"] = es;
    Json rels = Json::array();
    for (const auto& r : m.relations) {
        Json x;
        x["src"] = m.vnames[r.src];
        x["tgt"] = m.vnames[r.tgt];
        Json terms = Json::array();
        for (const auto& [coef, path] : r.terms) {
            Json t;
            t["coef"] = rat_str(coef);
            Json p = Json::array();
            for (int e : path) p.push_back(m.edges[e].name);
            t["path"] = p;
            terms.push_back(t);
        }
        x["terms"] = terms;
        rels.push_back(x);
    }
    j["relations"] = rels;
    j["boundary"] = Json::array({m.vnames[m.bl], m.vnames[m.br]});
    return j;
}

BlobModel load_blob_model(const Json& j) {
    BlobModel m;
    m.name = j.value("name", std::string("model"));
    m.N = j.at("N").get<int>();
    for (const auto& v : j.at("vertices")) m.vnames.push_back(v.get<std::string>());
    auto vidx = [&](const std::string& s) {
        for (int i = 0; i < m.n_v(); ++i)
            if (m.vnames[i] == s) return i;
        throw StructuralError("unknown vertex " + s);
    };
    for (const auto& e : j.at("edges")) {
        BlobModel::Edge edge;
        edge.name = e.at("name").get<std::string>();
        edge.src = vidx(e.at("src").get<std::string>());
        edge.dst = vidx(e.at("dst").get<std::string>());
        m.edges.push_back(edge);
    }
    auto eidx = [&](const std::string& s) {
        for (int i = 0; i < static_cast<int>(m.edges.size()); ++i)
            if (m.edges[i].name == s) return i;
        throw StructuralError("unknown edge " + s);
    };
    for (const auto& r : j.at("relations")) {
        BlobModel::Relation rel;
        rel.src = vidx(r.at("src").get<std::string>());
        rel.tgt = vidx(r.at("tgt").get<std::string>());
        for (const auto& t : r.at("terms")) {
            std::vector<int> path;
            for (const auto& e : t.at("path")) path.push_back(eidx(e.get<std::string>()));
            rel.terms.push_back({rat_parse(t.at("coef").get<std::string>()), path});
        }
        rel.len = rel.terms.empty() ? 0 : static_cast<int>(rel.terms[0].second.size());
        m.relations.push_back(rel);
    }
    m.bl = vidx(j.at("boundary").at(0).get<std::string>());
    m.br = vidx(j.at("boundary").at(1).get<std::string>());
    return m;
}

}  // namespace opcat
