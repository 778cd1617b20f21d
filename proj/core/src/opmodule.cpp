#include "opcat/opmodule.hpp"

#include <algorithm>

#include "opcat/common.hpp"

namespace opcat {

void PModule::init_tables(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p) {
    (void)o;
    nu.assign(mcat.m.n_arr(), {});
    for (int a = 0; a < mcat.m.n_arr(); ++a) {
        int G = mcat.fiber_obj_m[a], S = mcat.m.arrows[a].cod_o, L = mcat.m.arrows[a].dom_l;
        nu[a].assign(static_cast<size_t>(dim(G)) * p.dim(S), RatVec(dim(L)));
    }
}

RatVec PModule::apply_nu(const OperadicLeftModule& mcat, const LinOperad& p, int alpha, const RatVec& xg,
                         const RatVec& xs) const {
    int G = mcat.fiber_obj_m[alpha], S = mcat.m.arrows[alpha].cod_o, L = mcat.m.arrows[alpha].dom_l;
    RatVec out(dim(L));
    for (int i = 0; i < dim(G); ++i) {
        if (xg[i] == 0) continue;
        for (int j = 0; j < p.dim(S); ++j) {
            if (xs[j] == 0) continue;
            const RatVec& c = nu[alpha][static_cast<size_t>(i) * p.dim(S) + j];
            Rat f = xg[i] * xs[j];
            for (int k = 0; k < dim(L); ++k)
                if (c[k] != 0) out[k] += f * c[k];
        }
    }
    return out;
}

ValidationReport validate_pmodule(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                                  const PModule& m) {
    ValidationReport rep;
    const CatLeftModule& cm = mcat.m;
    if (static_cast<int>(m.carrier.size()) != cm.n_lobj()) throw StructuralError("pmodule carrier size mismatch");
    if (static_cast<int>(m.nu.size()) != cm.n_arr()) throw StructuralError("pmodule nu size mismatch");
    for (int a = 0; a < cm.n_arr(); ++a) {
        int G = mcat.fiber_obj_m[a], S = cm.arrows[a].cod_o, L = cm.arrows[a].dom_l;
        if (m.nu[a].size() != static_cast<size_t>(m.dim(G)) * p.dim(S))
            throw StructuralError("nu table shape mismatch at " + cm.arrows[a].name);
        for (const auto& v : m.nu[a])
            if (static_cast<int>(v.size()) != m.dim(L))
                throw StructuralError("nu vector length mismatch at " + cm.arrows[a].name);
    }
    // action square: nu_alpha(1 ⊗ gamma_g) = nu_{g·alpha}(nu_{alpha_C} ⊗ 1)
    for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
        int B = cm.arrows[alpha].cod_o, G = mcat.fiber_obj_m[alpha];
        for (int g = 0; g < o.base.n_mor(); ++g) {
            if (o.base.mor[g].dom != B) continue;
            int C = o.base.mor[g].cod, F = o.fiber_obj[g];
            int galpha = cm.act(g, alpha);
            int alpha_C = mcat.fmm(alpha, g);
            for (int im = 0; im < m.dim(G); ++im)
                for (int ip = 0; ip < p.dim(F); ++ip)
                    for (int iq = 0; iq < p.dim(C); ++iq) {
                        RatVec em(m.dim(G)), ep(p.dim(F)), eq(p.dim(C));
                        em[im] = 1;
                        ep[ip] = 1;
                        eq[iq] = 1;
                        RatVec lhs = m.apply_nu(mcat, p, alpha, em, p.apply_gamma(o, g, ep, eq));
                        RatVec rhs = m.apply_nu(mcat, p, galpha, m.apply_nu(mcat, p, alpha_C, em, ep), eq);
                        if (lhs != rhs)
                            rep.add("action square: fails at (" + cm.arrows[alpha].name + "," +
                                    o.base.mor[g].name + ") basis (" + std::to_string(im) + "," +
                                    std::to_string(ip) + "," + std::to_string(iq) + ")");
                    }
        }
    }
    rep.sort();
    return rep;
}

bool check_unital_pmodule(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                          const PModule& m, const std::vector<RatVec>& eta_T,
                          std::vector<std::string>* witnesses) {
    bool ok = true;
    const CatLeftModule& cm = mcat.m;
    for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
        int T = cm.arrows[alpha].cod_o, G = mcat.fiber_obj_m[alpha];
        int alpha_T = mcat.fmm(alpha, o.base.id_of[T]);
        for (int im = 0; im < m.dim(G); ++im) {
            RatVec em(m.dim(G));
            em[im] = 1;
            if (m.apply_nu(mcat, p, alpha_T, em, eta_T[T]) != em) {
                ok = false;
                if (witnesses)
                    witnesses->push_back("module unit law fails at (" + cm.arrows[alpha].name + ", basis " +
                                         std::to_string(im) + ")");
            }
        }
    }
    return ok;
}

PModule operad_as_pmodule(const UnaryOpCat& o, const LinOperad& p) {
    (void)o;
    PModule m;
    m.carrier = p.carrier;
    m.nu = p.gamma;
    return m;
}

int FreeModule::find(int lobj, int alpha, int t, int g) const {
    const auto& tg = tags[lobj];
    for (int i = 0; i < static_cast<int>(tg.size()); ++i)
        if (tg[i].alpha == alpha && tg[i].t == t && tg[i].g == g) return i;
    return -1;
}

FreeModule free_nonunital(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                          const Collection& e) {
    if (!check_wbu_cat(o).ok) throw StructuralError("free module: the base category fails WBU");
    if (!check_wbu_mod(o, mcat).ok) throw StructuralError("free module: the module fails WBU");
    const CatLeftModule& cm = mcat.m;
    FreeModule out;
    out.tags.resize(cm.n_lobj());
    out.mod.carrier.resize(cm.n_lobj());
    for (int l = 0; l < cm.n_lobj(); ++l) {
        Basis b;
        for (int g = 0; g < e.dim(l); ++g) {
            out.tags[l].push_back({-1, -1, g});
            b.labels.push_back("e:" + e.at[l].labels[g]);
            b.degree.push_back(e.at[l].deg(g));
        }
        for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
            if (cm.arrows[alpha].dom_l != l) continue;
            int T = cm.arrows[alpha].cod_o, G = mcat.fiber_obj_m[alpha];
            for (int t = 0; t < p.dim(T); ++t)
                for (int g = 0; g < e.dim(G); ++g) {
                    out.tags[l].push_back({alpha, t, g});
                    b.labels.push_back(cm.arrows[alpha].name + "|" + p.carrier[T].labels[t] + "⊗" +
                                       e.at[G].labels[g]);
                    b.degree.push_back(p.carrier[T].deg(t) + e.at[G].deg(g));
                }
        }
        out.mod.carrier[l] = b;
    }
    out.mod.init_tables(o, mcat, p);
    for (int lam = 0; lam < cm.n_arr(); ++lam) {
        int T = cm.arrows[lam].cod_o, G = mcat.fiber_obj_m[lam], L = cm.arrows[lam].dom_l;
        for (int ig = 0; ig < out.mod.dim(G); ++ig) {
            const FreeBasisTag& tag = out.tags[G][ig];
            for (int it = 0; it < p.dim(T); ++it) {
                RatVec cell(out.mod.dim(L));
                int tdeg = p.carrier[T].deg(it);
                if (tag.alpha < 0) {
                    // tautological action: e -> (-1)^{|e||t|} t ⊗_lam e
                    int idx = out.find(L, lam, it, tag.g);
                    cell[idx] = (e.at[G].deg(tag.g) * tdeg) % 2 ? -1 : 1;
                } else {
                    // s ⊗_beta h: blow up (lam, beta) and multiply into s
                    int beta = tag.alpha;
                    int S = cm.arrows[beta].cod_o, H = mcat.fiber_obj_m[beta];
                    auto comp = wbu_complete_mod(o, mcat, lam, beta);
                    if (!comp) throw StructuralError("free module: WBU completion missing");
                    auto [omega, gmor] = *comp;
                    RatVec es(p.dim(S)), et(p.dim(T));
                    es[tag.t] = 1;
                    et[it] = 1;
                    RatVec prod = p.apply_gamma(o, gmor, es, et);
                    int sign = (e.at[H].deg(tag.g) * tdeg) % 2 ? -1 : 1;
                    for (int k = 0; k < static_cast<int>(prod.size()); ++k) {
                        if (prod[k] == 0) continue;
                        int idx = out.find(L, omega, k, tag.g);
                        cell[idx] += Rat(sign) * prod[k];
                    }
                }
                out.mod.nu[lam][static_cast<size_t>(ig) * p.dim(T) + it] = cell;
            }
        }
    }
    return out;
}

FreeUnitalModule free_unital(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                             const std::vector<RatVec>& eta_T, const Collection& e) {
    FreeUnitalModule out;
    out.free_part = free_nonunital(o, mcat, p, e);
    const FreeModule& fr = out.free_part;
    const CatLeftModule& cm = mcat.m;
    std::vector<RowSpan> rel;
    for (int l = 0; l < cm.n_lobj(); ++l) rel.emplace_back(fr.mod.dim(l));
    // generators: e ⊕ 0 ~ eta_T ⊗_{alpha_T} e at the object G = fiber of alpha
    for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
        int T = cm.arrows[alpha].cod_o, G = mcat.fiber_obj_m[alpha];
        int alpha_T = mcat.fmm(alpha, o.base.id_of[T]);
        int UT = o.U(T);
        for (int g = 0; g < e.dim(G); ++g) {
            RatVec r(fr.mod.dim(G));
            r[fr.find(G, -1, -1, g)] = 1;
            for (int k = 0; k < p.dim(UT); ++k) {
                if (eta_T[T][k] == 0) continue;
                r[fr.find(G, alpha_T, k, g)] -= eta_T[T][k];
            }
            rel[G].add(std::move(r));
        }
    }
    // saturate the relation span under the action
    out.relation_was_action_stable = true;
    bool grew = true;
    bool first_pass = true;
    while (grew) {
        grew = false;
        for (int lam = 0; lam < cm.n_arr(); ++lam) {
            int T = cm.arrows[lam].cod_o, G = mcat.fiber_obj_m[lam], L = cm.arrows[lam].dom_l;
            std::vector<RatVec> rows = rel[G].rows;  // snapshot
            for (const auto& r : rows)
                for (int it = 0; it < p.dim(T); ++it) {
                    RatVec et(p.dim(T));
                    et[it] = 1;
                    RatVec img = fr.mod.apply_nu(mcat, p, lam, r, et);
                    if (rel[L].add(std::move(img))) {
                        grew = true;
                        if (first_pass) out.relation_was_action_stable = false;
                    }
                }
        }
        first_pass = false;
    }
    // quotient carriers and induced action
    out.quot.resize(cm.n_lobj());
    out.mod.carrier.resize(cm.n_lobj());
    for (int l = 0; l < cm.n_lobj(); ++l) {
        out.relation_rank.push_back(rel[l].dim());
        out.quot[l] = make_quotient(rel[l]);
        Basis b;
        for (int k : out.quot[l].keep) {
            b.labels.push_back(fr.mod.carrier[l].labels[k]);
            b.degree.push_back(fr.mod.carrier[l].deg(k));
        }
        out.mod.carrier[l] = b;
    }
    out.mod.init_tables(o, mcat, p);
    for (int lam = 0; lam < cm.n_arr(); ++lam) {
        int T = cm.arrows[lam].cod_o, G = mcat.fiber_obj_m[lam], L = cm.arrows[lam].dom_l;
        for (int ig = 0; ig < out.mod.dim(G); ++ig)
            for (int it = 0; it < p.dim(T); ++it) {
                RatVec lift(fr.mod.dim(G));
                lift[out.quot[G].keep[ig]] = 1;
                RatVec et(p.dim(T));
                et[it] = 1;
                RatVec img = fr.mod.apply_nu(mcat, p, lam, lift, et);
                out.mod.nu[lam][static_cast<size_t>(ig) * p.dim(T) + it] = out.quot[L].proj.apply(img);
            }
    }
    return out;
}

bool free_structure_check(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                          const std::vector<RatVec>& eta_T, const Collection& e, int m_rigid,
                          std::string* why) {
    if (!rigid(o, mcat, m_rigid)) {
        if (why) *why = "object is not rigid";
        return false;
    }
    auto fu = free_unital(o, mcat, p, eta_T, e);
    const CatLeftModule& cm = mcat.m;
    // the right hand side: sum over arrows alpha : M -> T of P(T) ⊗ E(G)
    int rhs_dim = 0;
    std::vector<int> cols;  // free-carrier indices of the summand vectors
    for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
        if (cm.arrows[alpha].dom_l != m_rigid) continue;
        int T = cm.arrows[alpha].cod_o, G = mcat.fiber_obj_m[alpha];
        rhs_dim += p.dim(T) * e.dim(G);
        for (int t = 0; t < p.dim(T); ++t)
            for (int g = 0; g < e.dim(G); ++g) cols.push_back(fu.free_part.find(m_rigid, alpha, t, g));
    }
    if (fu.mod.dim(m_rigid) != rhs_dim) {
        if (why)
            *why = "dimension mismatch: F(E)(M) = " + std::to_string(fu.mod.dim(m_rigid)) +
                   " vs sum = " + std::to_string(rhs_dim);
        return false;
    }
    // basis-level isomorphism: project the summand vectors to the quotient
    Matrix mm(fu.mod.dim(m_rigid), rhs_dim);
    for (int j = 0; j < rhs_dim; ++j) {
        RatVec v(fu.free_part.mod.dim(m_rigid));
        v[cols[j]] = 1;
        RatVec img = fu.quot[m_rigid].proj.apply(v);
        for (int i = 0; i < mm.rows; ++i) mm.at(i, j) = img[i];
    }
    if (rank(mm) != rhs_dim) {
        if (why) *why = "summand map is not an isomorphism";
        return false;
    }
    return true;
}

PModule restrict_pmodule(const UnaryOpCat& o1, const OperadicLeftModule& m1, const UnaryOpCat& o2,
                         const OperadicLeftModule& m2, const OpModMorphism& f, const PModule& m) {
    (void)o1;
    (void)o2;
    (void)m2;
    PModule out;
    out.carrier.resize(m1.m.n_lobj());
    for (int l = 0; l < m1.m.n_lobj(); ++l) out.carrier[l] = m.carrier[f.psi_obj[l]];
    out.nu.resize(m1.m.n_arr());
    for (int a = 0; a < m1.m.n_arr(); ++a) out.nu[a] = m.nu[f.psi_arrow[a]];
    return out;
}

std::vector<Matrix> universal_extension(const UnaryOpCat& o, const OperadicLeftModule& mcat,
                                        const LinOperad& p, const Collection& e, const FreeModule& fr,
                                        const PModule& target, const std::vector<Matrix>& omega) {
    (void)o;
    const CatLeftModule& cm = mcat.m;
    std::vector<Matrix> out(cm.n_lobj());
    for (int l = 0; l < cm.n_lobj(); ++l) {
        out[l] = Matrix(target.dim(l), fr.mod.dim(l));
        for (int j = 0; j < fr.mod.dim(l); ++j) {
            const FreeBasisTag& tag = fr.tags[l][j];
            RatVec col;
            if (tag.alpha < 0) {
                col.assign(target.dim(l), Rat(0));
                for (int i = 0; i < target.dim(l); ++i) col[i] = omega[l].at(i, tag.g);
            } else {
                int alpha = tag.alpha;
                int T = cm.arrows[alpha].cod_o, G = mcat.fiber_obj_m[alpha];
                RatVec og(target.dim(G));
                for (int i = 0; i < target.dim(G); ++i) og[i] = omega[G].at(i, tag.g);
                RatVec et(p.dim(T));
                et[tag.t] = 1;
                col = target.apply_nu(mcat, p, alpha, og, et);
                int sign = (e.at[G].deg(tag.g) * p.carrier[T].deg(tag.t)) % 2 ? -1 : 1;
                if (sign < 0)
                    for (auto& x : col) x = -x;
            }
            for (int i = 0; i < target.dim(l); ++i) out[l].at(i, j) = col[i];
        }
    }
    return out;
}

bool is_pmodule_morphism(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                         const PModule& a, const PModule& b, const std::vector<Matrix>& om,
                         std::string* why) {
    (void)o;
    const CatLeftModule& cm = mcat.m;
    for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
        int G = mcat.fiber_obj_m[alpha], S = cm.arrows[alpha].cod_o, L = cm.arrows[alpha].dom_l;
        for (int ig = 0; ig < a.dim(G); ++ig)
            for (int is = 0; is < p.dim(S); ++is) {
                RatVec eg(a.dim(G)), es(p.dim(S));
                eg[ig] = 1;
                es[is] = 1;
                RatVec lhs = om[L].apply(a.apply_nu(mcat, p, alpha, eg, es));
                RatVec rhs = b.apply_nu(mcat, p, alpha, om[G].apply(eg), es);
                if (lhs != rhs) {
                    if (why)
                        *why = "morphism square fails at (" + cm.arrows[alpha].name + ", basis " +
                               std::to_string(ig) + "," + std::to_string(is) + ")";
                    return false;
                }
            }
    }
    return true;
}

}  // namespace opcat
