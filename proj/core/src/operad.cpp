#include "opcat/operad.hpp"

#include <algorithm>

#include "opcat/common.hpp"

namespace opcat {

namespace {

std::string mn(const UnaryOpCat& o, int m) {
    return o.base.mor[m].name;
}

// the induced map f_T : F(f) -> U_T of the triangle (f, 1_T), f : S -> T
int f_T(const UnaryOpCat& o, int f) {
    return o.fm(f, o.base.id_of[o.base.mor[f].cod]);
}

}  // namespace

void SetOperad::init_tables(const UnaryOpCat& o) {
    gamma.assign(o.base.n_mor(), {});
    for (int h = 0; h < o.base.n_mor(); ++h) {
        int F = o.fiber_obj[h], B = o.base.mor[h].cod;
        gamma[h].assign(static_cast<size_t>(dim(F)) * dim(B), -1);
    }
}

ValidationReport validate_set_operad(const UnaryOpCat& o, const SetOperad& s) {
    ValidationReport rep;
    const FinCategory& c = o.base;
    if (static_cast<int>(s.carrier.size()) != c.n_obj()) throw StructuralError("operad carrier size mismatch");
    if (static_cast<int>(s.gamma.size()) != c.n_mor()) throw StructuralError("operad gamma size mismatch");
    for (int h = 0; h < c.n_mor(); ++h) {
        int F = o.fiber_obj[h], B = c.mor[h].cod, A = c.mor[h].dom;
        if (s.gamma[h].size() != static_cast<size_t>(s.dim(F)) * s.dim(B))
            throw StructuralError("gamma table shape mismatch at (" + mn(o, h) + ", F=" + c.obj_names[F] +
                                  ", B=" + c.obj_names[B] + ", A=" + c.obj_names[A] + ")");
        for (int v : s.gamma[h]) {
            if (v < -1 || v >= s.dim(A)) throw StructuralError("gamma value out of range at " + mn(o, h));
            if (v == -1 && !s.partial)
                throw StructuralError("undefined gamma entry in a total operad at " + mn(o, h));
        }
    }
    std::vector<ValidationReport> slots(c.n_mor());
    parallel_for(c.n_mor(), [&](int g) {
        ValidationReport& r = slots[g];
        int C = c.mor[g].cod, Y = o.fiber_obj[g];
        for (int f = 0; f < c.n_mor(); ++f) {
            if (!c.composable(g, f)) continue;
            int gf = c.compose(g, f);
            int fC = o.fm(f, g);
            int F = o.fiber_obj[f];
            for (int x = 0; x < s.dim(F); ++x)
                for (int y = 0; y < s.dim(Y); ++y)
                    for (int z = 0; z < s.dim(C); ++z) {
                        int yz = s.g(o, g, y, z);
                        int lhs = yz < 0 ? -1 : s.g(o, f, x, yz);
                        int xy = s.g(o, fC, x, y);
                        int rhs = xy < 0 ? -1 : s.g(o, gf, xy, z);
                        bool lhs_def = yz >= 0 && lhs >= 0;
                        bool rhs_def = xy >= 0 && rhs >= 0;
                        if (lhs_def != rhs_def)
                            r.add("domain coherence: mismatch at (" + mn(o, f) + "," + mn(o, g) + ") elems (" +
                                  std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")");
                        else if (lhs_def && lhs != rhs)
                            r.add("associativity: fails at (" + mn(o, f) + "," + mn(o, g) + ") elems (" +
                                  std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")");
                    }
        }
    });
    for (auto& r : slots) rep.merge(r);
    rep.sort();
    return rep;
}

LRFlags check_unital_cat_set(const UnaryOpCat& o_in, const SetOperad& s, const std::vector<int>& e_c) {
    UnaryOpCat o = o_in;
    o.finalize();
    auto base_rep = unitality_report(o);
    if (!base_rep.unital()) throw StructuralError("check_unital_cat: base category is not unital");
    if (static_cast<int>(e_c.size()) != o.n_comp) throw StructuralError("unit family not indexed by pi0");
    const auto& term = *o.terminals;
    for (int k = 0; k < o.n_comp; ++k)
        if (e_c[k] < 0 || e_c[k] >= s.dim(term[k]))
            throw StructuralError("unit element out of range at component " + std::to_string(k));
    LRFlags out;
    out.left = out.right = true;
    const FinCategory& c = o.base;
    for (int T = 0; T < c.n_obj(); ++T) {
        int e = e_c[o.comp_of[o.U(T)]];
        for (int t = 0; t < s.dim(T); ++t)
            if (s.g(o, c.id_of[T], e, t) != t) {
                out.left = false;
                out.witnesses.push_back("left: at object " + c.obj_names[T] + " element " + std::to_string(t));
            }
    }
    for (int F = 0; F < c.n_obj(); ++F) {
        int U = term[o.comp_of[F]];
        int bang = c.unique_hom(F, U);
        int e = e_c[o.comp_of[F]];
        for (int ph = 0; ph < s.dim(F); ++ph)
            if (s.g(o, bang, ph, e) != ph) {
                out.right = false;
                out.witnesses.push_back("right: at object " + c.obj_names[F] + " element " + std::to_string(ph));
            }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

LRFlags check_unital_fiberwise_set(const UnaryOpCat& o, const SetOperad& s, const std::vector<int>& e_T) {
    const FinCategory& c = o.base;
    if (static_cast<int>(e_T.size()) != c.n_obj()) throw StructuralError("fiberwise unit family size mismatch");
    for (int T = 0; T < c.n_obj(); ++T)
        if (e_T[T] < 0 || e_T[T] >= s.dim(o.U(T)))
            throw StructuralError("fiberwise unit out of range at " + c.obj_names[T]);
    LRFlags out;
    out.left = out.right = true;
    for (int T = 0; T < c.n_obj(); ++T)
        for (int t = 0; t < s.dim(T); ++t)
            if (s.g(o, c.id_of[T], e_T[T], t) != t) {
                out.left = false;
                out.witnesses.push_back("left: at object " + c.obj_names[T] + " element " + std::to_string(t));
            }
    for (int f = 0; f < c.n_mor(); ++f) {
        int T = c.mor[f].cod, F = o.fiber_obj[f];
        int ft = f_T(o, f);
        for (int ph = 0; ph < s.dim(F); ++ph)
            if (s.g(o, ft, ph, e_T[T]) != ph) {
                out.right = false;
                out.witnesses.push_back("right: at morphism " + mn(o, f) + " element " + std::to_string(ph));
            }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

LRFlags check_pseudo_unital(const UnaryOpCat& o, const SetOperad& s,
                            const std::vector<std::vector<int>>& e) {
    const FinCategory& c = o.base;
    if (static_cast<int>(e.size()) != c.n_obj()) throw StructuralError("pseudo-unit family size mismatch");
    for (int T = 0; T < c.n_obj(); ++T) {
        if (static_cast<int>(e[T].size()) != s.dim(T))
            throw StructuralError("pseudo-unit family at " + c.obj_names[T] + " not indexed by S(T)");
        for (int t = 0; t < s.dim(T); ++t)
            if (e[T][t] < 0 || e[T][t] >= s.dim(o.U(T)))
                throw StructuralError("pseudo-unit e_t not in S(U_T) at " + c.obj_names[T]);
    }
    LRFlags out;
    out.left = out.right = true;
    // left (a): gamma_1(e_t, t) defined and equal to t
    for (int T = 0; T < c.n_obj(); ++T)
        for (int t = 0; t < s.dim(T); ++t)
            if (s.g(o, c.id_of[T], e[T][t], t) != t) {
                out.left = false;
                out.witnesses.push_back("left(a): at " + c.obj_names[T] + " element " + std::to_string(t));
            }
    // left (b): whenever gamma_xi(rho, cc) = t is defined,
    // gamma over the identity of the fiber sends (e_t, rho) back to rho
    for (int xi = 0; xi < c.n_mor(); ++xi) {
        int T = c.mor[xi].dom, C = c.mor[xi].cod, R = o.fiber_obj[xi];
        for (int rho = 0; rho < s.dim(R); ++rho)
            for (int cc = 0; cc < s.dim(C); ++cc) {
                int t = s.g(o, xi, rho, cc);
                if (t < 0) continue;
                if (s.g(o, c.id_of[R], e[T][t], rho) != rho) {
                    out.left = false;
                    out.witnesses.push_back("left(b): at morphism " + mn(o, xi) + " elems (" +
                                            std::to_string(rho) + "," + std::to_string(cc) + ")");
                }
            }
    }
    // right: on pairs in the domain of gamma_f (all pairs when total),
    // gamma_{f_T}(phi, e_t) is defined and equals phi
    for (int f = 0; f < c.n_mor(); ++f) {
        int T = c.mor[f].cod, F = o.fiber_obj[f];
        int ft = f_T(o, f);
        for (int ph = 0; ph < s.dim(F); ++ph)
            for (int t = 0; t < s.dim(T); ++t) {
                bool in_domain = !s.partial || s.g(o, f, ph, t) >= 0;
                int v = s.g(o, ft, ph, e[T][t]);
                if (in_domain && v != ph) {
                    out.right = false;
                    out.witnesses.push_back("right: at morphism " + mn(o, f) + " elems (" + std::to_string(ph) +
                                            "," + std::to_string(t) + ")");
                } else if (!in_domain && v >= 0 && v != ph) {
                    out.right = false;
                    out.witnesses.push_back("right (where defined): at morphism " + mn(o, f) + " elems (" +
                                            std::to_string(ph) + "," + std::to_string(t) + ")");
                }
            }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

std::vector<std::string> fiberwise_unit_uniqueness_set(const UnaryOpCat& o, const SetOperad& s,
                                                       const std::vector<int>& e_T) {
    (void)s;
    std::vector<std::string> out;
    for (int T = 0; T < o.base.n_obj(); ++T)
        for (int S = T + 1; S < o.base.n_obj(); ++S)
            if (o.U(T) == o.U(S) && e_T[T] != e_T[S])
                out.push_back("eta depends on the object, not only on U: " + o.base.obj_names[T] + " vs " +
                              o.base.obj_names[S]);
    return out;
}

SetOperad restrict_set(const UnaryOpCat& src, const UnaryOpCat& dst, const OperadicFunctor& phi,
                       const SetOperad& p) {
    (void)dst;
    SetOperad out;
    out.partial = p.partial;
    out.carrier.resize(src.base.n_obj());
    for (int x = 0; x < src.base.n_obj(); ++x) out.carrier[x] = p.carrier[phi.f.obj_map[x]];
    out.gamma.resize(src.base.n_mor());
    for (int h = 0; h < src.base.n_mor(); ++h) out.gamma[h] = p.gamma[phi.f.mor_map[h]];
    return out;
}

SetOperad terminal_set_operad(const UnaryOpCat& o) {
    SetOperad s;
    s.carrier.assign(o.base.n_obj(), {"*"});
    s.init_tables(o);
    for (int h = 0; h < o.base.n_mor(); ++h) s.gamma[h] = {0};
    return s;
}

SetOperad empty_set_operad(const UnaryOpCat& o) {
    SetOperad s;
    s.carrier.assign(o.base.n_obj(), {});
    s.init_tables(o);
    return s;
}

SetOperad monoid_as_odot_operad(const UnaryOpCat& odot, const MonoidLike& a) {
    if (odot.base.n_obj() != 1 || odot.base.n_mor() != 1)
        throw StructuralError("monoid_as_odot_operad expects the terminal operadic category");
    SetOperad s;
    s.carrier = {a.names};
    s.gamma.resize(1);
    s.gamma[0].resize(static_cast<size_t>(a.n()) * a.n());
    for (int x = 0; x < a.n(); ++x)
        for (int y = 0; y < a.n(); ++y) s.gamma[0][static_cast<size_t>(x) * a.n() + y] = a.m(x, y);
    return s;
}

// --- linear enrichment -----------------------------------------------------

void LinOperad::init_tables(const UnaryOpCat& o) {
    gamma.assign(o.base.n_mor(), {});
    for (int h = 0; h < o.base.n_mor(); ++h) {
        int F = o.fiber_obj[h], B = o.base.mor[h].cod, A = o.base.mor[h].dom;
        gamma[h].assign(static_cast<size_t>(dim(F)) * dim(B), RatVec(dim(A)));
    }
}

RatVec LinOperad::apply_gamma(const UnaryOpCat& o, int h, const RatVec& xF, const RatVec& xB) const {
    int F = o.fiber_obj[h], B = o.base.mor[h].cod, A = o.base.mor[h].dom;
    RatVec out(dim(A));
    for (int i = 0; i < dim(F); ++i) {
        if (xF[i] == 0) continue;
        for (int j = 0; j < dim(B); ++j) {
            if (xB[j] == 0) continue;
            const RatVec& cell = gamma[h][static_cast<size_t>(i) * dim(B) + j];
            Rat c = xF[i] * xB[j];
            for (int k = 0; k < dim(A); ++k)
                if (cell[k] != 0) out[k] += c * cell[k];
        }
    }
    return out;
}

ValidationReport validate_lin_operad(const UnaryOpCat& o, const LinOperad& p) {
    ValidationReport rep;
    const FinCategory& c = o.base;
    if (static_cast<int>(p.carrier.size()) != c.n_obj()) throw StructuralError("operad carrier size mismatch");
    if (static_cast<int>(p.gamma.size()) != c.n_mor()) throw StructuralError("operad gamma size mismatch");
    for (int h = 0; h < c.n_mor(); ++h) {
        int F = o.fiber_obj[h], B = c.mor[h].cod, A = c.mor[h].dom;
        if (p.gamma[h].size() != static_cast<size_t>(p.dim(F)) * p.dim(B))
            throw StructuralError("gamma table shape mismatch at (" + mn(o, h) + ", F=" + c.obj_names[F] +
                                  ", B=" + c.obj_names[B] + ", A=" + c.obj_names[A] + ")");
        for (const auto& v : p.gamma[h])
            if (static_cast<int>(v.size()) != p.dim(A))
                throw StructuralError("gamma vector length mismatch at " + mn(o, h));
    }
    std::vector<ValidationReport> slots(c.n_mor());
    parallel_for(c.n_mor(), [&](int g) {
        ValidationReport& r = slots[g];
        int C = c.mor[g].cod, Y = o.fiber_obj[g];
        for (int f = 0; f < c.n_mor(); ++f) {
            if (!c.composable(g, f)) continue;
            int gf = c.compose(g, f);
            int fC = o.fm(f, g);
            int F = o.fiber_obj[f];
            for (int i = 0; i < p.dim(F); ++i)
                for (int j = 0; j < p.dim(Y); ++j)
                    for (int k = 0; k < p.dim(C); ++k) {
                        RatVec ei(p.dim(F)), ej(p.dim(Y)), ek(p.dim(C));
                        ei[i] = 1;
                        ej[j] = 1;
                        ek[k] = 1;
                        RatVec lhs = p.apply_gamma(o, f, ei, p.apply_gamma(o, g, ej, ek));
                        RatVec rhs = p.apply_gamma(o, gf, p.apply_gamma(o, fC, ei, ej), ek);
                        if (lhs != rhs)
                            r.add("associativity: fails at (" + mn(o, f) + "," + mn(o, g) + ") basis (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
                    }
        }
    });
    for (auto& r : slots) rep.merge(r);
    rep.sort();
    return rep;
}

LRFlags check_unital_cat_lin(const UnaryOpCat& o_in, const LinOperad& p, const std::vector<RatVec>& eta_c) {
    UnaryOpCat o = o_in;
    o.finalize();
    auto base_rep = unitality_report(o);
    if (!base_rep.unital()) throw StructuralError("check_unital_cat: base category is not unital");
    if (static_cast<int>(eta_c.size()) != o.n_comp) throw StructuralError("unit family not indexed by pi0");
    LRFlags out;
    out.left = out.right = true;
    const FinCategory& c = o.base;
    const auto& term = *o.terminals;
    for (int T = 0; T < c.n_obj(); ++T) {
        const RatVec& e = eta_c[o.comp_of[o.U(T)]];
        for (int t = 0; t < p.dim(T); ++t) {
            RatVec et(p.dim(T));
            et[t] = 1;
            if (p.apply_gamma(o, c.id_of[T], e, et) != et) {
                out.left = false;
                out.witnesses.push_back("left: at object " + c.obj_names[T] + " basis " + std::to_string(t));
            }
        }
    }
    for (int F = 0; F < c.n_obj(); ++F) {
        int U = term[o.comp_of[F]];
        int bang = c.unique_hom(F, U);
        const RatVec& e = eta_c[o.comp_of[F]];
        for (int ph = 0; ph < p.dim(F); ++ph) {
            RatVec eph(p.dim(F));
            eph[ph] = 1;
            if (p.apply_gamma(o, bang, eph, e) != eph) {
                out.right = false;
                out.witnesses.push_back("right: at object " + c.obj_names[F] + " basis " + std::to_string(ph));
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

LRFlags check_unital_fiberwise_lin(const UnaryOpCat& o, const LinOperad& p, const std::vector<RatVec>& eta_T) {
    const FinCategory& c = o.base;
    if (static_cast<int>(eta_T.size()) != c.n_obj()) throw StructuralError("fiberwise unit family size mismatch");
    LRFlags out;
    out.left = out.right = true;
    for (int T = 0; T < c.n_obj(); ++T) {
        if (static_cast<int>(eta_T[T].size()) != p.dim(o.U(T)))
            throw StructuralError("fiberwise unit dimension mismatch at " + c.obj_names[T]);
        for (int t = 0; t < p.dim(T); ++t) {
            RatVec et(p.dim(T));
            et[t] = 1;
            if (p.apply_gamma(o, c.id_of[T], eta_T[T], et) != et) {
                out.left = false;
                out.witnesses.push_back("left: at object " + c.obj_names[T] + " basis " + std::to_string(t));
            }
        }
    }
    for (int f = 0; f < c.n_mor(); ++f) {
        int T = c.mor[f].cod, F = o.fiber_obj[f];
        int ft = f_T(o, f);
        for (int ph = 0; ph < p.dim(F); ++ph) {
            RatVec eph(p.dim(F));
            eph[ph] = 1;
            if (p.apply_gamma(o, ft, eph, eta_T[T]) != eph) {
                out.right = false;
                out.witnesses.push_back("right: at morphism " + mn(o, f) + " basis " + std::to_string(ph));
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

std::vector<std::string> fiberwise_unit_uniqueness_lin(const UnaryOpCat& o, const LinOperad& p,
                                                       const std::vector<RatVec>& eta_T) {
    (void)p;
    std::vector<std::string> out;
    for (int T = 0; T < o.base.n_obj(); ++T)
        for (int S = T + 1; S < o.base.n_obj(); ++S)
            if (o.U(T) == o.U(S) && eta_T[T] != eta_T[S])
                out.push_back("eta depends on the object, not only on U: " + o.base.obj_names[T] + " vs " +
                              o.base.obj_names[S]);
    return out;
}

LinOperad restrict_lin(const UnaryOpCat& src, const UnaryOpCat& dst, const OperadicFunctor& phi,
                       const LinOperad& p) {
    (void)dst;
    LinOperad out;
    out.carrier.resize(src.base.n_obj());
    for (int x = 0; x < src.base.n_obj(); ++x) out.carrier[x] = p.carrier[phi.f.obj_map[x]];
    out.gamma.resize(src.base.n_mor());
    for (int h = 0; h < src.base.n_mor(); ++h) out.gamma[h] = p.gamma[phi.f.mor_map[h]];
    return out;
}

LinOperad graded_algebra_as_decollage_operad(const FinCategory& a, const DecollageTags& tags,
                                             const std::vector<Basis>& comp_basis,
                                             const std::vector<std::vector<RatVec>>& products) {
    LinOperad p;
    const int M = a.n_mor();
    p.carrier.resize(M);
    for (int f = 0; f < M; ++f) p.carrier[f] = comp_basis[f];
    int n_dmor = static_cast<int>(tags.mor_pair.size());
    p.gamma.assign(n_dmor, {});
    for (int h = 0; h < n_dmor; ++h) {
        auto [top, leg] = tags.mor_pair[h];
        // gamma_h : A(top) ⊗ A(leg) -> A(leg∘top)
        p.gamma[h] = products[static_cast<size_t>(top) * M + leg];
    }
    return p;
}

}  // namespace opcat
