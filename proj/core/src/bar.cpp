#include "opcat/bar.hpp"

#include <algorithm>

#include "opcat/common.hpp"

namespace opcat {

std::vector<Tower> enumerate_towers(const UnaryOpCat& o, const OperadicLeftModule& mcat, int m_lobj, int n) {
    std::vector<Tower> out;
    const FinCategory& c = o.base;
    const CatLeftModule& cm = mcat.m;
    for (int alpha = 0; alpha < cm.n_arr(); ++alpha) {
        if (cm.arrows[alpha].dom_l != m_lobj) continue;
        Tower seed;
        seed.alpha = alpha;
        seed.T.assign(1, cm.arrows[alpha].cod_o);  // T_n
        // grow chains downward: f_n, f_{n-1}, ..., f_1
        std::vector<Tower> frontier{seed};
        for (int k = 0; k < n; ++k) {
            std::vector<Tower> next;
            for (const Tower& t : frontier)
                for (int f = 0; f < c.n_mor(); ++f) {
                    if (c.mor[f].dom != t.T.front()) continue;
                    Tower t2 = t;
                    t2.T.insert(t2.T.begin(), c.mor[f].cod);
                    t2.f.insert(t2.f.begin(), f);
                    next.push_back(std::move(t2));
                }
            frontier = std::move(next);
        }
        for (Tower& t : frontier) {
            t.F.resize(n);
            for (int i = 0; i < n; ++i) t.F[i] = o.fiber_obj[t.f[i]];
            t.N = mcat.fiber_obj_m[t.alpha];
            out.push_back(std::move(t));
        }
    }
    return out;
}

namespace {

std::vector<int> factor_dims_of(const BarInput& in, const Tower& t) {
    std::vector<int> d;
    d.push_back(in.p.dim(t.T[0]));
    for (int F : t.F) d.push_back(in.p.dim(F));
    d.push_back(in.m.dim(t.N));
    return d;
}

int product(const std::vector<int>& v) {
    int p = 1;
    for (int x : v) p *= x;
    return p;
}

// decode flat index into the multi-index (row-major)
std::vector<int> decode(const std::vector<int>& dims, int idx) {
    std::vector<int> out(dims.size());
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        out[i] = idx % dims[i];
        idx /= dims[i];
    }
    return out;
}

int encode(const std::vector<int>& dims, const std::vector<int>& idx) {
    int v = 0;
    for (size_t i = 0; i < dims.size(); ++i) v = v * dims[i] + idx[i];
    return v;
}

std::string factor_label(const BarInput& in, const Tower& t, const std::vector<int>& idx) {
    std::string s = in.p.carrier[t.T[0]].labels[idx[0]];
    for (size_t i = 0; i < t.F.size(); ++i) s += "⊗" + in.p.carrier[t.F[i]].labels[idx[i + 1]];
    s += "⊗" + in.m.carrier[t.N].labels[idx.back()];
    return s;
}

}  // namespace

int BarComplex::find_component(int level, const Tower& t) const {
    const auto& cs = comps[level];
    for (int i = 0; i < static_cast<int>(cs.size()); ++i)
        if (cs[i].tower == t) return i;
    return -1;
}

BarComplex bar_complex(const BarInput& in, int m_lobj, int depth) {
    BarComplex out;
    out.m_lobj = m_lobj;
    out.comps.resize(depth + 1);
    out.cx.dims.assign(depth + 1, 0);
    out.cx.labels.resize(depth + 1);
    for (int n = 0; n <= depth; ++n) {
        int off = 0;
        for (Tower& t : enumerate_towers(in.o, in.mcat, m_lobj, n)) {
            BarComponent comp;
            comp.tower = t;
            comp.factor_dims = factor_dims_of(in, t);
            comp.size = product(comp.factor_dims);
            comp.offset = off;
            off += comp.size;
            out.comps[n].push_back(std::move(comp));
        }
        out.cx.dims[n] = off;
        out.cx.labels[n].resize(off);
        for (const auto& comp : out.comps[n])
            for (int k = 0; k < comp.size; ++k)
                out.cx.labels[n][comp.offset + k] = factor_label(in, comp.tower, decode(comp.factor_dims, k));
    }

    const FinCategory& c = in.o.base;
    const CatLeftModule& cm = in.mcat.m;
    out.cx.boundary.resize(depth + 1);
    out.cx.boundary[0] = Matrix(0, 0);
    out.faces.resize(depth + 1);
    for (int n = 1; n <= depth; ++n) {
        out.faces[n].assign(n + 1, Matrix(out.cx.dims[n - 1], out.cx.dims[n]));
        for (const auto& comp : out.comps[n]) {
            const Tower& t = comp.tower;
            for (int i = 0; i <= n; ++i) {
                Matrix& face = out.faces[n][i];
                // build the target tower and the bilinear contraction of the
                // factor pair (i, i+1) into slot i
                Tower tgt;
                int pos = i;
                int dim_new = 0;
                std::vector<RatVec> pair_map;  // (a * dimB + b) -> vector over the new factor
                if (i == 0) {
                    tgt.alpha = t.alpha;
                    tgt.T.assign(t.T.begin() + 1, t.T.end());
                    tgt.f.assign(t.f.begin() + 1, t.f.end());
                    int f1 = t.f[0];
                    int T1 = t.T[1];
                    dim_new = in.p.dim(T1);
                    // gamma_{f1}(p1, t0)
                    int dA = in.p.dim(t.T[0]), dB = in.p.dim(t.F[0]);
                    pair_map.assign(static_cast<size_t>(dA) * dB, RatVec(dim_new));
                    for (int a = 0; a < dA; ++a)
                        for (int b = 0; b < dB; ++b) {
                            RatVec ea(dA), eb(dB);
                            ea[a] = 1;
                            eb[b] = 1;
                            pair_map[static_cast<size_t>(a) * dB + b] = in.p.apply_gamma(in.o, f1, eb, ea);
                        }
                } else if (i < n) {
                    tgt.alpha = t.alpha;
                    tgt.T = t.T;
                    tgt.T.erase(tgt.T.begin() + i);
                    tgt.f = t.f;
                    int fi = t.f[i - 1], fi1 = t.f[i];
                    tgt.f[i - 1] = c.compose(fi, fi1);
                    tgt.f.erase(tgt.f.begin() + i);
                    int mmor = in.o.fm(fi1, fi);  // F(f_i f_{i+1}) -> F_i
                    int Fp = c.mor[mmor].dom;
                    dim_new = in.p.dim(Fp);
                    int dA = in.p.dim(t.F[i - 1]), dB = in.p.dim(t.F[i]);
                    pair_map.assign(static_cast<size_t>(dA) * dB, RatVec(dim_new));
                    for (int a = 0; a < dA; ++a)
                        for (int b = 0; b < dB; ++b) {
                            RatVec ea(dA), eb(dB);
                            ea[a] = 1;
                            eb[b] = 1;
                            // gamma_m(p_{i+1}, p_i)
                            pair_map[static_cast<size_t>(a) * dB + b] = in.p.apply_gamma(in.o, mmor, eb, ea);
                        }
                } else {
                    tgt.T.assign(t.T.begin(), t.T.end() - 1);
                    tgt.f.assign(t.f.begin(), t.f.end() - 1);
                    int fn = t.f[n - 1];
                    tgt.alpha = cm.act(fn, t.alpha);
                    int mprime = in.mcat.fmm(t.alpha, fn);  // N' -> F_n
                    int Np = cm.arrows[mprime].dom_l;
                    dim_new = in.m.dim(Np);
                    int dA = in.p.dim(t.F[n - 1]), dB = in.m.dim(t.N);
                    pair_map.assign(static_cast<size_t>(dA) * dB, RatVec(dim_new));
                    for (int a = 0; a < dA; ++a)
                        for (int b = 0; b < dB; ++b) {
                            RatVec ea(dA), eb(dB);
                            ea[a] = 1;
                            eb[b] = 1;
                            // nu_{m'}(m, p_n)
                            pair_map[static_cast<size_t>(a) * dB + b] =
                                in.m.apply_nu(in.mcat, in.p, mprime, eb, ea);
                        }
                }
                tgt.F.resize(tgt.f.size());
                for (size_t k = 0; k < tgt.f.size(); ++k) tgt.F[k] = in.o.fiber_obj[tgt.f[k]];
                tgt.N = in.mcat.fiber_obj_m[tgt.alpha];
                int ci = out.find_component(n - 1, tgt);
                if (ci < 0) throw StructuralError("bar: target tower not enumerated");
                const BarComponent& tc = out.comps[n - 1][ci];
                for (int k = 0; k < comp.size; ++k) {
                    auto idx = decode(comp.factor_dims, k);
                    int a = idx[pos], b = idx[pos + 1];
                    const RatVec& img = pair_map[static_cast<size_t>(a) * comp.factor_dims[pos + 1] + b];
                    std::vector<int> tix = idx;
                    tix.erase(tix.begin() + pos + 1);
                    for (int v = 0; v < dim_new; ++v) {
                        if (img[v] == 0) continue;
                        tix[pos] = v;
                        int row = tc.offset + encode(tc.factor_dims, tix);
                        face.at(row, comp.offset + k) += img[v];
                    }
                }
            }
        }
        Matrix d(out.cx.dims[n - 1], out.cx.dims[n]);
        for (int i = 0; i <= n; ++i) d = (i % 2 == 0) ? d + out.faces[n][i] : d - out.faces[n][i];
        out.cx.boundary[n] = d;
    }
    // augmentation eps(t0 ⊗ m) = nu_alpha(m, t0)
    out.cx.aug_dim = in.m.dim(m_lobj);
    Matrix eps(out.cx.aug_dim, out.cx.dims[0]);
    for (const auto& comp : out.comps[0]) {
        const Tower& t = comp.tower;
        for (int k = 0; k < comp.size; ++k) {
            auto idx = decode(comp.factor_dims, k);
            RatVec et(in.p.dim(t.T[0])), em(in.m.dim(t.N));
            et[idx[0]] = 1;
            em[idx[1]] = 1;
            RatVec img = in.m.apply_nu(in.mcat, in.p, t.alpha, em, et);
            for (int v = 0; v < out.cx.aug_dim; ++v) eps.at(v, comp.offset + k) = img[v];
        }
    }
    out.cx.eps = eps;
    auto rep = out.cx.validate();
    if (!rep.ok()) throw StructuralError("bar complex failed dd = 0 / eps d1 = 0:\n" + rep.str());
    return out;
}

std::vector<std::vector<Matrix>> bar_degeneracies(const BarInput& in, const BarComplex& bar,
                                                  const std::vector<RatVec>& eta_T) {
    const FinCategory& c = in.o.base;
    int depth = static_cast<int>(bar.comps.size()) - 1;
    std::vector<std::vector<Matrix>> s(depth);
    for (int n = 0; n + 1 <= depth; ++n) {
        s[n].assign(n + 1, Matrix(bar.cx.dims[n + 1], bar.cx.dims[n]));
        for (int j = 0; j <= n; ++j) {
            Matrix& sj = s[n][j];
            for (const auto& comp : bar.comps[n]) {
                const Tower& t = comp.tower;
                Tower tgt;
                tgt.alpha = t.alpha;
                tgt.T = t.T;
                tgt.T.insert(tgt.T.begin() + j, t.T[j]);
                tgt.f = t.f;
                tgt.f.insert(tgt.f.begin() + j, c.id_of[t.T[j]]);
                tgt.F.resize(tgt.f.size());
                for (size_t k = 0; k < tgt.f.size(); ++k) tgt.F[k] = in.o.fiber_obj[tgt.f[k]];
                tgt.N = in.mcat.fiber_obj_m[tgt.alpha];
                int ci = bar.find_component(n + 1, tgt);
                if (ci < 0) throw StructuralError("degeneracy: target tower missing");
                const BarComponent& tc = bar.comps[n + 1][ci];
                const RatVec& unit = eta_T[t.T[j]];
                for (int k = 0; k < comp.size; ++k) {
                    auto idx = decode(comp.factor_dims, k);
                    std::vector<int> tix = idx;
                    tix.insert(tix.begin() + j + 1, 0);
                    for (int u = 0; u < static_cast<int>(unit.size()); ++u) {
                        if (unit[u] == 0) continue;
                        tix[j + 1] = u;
                        sj.at(tc.offset + encode(tc.factor_dims, tix), comp.offset + k) += unit[u];
                    }
                }
            }
        }
    }
    return s;
}

ValidationReport check_simplicial_identities(const BarInput& in, const BarComplex& bar,
                                             const std::vector<std::vector<Matrix>>& s_ops) {
    (void)in;
    ValidationReport rep;
    int depth = static_cast<int>(bar.comps.size()) - 1;
    auto tag = [](const char* fam, int n, int i, int j) {
        return std::string(fam) + " fails at n=" + std::to_string(n) + " i=" + std::to_string(i) +
               " j=" + std::to_string(j);
    };
    // d_i d_j = d_{j-1} d_i for i < j
    for (int n = 2; n <= depth; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (!(bar.faces[n - 1][i] * bar.faces[n][j] == bar.faces[n - 1][j - 1] * bar.faces[n][i]))
                    rep.add(tag("d_i d_j = d_{j-1} d_i", n, i, j));
    // s_i s_j = s_{j+1} s_i for i <= j
    for (int n = 0; n + 2 <= depth; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!(s_ops[n + 1][i] * s_ops[n][j] == s_ops[n + 1][j + 1] * s_ops[n][i]))
                    rep.add(tag("s_i s_j = s_{j+1} s_i", n, i, j));
    // d_i s_j families on level n (s_j : n -> n+1, d_i : n+1 -> n)
    for (int n = 0; n + 1 <= depth; ++n)
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n + 1; ++i) {
                const Matrix di_sj = bar.faces[n + 1][i] * s_ops[n][j];
                if (i < j) {
                    if (n >= 1 && !(di_sj == s_ops[n - 1][j - 1] * bar.faces[n][i]))
                        rep.add(tag("d_i s_j = s_{j-1} d_i", n, i, j));
                } else if (i == j || i == j + 1) {
                    if (!(di_sj == Matrix::identity(bar.cx.dims[n]))) rep.add(tag("d_i s_j = id", n, i, j));
                } else {
                    if (n >= 1 && !(di_sj == s_ops[n - 1][j] * bar.faces[n][i - 1]))
                        rep.add(tag("d_i s_j = s_j d_{i-1}", n, i, j));
                }
            }
        }
    rep.sort();
    return rep;
}

NormalizedComplex normalized_bar(const BarInput& in, const BarComplex& bar,
                                 const std::vector<RatVec>& eta_T) {
    auto s_ops = bar_degeneracies(in, bar, eta_T);
    return normalize_simplicial(bar.cx, s_ops);
}

std::vector<Matrix> contracting_homotopy(const BarInput& in, const BarComplex& bar,
                                         const std::vector<RatVec>& eta_T, int upsilon) {
    auto pp = p1p2(in.o, in.mcat, upsilon);
    if (!pp.ok) throw StructuralError("contracting homotopy: object fails (P1)-(P2)");
    const FinCategory& c = in.o.base;
    const CatLeftModule& cm = in.mcat.m;
    int odot = pp.odot, bang = pp.bang;
    const RatVec& unit = eta_T[odot];
    int depth = static_cast<int>(bar.comps.size()) - 1;
    std::vector<Matrix> h(depth + 1);
    // h(-1) : M(upsilon) -> level 0 at the tower (odot; bang)
    {
        h[0] = Matrix(bar.cx.dims[0], bar.cx.aug_dim);
        Tower t;
        t.alpha = bang;
        t.T = {odot};
        t.N = in.mcat.fiber_obj_m[bang];
        int ci = bar.find_component(0, t);
        if (ci < 0) throw StructuralError("homotopy: seed tower missing");
        const BarComponent& tc = bar.comps[0][ci];
        for (int u = 0; u < bar.cx.aug_dim; ++u)
            for (int k = 0; k < static_cast<int>(unit.size()); ++k) {
                if (unit[k] == 0) continue;
                h[0].at(tc.offset + encode(tc.factor_dims, {k, u}), u) += unit[k];
            }
    }
    for (int n = 0; n + 1 <= depth; ++n) {
        h[n + 1] = Matrix(bar.cx.dims[n + 1], bar.cx.dims[n]);
        for (const auto& comp : bar.comps[n]) {
            const Tower& t = comp.tower;
            // composite arrow upsilon -> T_0, then the unique division to odot
            int arr = t.alpha;
            for (int i = n - 1; i >= 0; --i) arr = cm.act(t.f[i], arr);
            int q = -1, count = 0;
            for (int hm = 0; hm < c.n_mor(); ++hm) {
                if (c.mor[hm].dom != t.T[0] || c.mor[hm].cod != odot) continue;
                if (cm.act(hm, arr) == bang) {
                    q = hm;
                    ++count;
                }
            }
            if (count != 1) throw StructuralError("homotopy: division not unique");
            Tower tgt;
            tgt.alpha = t.alpha;
            tgt.T = t.T;
            tgt.T.insert(tgt.T.begin(), odot);
            tgt.f = t.f;
            tgt.f.insert(tgt.f.begin(), q);
            tgt.F.resize(tgt.f.size());
            for (size_t k = 0; k < tgt.f.size(); ++k) tgt.F[k] = in.o.fiber_obj[tgt.f[k]];
            tgt.N = in.mcat.fiber_obj_m[tgt.alpha];
            int ci = bar.find_component(n + 1, tgt);
            if (ci < 0) throw StructuralError("homotopy: extended tower missing");
            const BarComponent& tc = bar.comps[n + 1][ci];
            for (int k = 0; k < comp.size; ++k) {
                auto idx = decode(comp.factor_dims, k);
                std::vector<int> tix = idx;
                tix.insert(tix.begin(), 0);
                for (int u = 0; u < static_cast<int>(unit.size()); ++u) {
                    if (unit[u] == 0) continue;
                    tix[0] = u;
                    h[n + 1].at(tc.offset + encode(tc.factor_dims, tix), comp.offset + k) += unit[u];
                }
            }
        }
    }
    return h;
}

ChainMap induced_chain_map(const BarInput& dom_in, const BarComplex& dom_bar, const BarInput& cod_in,
                           const BarComplex& cod_bar, const OpModMorphism& mor) {
    int depth = static_cast<int>(dom_bar.comps.size()) - 1;
    ChainMap out;
    out.level.resize(depth + 1);
    for (int n = 0; n <= depth; ++n) {
        out.level[n] = Matrix(cod_bar.cx.dims[n], dom_bar.cx.dims[n]);
        for (const auto& comp : dom_bar.comps[n]) {
            const Tower& t = comp.tower;
            Tower tgt;
            tgt.alpha = mor.psi_arrow[t.alpha];
            tgt.T.resize(t.T.size());
            for (size_t i = 0; i < t.T.size(); ++i) tgt.T[i] = mor.phi.f.obj_map[t.T[i]];
            tgt.f.resize(t.f.size());
            for (size_t i = 0; i < t.f.size(); ++i) tgt.f[i] = mor.phi.f.mor_map[t.f[i]];
            tgt.F.resize(tgt.f.size());
            for (size_t k = 0; k < tgt.f.size(); ++k) tgt.F[k] = cod_in.o.fiber_obj[tgt.f[k]];
            tgt.N = cod_in.mcat.fiber_obj_m[tgt.alpha];
            int ci = cod_bar.find_component(n, tgt);
            if (ci < 0) throw StructuralError("induced map: image tower missing");
            const BarComponent& tc = cod_bar.comps[n][ci];
            if (tc.size != comp.size) throw StructuralError("induced map: restricted carriers disagree");
            for (int k = 0; k < comp.size; ++k) out.level[n].at(tc.offset + k, comp.offset + k) = 1;
        }
    }
    (void)dom_in;
    out.aug = Matrix::identity(dom_bar.cx.aug_dim);
    return out;
}

}  // namespace opcat
