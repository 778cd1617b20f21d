#include "opcat/chain.hpp"

#include <sstream>

#include "opcat/common.hpp"

namespace opcat {

Matrix ChainComplex::boundary_out(int n) const {
    if (n == 0) {
        if (augmented()) return *eps;
        return Matrix(0, dims[0]);
    }
    return boundary[n];
}

ValidationReport ChainComplex::validate() const {
    ValidationReport rep;
    if (static_cast<int>(boundary.size()) < depth() + 1)
        throw StructuralError("boundary table too short for the truncation depth");
    for (int n = 1; n <= depth(); ++n) {
        const Matrix& d = boundary[n];
        if (d.rows != dims[n - 1] || d.cols != dims[n])
            throw StructuralError("boundary " + std::to_string(n) + " shape mismatch");
    }
    if (augmented() && (eps->cols != dims[0] || eps->rows != aug_dim))
        throw StructuralError("augmentation shape mismatch");
    for (int n = 2; n <= depth(); ++n)
        if (!(boundary[n - 1] * boundary[n]).is_zero())
            rep.add("dd != 0 between levels " + std::to_string(n) + " and " + std::to_string(n - 2));
    if (augmented() && depth() >= 1 && !(*eps * boundary[1]).is_zero()) rep.add("eps d1 != 0");
    rep.sort();
    return rep;
}

int betti(const ChainComplex& c, int k) {
    if (k == -1) {
        if (!c.augmented()) throw StructuralError("betti(-1) on a non-augmented complex");
        return c.aug_dim - rank(*c.eps);
    }
    if (k < 0 || k + 1 > c.depth())
        throw StructuralError("betti: degree " + std::to_string(k) + " outside the truncation window");
    Matrix out = c.boundary_out(k);
    int ker = c.dims[k] - rank(out);
    int im = rank(c.boundary[k + 1]);
    return ker - im;
}

int betti_unaugmented(const ChainComplex& c, int k) {
    if (k < 0 || k + 1 > c.depth())
        throw StructuralError("betti: degree " + std::to_string(k) + " outside the truncation window");
    int ker = k == 0 ? c.dims[0] : c.dims[k] - rank(c.boundary[k]);
    int im = rank(c.boundary[k + 1]);
    return ker - im;
}

ValidationReport validate_chain_map(const ChainComplex& dom, const ChainComplex& cod, const ChainMap& f) {
    ValidationReport rep;
    int n_levels = static_cast<int>(f.level.size());
    if (n_levels > dom.depth() + 1 || n_levels > cod.depth() + 1)
        throw StructuralError("chain map has more levels than the complexes");
    for (int n = 0; n < n_levels; ++n)
        if (f.level[n].rows != cod.dims[n] || f.level[n].cols != dom.dims[n])
            throw StructuralError("chain map level " + std::to_string(n) + " shape mismatch");
    for (int n = 1; n < n_levels; ++n)
        if (!(cod.boundary[n] * f.level[n] == f.level[n - 1] * dom.boundary[n]))
            rep.add("chain map: square fails at level " + std::to_string(n));
    if (dom.augmented() && cod.augmented() && !f.level.empty()) {
        Matrix a = f.aug ? *f.aug : Matrix::identity(dom.aug_dim);
        if (!(a * *dom.eps == *cod.eps * f.level[0])) rep.add("chain map: augmentation square fails");
    }
    rep.sort();
    return rep;
}

ChainComplex mapping_cone(const ChainComplex& dom, const ChainComplex& cod, const ChainMap& f) {
    int depth = static_cast<int>(f.level.size()) - 1;
    ChainComplex cone;
    cone.dims.resize(depth + 1);
    cone.boundary.resize(depth + 1);
    for (int n = 0; n <= depth; ++n) cone.dims[n] = (n >= 1 ? dom.dims[n - 1] : 0) + cod.dims[n];
    cone.boundary[0] = Matrix(0, 0);
    for (int n = 1; n <= depth; ++n) {
        int dr = n >= 2 ? dom.dims[n - 2] : 0;
        Matrix d(dr + cod.dims[n - 1], (n >= 1 ? dom.dims[n - 1] : 0) + cod.dims[n]);
        // block (-d_dom) in the top-left
        if (n >= 2)
            for (int i = 0; i < dr; ++i)
                for (int j = 0; j < dom.dims[n - 1]; ++j) d.at(i, j) = -dom.boundary[n - 1].at(i, j);
        // block f in the bottom-left
        for (int i = 0; i < cod.dims[n - 1]; ++i)
            for (int j = 0; j < dom.dims[n - 1]; ++j) d.at(dr + i, j) = f.level[n - 1].at(i, j);
        // block d_cod in the bottom-right
        for (int i = 0; i < cod.dims[n - 1]; ++i)
            for (int j = 0; j < cod.dims[n]; ++j) d.at(dr + i, dom.dims[n - 1] + j) = cod.boundary[n].at(i, j);
        cone.boundary[n] = d;
    }
    return cone;
}

bool is_quasi_iso_upto(const ChainComplex& dom, const ChainComplex& cod, const ChainMap& f, int k) {
    auto cone = mapping_cone(dom, cod, f);
    for (int n = 0; n <= k; ++n)
        if (betti_unaugmented(cone, n) != 0) return false;
    return true;
}

bool verify_contraction(const ChainComplex& c, const std::vector<Matrix>& h, std::string* why) {
    if (!c.augmented()) {
        if (why) *why = "contraction requires an augmented complex";
        return false;
    }
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int top = static_cast<int>(h.size()) - 1;  // h[n+1] : level n -> level n+1
    if (top < 0) return fail("no homotopy data");
    if (h[0].rows != c.dims[0] || h[0].cols != c.aug_dim) return fail("h(-1) shape mismatch");
    // eps h = id on the augmentation target
    if (!(*c.eps * h[0] == Matrix::identity(c.aug_dim))) return fail("eps h != id at the augmentation");
    // d1 h0 + h(-1) eps = id at level 0
    if (top >= 1) {
        if (!(c.boundary[1] * h[1] + h[0] * *c.eps == Matrix::identity(c.dims[0])))
            return fail("d h + h eps != id at level 0");
    }
    for (int n = 1; n + 1 <= top; ++n) {
        if (!(c.boundary[n + 1] * h[n + 1] + h[n] * c.boundary[n] == Matrix::identity(c.dims[n])))
            return fail("d h + h d != id at level " + std::to_string(n));
    }
    return true;
}

NormalizedComplex normalize_simplicial(const ChainComplex& cx,
                                       const std::vector<std::vector<Matrix>>& s_ops) {
    int depth = cx.depth();
    NormalizedComplex out;
    out.quot.resize(depth + 1);
    std::vector<RowSpan> degen;
    degen.reserve(depth + 1);
    for (int n = 0; n <= depth; ++n) degen.emplace_back(cx.dims[n]);
    for (int n = 1; n <= depth; ++n)
        for (int j = 0; j < n; ++j) {
            const Matrix& sj = s_ops[n - 1][j];
            for (int col = 0; col < sj.cols; ++col) {
                RatVec v(sj.rows);
                for (int r = 0; r < sj.rows; ++r) v[r] = sj.at(r, col);
                degen[n].add(std::move(v));
            }
        }
    out.cx.dims.resize(depth + 1);
    out.cx.labels.resize(depth + 1);
    out.cx.boundary.resize(depth + 1);
    out.proj.level.resize(depth + 1);
    for (int n = 0; n <= depth; ++n) {
        out.quot[n] = make_quotient(degen[n]);
        out.cx.dims[n] = static_cast<int>(out.quot[n].keep.size());
        if (n < static_cast<int>(cx.labels.size()) && !cx.labels[n].empty())
            for (int k : out.quot[n].keep) out.cx.labels[n].push_back(cx.labels[n][k]);
        out.proj.level[n] = out.quot[n].proj;
    }
    out.cx.boundary[0] = Matrix(0, 0);
    for (int n = 1; n <= depth; ++n) {
        for (const auto& row : degen[n].rows) {
            RatVec img = cx.boundary[n].apply(row);
            if (!degen[n - 1].contains(img))
                throw StructuralError("normalization: differential does not preserve degeneracies");
        }
        out.cx.boundary[n] = out.quot[n - 1].proj * cx.boundary[n] * out.quot[n].sect;
    }
    if (cx.augmented()) {
        out.cx.aug_dim = cx.aug_dim;
        out.cx.eps = *cx.eps * out.quot[0].sect;
        out.proj.aug = Matrix::identity(cx.aug_dim);
    }
    auto rep = out.cx.validate();
    if (!rep.ok()) throw StructuralError("normalized complex failed validation:\n" + rep.str());
    auto cm = validate_chain_map(cx, out.cx, out.proj);
    if (!cm.ok()) throw StructuralError("normalization projection is not a chain map:\n" + cm.str());
    return out;
}

std::string export_text(const ChainComplex& c) {
    std::ostringstream os;
    os << "levels " << c.depth() + 1 << "\n";
    for (int n = 0; n <= c.depth(); ++n) {
        os << "level " << n << " dim " << c.dims[n] << "\n";
        if (n < static_cast<int>(c.labels.size()))
            for (size_t i = 0; i < c.labels[n].size(); ++i) os << "  basis " << i << " " << c.labels[n][i] << "\n";
    }
    for (int n = 1; n <= c.depth(); ++n) {
        os << "boundary " << n << "\n";
        const Matrix& d = c.boundary[n];
        for (int i = 0; i < d.rows; ++i)
            for (int j = 0; j < d.cols; ++j)
                if (d.at(i, j) != 0) os << "  " << i << " " << j << " " << rat_str(d.at(i, j)) << "\n";
    }
    if (c.augmented()) {
        os << "augmentation dim " << c.aug_dim << "\n";
        for (int i = 0; i < c.eps->rows; ++i)
            for (int j = 0; j < c.eps->cols; ++j)
                if (c.eps->at(i, j) != 0) os << "  " << i << " " << j << " " << rat_str(c.eps->at(i, j)) << "\n";
    }
    return os.str();
}

}  // namespace opcat
