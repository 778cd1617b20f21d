#pragma once

#include <string>
#include <vector>

#include "opcat/matrix.hpp"
#include "opcat/opcat.hpp"

namespace opcat {

// ---------------------------------------------------------------------------
// Set-valued operads, total or partial. gamma[h] is the extensional table of
// gamma_h : S(F) x S(B) -> S(A) for h : A -> B with fiber F; -1 entries mark
// pairs outside the domain D(h) (only legal when partial).
// ---------------------------------------------------------------------------
struct SetOperad {
    bool partial = false;
    std::vector<std::vector<std::string>> carrier;      // per object: element names
    std::vector<std::vector<int>> gamma;                // per morphism: (i_F * |S(B)| + i_B) -> i_A

    int dim(int obj) const { return static_cast<int>(carrier[obj].size()); }
    int g(const UnaryOpCat& o, int h, int iF, int iB) const {
        int B = o.base.mor[h].cod;
        return gamma[h][static_cast<size_t>(iF) * dim(B) + iB];
    }
    void set_g(const UnaryOpCat& o, int h, int iF, int iB, int v) {
        int B = o.base.mor[h].cod;
        gamma[h][static_cast<size_t>(iF) * dim(B) + iB] = v;
    }
    void init_tables(const UnaryOpCat& o);
};

ValidationReport validate_set_operad(const UnaryOpCat& o, const SetOperad& s);

struct LRFlags {
    bool left = false, right = false;
    std::vector<std::string> witnesses;
};

// unitality with chosen terminals: e_c in S(U_c), one per pi0 component
LRFlags check_unital_cat_set(const UnaryOpCat& o, const SetOperad& s, const std::vector<int>& e_c);
// fiberwise unitality: e_T in S(U_T), one per object T
LRFlags check_unital_fiberwise_set(const UnaryOpCat& o, const SetOperad& s, const std::vector<int>& e_T);
// pseudo-unitality: e[T][t] in S(U_T) for every element t in S(T); for
// partial operads definedness is part of the check
LRFlags check_pseudo_unital(const UnaryOpCat& o, const SetOperad& s,
                            const std::vector<std::vector<int>>& e);

// When both flags of check_unital_fiberwise hold, eta_T depends only on U_T;
// returns witnesses of failures of that derived consistency.
std::vector<std::string> fiberwise_unit_uniqueness_set(const UnaryOpCat& o, const SetOperad& s,
                                                       const std::vector<int>& e_T);

SetOperad restrict_set(const UnaryOpCat& src, const UnaryOpCat& dst, const OperadicFunctor& phi,
                       const SetOperad& p);

// the terminal unital operad: every component a singleton
SetOperad terminal_set_operad(const UnaryOpCat& o);
// the empty operad
SetOperad empty_set_operad(const UnaryOpCat& o);
// a monoid-like table as an operad over the one-object operadic category
SetOperad monoid_as_odot_operad(const UnaryOpCat& odot, const MonoidLike& a);

// ---------------------------------------------------------------------------
// Operads in based modules over exact rationals.
// ---------------------------------------------------------------------------
struct Basis {
    std::vector<std::string> labels;
    std::vector<int> degree;  // empty means all degree 0
    int dim() const { return static_cast<int>(labels.size()); }
    int deg(int i) const { return degree.empty() ? 0 : degree[i]; }
};

struct LinOperad {
    std::vector<Basis> carrier;  // per object
    // gamma[h][(iF * dim(B)) + iB] = coordinate vector over basis(A)
    std::vector<std::vector<RatVec>> gamma;

    int dim(int obj) const { return carrier[obj].dim(); }
    const RatVec& g(const UnaryOpCat& o, int h, int iF, int iB) const {
        int B = o.base.mor[h].cod;
        return gamma[h][static_cast<size_t>(iF) * dim(B) + iB];
    }
    void init_tables(const UnaryOpCat& o);
    // bilinear extension of gamma_h
    RatVec apply_gamma(const UnaryOpCat& o, int h, const RatVec& xF, const RatVec& xB) const;
};

ValidationReport validate_lin_operad(const UnaryOpCat& o, const LinOperad& p);
LRFlags check_unital_cat_lin(const UnaryOpCat& o, const LinOperad& p, const std::vector<RatVec>& eta_c);
LRFlags check_unital_fiberwise_lin(const UnaryOpCat& o, const LinOperad& p, const std::vector<RatVec>& eta_T);
std::vector<std::string> fiberwise_unit_uniqueness_lin(const UnaryOpCat& o, const LinOperad& p,
                                                       const std::vector<RatVec>& eta_T);
LinOperad restrict_lin(const UnaryOpCat& src, const UnaryOpCat& dst, const OperadicFunctor& phi,
                       const LinOperad& p);

// Mor(A)-graded associative algebra as an operad over decollage(A): carriers
// indexed by morphisms of A, products A(f) ⊗ A(g) -> A(gf).
LinOperad graded_algebra_as_decollage_operad(const FinCategory& a, const DecollageTags& tags,
                                             const std::vector<Basis>& comp_basis,
                                             const std::vector<std::vector<RatVec>>& products);

}  // namespace opcat
