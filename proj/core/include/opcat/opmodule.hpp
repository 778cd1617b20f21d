#pragma once

#include "opcat/catmod.hpp"
#include "opcat/matrix.hpp"
#include "opcat/operad.hpp"

namespace opcat {

// collection: based modules indexed by module objects, no actions
struct Collection {
    std::vector<Basis> at;
    int dim(int l) const { return at[l].dim(); }
};

// Module over a linear operad. nu[alpha] encodes the bilinear action
// nu_alpha : M(G) ⊗ P(S) -> M(L) for a module arrow alpha : L -> S with
// fiber G, as vectors over the basis of M(L) per basis pair (g, s).
struct PModule {
    std::vector<Basis> carrier;  // per module object
    std::vector<std::vector<RatVec>> nu;

    int dim(int l) const { return carrier[l].dim(); }
    void init_tables(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p);
    const RatVec& cell(const OperadicLeftModule& mcat, const LinOperad& p, int alpha, int ig, int is) const {
        int S = mcat.m.arrows[alpha].cod_o;
        return nu[alpha][static_cast<size_t>(ig) * p.dim(S) + is];
    }
    RatVec apply_nu(const OperadicLeftModule& mcat, const LinOperad& p, int alpha, const RatVec& xg,
                    const RatVec& xs) const;
};

ValidationReport validate_pmodule(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                                  const PModule& m);

// unit law nu_{alpha_T}(- ⊗ eta_T) = id for every module arrow alpha : M -> T
bool check_unital_pmodule(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                          const PModule& m, const std::vector<RatVec>& eta_T,
                          std::vector<std::string>* witnesses = nullptr);

// a linear operad as a module over itself (over the self module of o)
PModule operad_as_pmodule(const UnaryOpCat& o, const LinOperad& p);

// --- free modules ----------------------------------------------------------

// labels of the free carrier: either a generator of E(M) or a summand
// P(T) ⊗_alpha E(G)
struct FreeBasisTag {
    int alpha = -1;  // -1 for the E(M) part
    int t = -1, g = -1;
};

struct FreeModule {
    PModule mod;
    std::vector<std::vector<FreeBasisTag>> tags;  // per module object
    int find(int lobj, int alpha, int t, int g) const;
};

// non-unital free module; requires WBU for both the category and the module
FreeModule free_nonunital(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                          const Collection& e);

// quotient by e ~ eta_T ⊗_{alpha_T} e over every arrow alpha with fiber G;
// the relation span is saturated under the action before quotienting
struct FreeUnitalModule {
    PModule mod;
    std::vector<Quotient> quot;                    // per module object, from the free carrier
    FreeModule free_part;                          // the underlying non-unital free module
    std::vector<int> relation_rank;                // per object
    bool relation_was_action_stable = true;        // raw span already closed under the action
};
FreeUnitalModule free_unital(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                             const std::vector<RatVec>& eta_T, const Collection& e);

// at a rigid object M, F(E)(M) should be the pure sum over arrows out of M
bool free_structure_check(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                          const std::vector<RatVec>& eta_T, const Collection& e, int m_rigid,
                          std::string* why = nullptr);

PModule restrict_pmodule(const UnaryOpCat& o1, const OperadicLeftModule& m1, const UnaryOpCat& o2,
                         const OperadicLeftModule& m2, const OpModMorphism& f, const PModule& m);

// universal property: the unique module morphism F(E) -> M extending a
// collection map omega (per-object matrices E(l) -> M(l)); Koszul signs per
// the grading of the bases
std::vector<Matrix> universal_extension(const UnaryOpCat& o, const OperadicLeftModule& mcat,
                                        const LinOperad& p, const Collection& e, const FreeModule& fr,
                                        const PModule& target, const std::vector<Matrix>& omega);

// check Omega is a morphism of P-modules
bool is_pmodule_morphism(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                         const PModule& a, const PModule& b, const std::vector<Matrix>& om,
                         std::string* why = nullptr);

}  // namespace opcat
