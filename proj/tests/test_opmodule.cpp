#include "doctest.h"

#include "builders.hpp"
#include "opcat/common.hpp"
#include "opcat/opmodule.hpp"

using namespace opcat;
using namespace opcat_test;

namespace {

// right multiplication makes the dual numbers a module over themselves at
// the one-arrow module
PModule lambda_as_target(const UnaryOpCat& odot, const OperadicLeftModule& star, const LinOperad& lam) {
    PModule m;
    m.carrier = {lam.carrier[0]};
    m.init_tables(odot, star, lam);
    m.nu[0] = lam.gamma[0];
    return m;
}

Collection one_dim_collection(const std::string& label, int degree = 0) {
    Collection e;
    Basis b;
    b.labels = {label};
    if (degree) b.degree = {degree};
    e.at = {b};
    return e;
}

}  // namespace

TEST_CASE("a linear operad is a module over itself") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    REQUIRE(validate_lin_operad(odot, lam).ok());
    auto self = self_module(odot);
    auto m = operad_as_pmodule(odot, lam);
    CHECK(validate_pmodule(odot, self, lam, m).ok());

    SUBCASE("a unital operad is a unital module over itself") {
        RatVec eta(2);
        eta[0] = 1;
        CHECK(check_unital_pmodule(odot, self, lam, m, {eta}));
    }
    SUBCASE("perturbing one nu entry yields a witness") {
        PModule bad = m;
        bad.nu[0][3][0] = 1;  // x·x := 1
        CHECK_FALSE(validate_pmodule(odot, self, lam, bad).ok());
    }
}

TEST_CASE("the zero module validates") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    auto star = star_module(odot);
    PModule zero;
    zero.carrier = {Basis{}};
    zero.init_tables(odot, star, lam);
    CHECK(validate_pmodule(odot, star, lam, zero).ok());
}

TEST_CASE("free non-unital module over the dual numbers") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    auto star = star_module(odot);
    auto e = one_dim_collection("e");
    auto fr = free_nonunital(odot, star, lam, e);
    CHECK(fr.mod.dim(0) == 3);  // E ⊕ (Lambda ⊗ E)
    CHECK(validate_pmodule(odot, star, lam, fr.mod).ok());

    SUBCASE("zero collection gives the zero module") {
        Collection z;
        z.at = {Basis{}};
        auto fz = free_nonunital(odot, star, lam, z);
        CHECK(fz.mod.dim(0) == 0);
    }
}

TEST_CASE("universal property of the free module") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    auto star = star_module(odot);
    auto e = one_dim_collection("e");
    auto fr = free_nonunital(odot, star, lam, e);
    auto target = lambda_as_target(odot, star, lam);
    REQUIRE(validate_pmodule(odot, star, lam, target).ok());
    // omega : E -> target, e -> x
    Matrix om0(2, 1);
    om0.at(1, 0) = 1;
    auto omega = std::vector<Matrix>{om0};
    auto Om = universal_extension(odot, star, lam, e, fr, target, omega);
    std::string why;
    CHECK_MESSAGE(is_pmodule_morphism(odot, star, lam, fr.mod, target, Om, &why), why);
    // Omega extends omega
    for (int i = 0; i < 2; ++i) CHECK(Om[0].at(i, 0) == om0.at(i, 0));

    SUBCASE("uniqueness: no nonzero morphism kills the generators") {
        // unknowns: entries of a matrix W : F(E)(*) -> target(*) with
        // W∘iota = 0 and the morphism square; solve the homogeneous system
        int rows = 2, cols = 3;
        std::vector<RatVec> eqs;
        auto unknown = [&](int i, int j) { return i * cols + j; };
        // W column of the generator = 0
        for (int i = 0; i < rows; ++i) {
            RatVec eq(rows * cols);
            eq[unknown(i, 0)] = 1;
            eqs.push_back(eq);
        }
        // W(nu(b_j, p)) = nu(W... wait: there is one module object; squares:
        // W(nu_free(v, p)) - nu_target(W v, p) = 0 for basis v, p
        for (int j = 0; j < cols; ++j)
            for (int ip = 0; ip < 2; ++ip) {
                RatVec ev(cols), ep(2);
                ev[j] = 1;
                ep[ip] = 1;
                RatVec lhs = fr.mod.apply_nu(star, lam, 0, ev, ep);  // in free coords
                // equation rows: for each target coordinate i:
                // sum_k W[i,k] lhs[k] - (nu_target(e_j-image...)) -- the right side
                // involves W at the fiber object (same object), nonlinear? no:
                // nu_target(W v, p) is linear in W. Coefficients:
                for (int i = 0; i < rows; ++i) {
                    RatVec eq(rows * cols);
                    for (int k = 0; k < cols; ++k)
                        if (lhs[k] != 0) eq[unknown(i, k)] += lhs[k];
                    // subtract nu_target(W e_j, e_p)[i] = sum_m W[m,j] * nu_target(e_m, e_p)[i]
                    for (int mdx = 0; mdx < rows; ++mdx) {
                        RatVec em(rows), ep2(2);
                        em[mdx] = 1;
                        ep2[ip] = 1;
                        RatVec t = target.apply_nu(star, lam, 0, em, ep2);
                        if (t[i] != 0) eq[unknown(mdx, j)] -= t[i];
                    }
                    eqs.push_back(eq);
                }
            }
        Matrix sys(static_cast<int>(eqs.size()), rows * cols);
        for (int r = 0; r < sys.rows; ++r)
            for (int cidx = 0; cidx < sys.cols; ++cidx) sys.at(r, cidx) = eqs[r][cidx];
        CHECK(kernel_dim(sys) == 0);
    }
}

TEST_CASE("free unital module is Lambda ⊗ E") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    auto star = star_module(odot);
    auto e = one_dim_collection("e");
    RatVec eta(2);
    eta[0] = 1;
    auto fu = free_unital(odot, star, lam, {eta}, e);
    CHECK(fu.mod.dim(0) == 2);
    CHECK(validate_pmodule(odot, star, lam, fu.mod).ok());
    CHECK(check_unital_pmodule(odot, star, lam, fu.mod, {eta}));
    // for the two-sided unital dual numbers the raw relation span is already
    // action stable
    CHECK(fu.relation_was_action_stable);

    SUBCASE("rigid-object structure isomorphism") {
        std::string why;
        CHECK_MESSAGE(free_structure_check(odot, star, lam, {eta}, e, 0, &why), why);
    }
}

TEST_CASE("one-object/no-arrow module: F(E) = E and the structure sum is 0") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    auto bare = bare_module(odot);
    auto e = one_dim_collection("e");
    RatVec eta(2);
    eta[0] = 1;
    auto fu = free_unital(odot, bare, lam, {eta}, e);
    CHECK(fu.mod.dim(0) == 1);  // F(E) = E again
    // the right hand side of the structure isomorphism is empty: 0 != 1,
    // and the construction refuses because the object is not rigid
    std::string why;
    CHECK_FALSE(free_structure_check(odot, bare, lam, {eta}, e, 0, &why));
    CHECK(why.find("rigid") != std::string::npos);
}

TEST_CASE("graded free module carries the Koszul sign") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot, true);
    REQUIRE(validate_lin_operad(odot, lam).ok());
    auto star = star_module(odot);
    auto e = one_dim_collection("e", 1);
    auto fr = free_nonunital(odot, star, lam, e);
    REQUIRE(fr.mod.dim(0) == 3);
    CHECK(validate_pmodule(odot, star, lam, fr.mod).ok());
    // nu(e, x) = -x⊗e: the sign of moving x past the degree-1 generator
    RatVec ev(3), ex(2);
    ev[fr.find(0, -1, -1, 0)] = 1;
    ex[1] = 1;
    RatVec img = fr.mod.apply_nu(star, lam, 0, ev, ex);
    CHECK(img[fr.find(0, 0, 1, 0)] == -1);
    // the universal extension of the inclusion into the free module itself
    // must be the identity
    Matrix omf(3, 1);
    omf.at(fr.find(0, -1, -1, 0), 0) = 1;
    auto Om = universal_extension(odot, star, lam, e, fr, fr.mod, {omf});
    CHECK(Om[0] == Matrix::identity(3));
}

TEST_CASE("restriction of a module along the identity") {
    auto odot = odot_opcat();
    auto lam = lambda_operad(odot);
    auto star = star_module(odot);
    auto target = lambda_as_target(odot, star, lam);
    OpModMorphism id;
    id.phi.f.obj_map = {0};
    id.phi.f.mor_map = {0};
    id.psi_obj = {0};
    id.psi_arrow = {0};
    REQUIRE(validate_opmod_morphism(odot, star, odot, star, id).ok());
    auto r = restrict_pmodule(odot, star, odot, star, id, target);
    CHECK(r.carrier[0].labels == target.carrier[0].labels);
    CHECK(r.nu == target.nu);
}
