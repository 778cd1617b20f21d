#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "opcat/operad.hpp"

namespace opcat {

// Total category of the Grothendieck construction. Objects are tagged by
// (base object T, element index t in S(T)); morphisms by (base morphism f,
// fiber element eps, target element t). The canonical tags make round-trip
// isomorphism checks search-free.
struct GrothResult {
    UnaryOpCat total;
    OperadicFunctor projection;  // total -> base
    std::vector<std::pair<int, int>> obj_tag;
    struct MorTag {
        int f, eps, t;
    };
    std::vector<MorTag> mor_tag;

    int find_obj(int T, int t) const;
    int find_mor(int f, int eps, int t) const;
};

// Unital flavor: the base must be unital and S a unital operad with units
// e_c per pi0 component. The total category carries chosen terminals
// (U_c, e_c).
GrothResult grothendieck_cat(const UnaryOpCat& o, const SetOperad& s, const std::vector<int>& e_c);

// Pseudo-unital flavor (partial operads allowed): identities are (e_t, 1_T);
// morphisms exist exactly where gamma is defined. Total category is
// non-unital (no chosen terminals).
GrothResult grothendieck_pseudo(const UnaryOpCat& o, const SetOperad& s,
                                const std::vector<std::vector<int>>& e);

// lift domains of a partial discrete operadic fibration candidate: per base
// morphism f the set of pairs (eps object of Q, s object of Q)
using LiftDomains = std::vector<std::set<std::pair<int, int>>>;

ValidationReport check_discrete_fibration(const UnaryOpCat& q, const UnaryOpCat& o,
                                          const OperadicFunctor& p, bool require_pi0_epi);
ValidationReport check_partial_discrete_fibration(const UnaryOpCat& q, const UnaryOpCat& o,
                                                  const OperadicFunctor& p, const LiftDomains& lifts);

struct ExtractResult {
    SetOperad s;
    std::vector<std::vector<int>> elem_of;        // per base object: Q-objects over it
    std::vector<std::vector<int>> pseudo_units;   // e[T][t]
    std::vector<int> cat_units;                    // filled when both sides unital
};
// preconditions: the matching fibration check passes (call it first)
ExtractResult fibration_to_operad(const UnaryOpCat& q, const UnaryOpCat& o, const OperadicFunctor& p,
                                  const LiftDomains* lifts = nullptr);

// operadic isomorphism through explicitly given bijections
bool is_operadic_iso(const UnaryOpCat& a, const UnaryOpCat& b, const std::vector<int>& obj_map,
                     const std::vector<int>& mor_map, std::string* why = nullptr);

// executable equivalence statements, checked via the canonical tags
struct RoundTrip {
    bool ok = false;
    std::string why;
};
// operad -> fibration -> operad is the identity
RoundTrip roundtrip_operad_pseudo(const UnaryOpCat& o, const SetOperad& s,
                                  const std::vector<std::vector<int>>& e);
RoundTrip roundtrip_operad_cat(const UnaryOpCat& o, const SetOperad& s, const std::vector<int>& e_c);
// fibration -> operad -> fibration is the identity (pseudo flavor)
RoundTrip roundtrip_fibration_pseudo(const UnaryOpCat& q, const UnaryOpCat& o, const OperadicFunctor& p,
                                     const LiftDomains* lifts = nullptr);

// pi0(total) -> pi0(base) is a bijection for discrete fibrations
bool pi0_bijection(const UnaryOpCat& total, const UnaryOpCat& base, const OperadicFunctor& p);

}  // namespace opcat
