#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammak/fincat.hpp"
#include "gammak/gamma.hpp"
#include "gammak/wald.hpp"
#include "gammak/report.hpp"

namespace gammak {

/* C with a freshly adjoined isolated object star: no new morphisms besides
 * its identity, tensor extended by star acting as (a second) strict unit.
 * Old object indices are preserved; old non-identity morphisms shift up by
 * one to make room for the identity of star (see mor_to_plus/mor_to_base). */
struct PlusCat {
    FinPermCat pcat;
    ObjId star = kNoObj;
    MorId star_id = kNoMor;
    MorId mor_to_plus(MorId base_mor) const;
    MorId mor_to_base(MorId plus_mor) const;   // throws on the identity of star
};
PlusCat plus_category(const FinPermCat& base);

/* The canonical embedding into the weak-equivalence part of the tuple
 * category: star -> (), c -> (c), morphism -> single full block. */
GammaObj s_on_object(const PlusCat& plus, ObjId x);
GammaMor s_on_morphism(const FinPermCat& base, const PlusCat& plus, MorId u);

/* Structure map (T(c_1,...,c_p)) -> (c_1,...,c_p): single source position,
 * full block, identity component. Requires p >= 1. */
GammaMor oplax_structure_map(const FinPermCat& base, std::span<const ObjId> objs);

/* Naturality of the structure maps against the embedding, and agreement of
 * nested structure maps with their one-step composites, over all object
 * sequences of length <= max_len (budgeted). */
Report check_oplax_coherence(const FinPermCat& base, int max_len,
                             std::int64_t budget = 200'000);

/* Comma category of the embedding over a tuple A, built from the
 * weak-equivalence window: objects are pairs (X in C+, w : s(X) -> A weak
 * equivalence); morphisms are C+ maps making the triangle commute.
 * designated is the index of (T^a(A) computed in C+, structure map). */
struct CommaCategory {
    FinCat cat;
    std::vector<ObjId> plus_object;    // per comma object: the C+ object
    std::vector<MorId> component;      // the single component of w (kNoMor for star)
    int designated = -1;
};
CommaCategory comma_over(const FinPermCat& base, const PlusCat& plus, const GammaObj& a);

/* The unique object receiving exactly one morphism from every object;
 * nullopt when none or several qualify. */
std::optional<ObjId> find_terminal(const FinCat& cat);

/* Terminal-object witnesses for every tuple of length <= max_len. */
Report check_comma_terminal(const FinPermCat& base, int max_len);

/* ---- Counit of the wedge/forgetful adjunction over a Waldhausen window ---- */

/* A morphism of the tuple category over the weak-equivalence part of a
 * WaldView: tuple entries and components are view handles, components are
 * weak equivalences landing in left-fold wedges of target blocks. */
struct GammaOverWald {
    std::vector<int> src, tgt;        // object handles
    IndexMap phi;
    std::vector<int> components;      // morphism handles, -1 on empty blocks
    auto operator<=>(const GammaOverWald&) const = default;
};

/* Left-fold wedge of a tuple of view objects with its inclusion legs;
 * nullopt when a wedge falls outside the window. */
struct FoldedWedge {
    int obj;
    std::vector<int> legs;   // leg t : tuple[t] -> obj
};
std::optional<FoldedWedge> fold_wedge(const WaldView& view, std::span<const int> tuple);

/* Counit on objects: iterated chosen wedge (zero object for the empty
 * tuple); on morphisms: wedge of the components, then the reindexing
 * isomorphism, then per-target fold maps, each found as the unique
 * mediating morphism for its legs. nullopt = window exhaustion; failures
 * (no or non-unique mediating morphism) are reported via the Section. */
std::optional<int> counit_on_object(const WaldView& view, std::span<const int> tuple);
std::optional<int> counit_on_morphism(const WaldView& view, const GammaOverWald& m,
                                      Section& sec);

/* Enumerates tuples over the view of length <= max_len and all tuple
 * morphisms whose components are in-window weak equivalences. */
struct GammaOverWaldWindow {
    std::vector<std::vector<int>> tuples;
    std::vector<GammaOverWald> morphisms;
    std::int64_t skipped_blocks = 0;   // blocks whose fold-wedge left the window
};
GammaOverWaldWindow enumerate_gamma_over_wald(const WaldView& view, int max_len,
                                              std::int64_t max_morphisms = 500'000);

/* Triangle identities of the adjunction, checked pointwise:
 * (1) over a tuple-category window: unit followed by counit is the identity
 *     on objects and morphisms of the window;
 * (2) over any WaldView: counit of a singleton tuple / single-block wrap is
 *     the identity on objects and weak equivalences. */
Report check_triangle_identities(const GammaWaldView& gview, std::int64_t budget = 100'000);
Report check_triangle_identity_singletons(const WaldView& view);

/* Exactness of the counit over a view window: zero goes to zero, weak
 * equivalences to weak equivalences, cofibrations to cofibrations, and
 * pushout squares to pushout squares (universal property re-verified in
 * the target). */
Report check_counit_exact(const WaldView& view, int max_len,
                          const AxiomCheckOptions& opt);

/* Functoriality of the embedding and K0 invariance under the added unit. */
Report check_embedding_functorial(const FinPermCat& base);

}  // namespace gammak
