#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gammak/fincat.hpp"
#include "gammak/report.hpp"

namespace gammak {

/* Objects of the tuple category over a permutative base: finite (possibly
 * empty) tuples of base objects. The empty tuple is the zero object. */
struct GammaObj {
    std::vector<ObjId> entries;
    int arity() const { return static_cast<int>(entries.size()); }
    auto operator<=>(const GammaObj&) const = default;
};

/* phi : [a] -> 2^[b] as one sorted index block per source position. */
struct IndexMap {
    std::vector<std::vector<int>> blocks;
    int target_arity = 0;
    int source_arity() const { return static_cast<int>(blocks.size()); }
    auto operator<=>(const IndexMap&) const = default;
};

/* Morphism (phi, f): components[i] is a base morphism
 *   f_i : A_i -> T(B_{j_1}, ..., B_{j_p})   for phi.blocks[i] = {j_1<...<j_p},
 * present exactly when the block is nonempty (kNoMor otherwise). Blocks of
 * distinct source positions may overlap. */
struct GammaMor {
    GammaObj src, tgt;
    IndexMap phi;
    std::vector<MorId> components;
    auto operator<=>(const GammaMor&) const = default;
};

/* Composition of the second morphism after the first is undefined in two
 * situations, each returned with a witness instead of a guessed value:
 * - OverlappingBlocks: inside one source block phi(i) = {..., j, j', ...}
 *   the middle blocks psi(j) and psi(j') intersect, so the concatenation
 *   is not a bijection onto the union;
 * - MissingComponent: some j in phi(i) has psi(j) empty (hence no component
 *   g_j) while the union over phi(i) is nonempty, so the required composite
 *   component cannot be assembled. */
struct ComposeUndefined {
    enum class Reason { OverlappingBlocks, MissingComponent };
    Reason reason = Reason::OverlappingBlocks;
    int source_index = -1;   // i in the source of the first morphism
    int block_a = -1;        // j in phi(i)
    int block_b = -1;        // j' in phi(i) for overlaps, -1 otherwise
    std::string describe() const;
};

using ComposeResult = std::variant<GammaMor, ComposeUndefined>;

bool compose_defined(const ComposeResult& r);
const GammaMor* composed(const ComposeResult& r);          // nullptr if undefined
const ComposeUndefined* compose_failure(const ComposeResult& r);

bool well_formed(const FinPermCat& base, const GammaMor& m, std::string* why = nullptr);

GammaObj gamma_zero();
GammaMor gamma_identity(const FinPermCat& base, const GammaObj& a);
/* The unique morphism a -> () (all blocks empty, no components). */
GammaMor gamma_to_zero(const GammaObj& a);
GammaMor gamma_from_zero(const GammaObj& b);

ComposeResult gamma_compose(const FinPermCat& base, const GammaMor& second,
                            const GammaMor& first);
/* Throws std::logic_error if the composite is undefined. */
GammaMor gamma_compose_strict(const FinPermCat& base, const GammaMor& second,
                              const GammaMor& first);

/* Weak equivalence: the blocks are pairwise disjoint, cover the target, and
 * are each nonempty (phi is the preimage map of a surjection [b] -> [a]).
 * No condition on the components. */
bool is_weak_equivalence(const GammaMor& m);

/* Cofibration: every block is a singleton, blocks are pairwise distinct,
 * and every component is an isomorphism of the base. */
bool is_cofibration(const FinPermCat& base, const GammaMor& m);

bool is_gamma_iso(const FinPermCat& base, const GammaMor& m);

/* Concatenation; strictly associative and unital with unit (). */
GammaObj wedge(const GammaObj& a, const GammaObj& b);
GammaMor wedge_inl(const FinPermCat& base, const GammaObj& a, const GammaObj& b);
GammaMor wedge_inr(const FinPermCat& base, const GammaObj& a, const GammaObj& b);
GammaMor wedge_mor(const FinPermCat& base, const GammaMor& m, const GammaMor& n);

/* Pushout of  C <-(m)- A >-(cof)-> B.  The apex keeps the C part first and
 * then the target positions of B missed by the cofibration, in increasing
 * order. into_c is again a cofibration; the square commutes on the nose. */
struct PushoutSquare {
    GammaObj apex;
    GammaMor into_c;   // C -> apex
    GammaMor into_b;   // B -> apex
    std::vector<int> missed;   // positions of [b] outside the image of phi
};
PushoutSquare pushout_along_cofibration(const FinPermCat& base, const GammaMor& cof,
                                        const GammaMor& m);

/* Mediating morphism apex -> E for a commuting cocone (from_b, from_c);
 * throws std::logic_error when the cocone does not commute. */
GammaMor pushout_mediating(const FinPermCat& base, const GammaMor& cof,
                           const GammaMor& m, const PushoutSquare& square,
                           const GammaMor& from_b, const GammaMor& from_c);

/* Cofiber B/A of a cofibration: pushout along the map to the zero object. */
GammaObj cofiber(const FinPermCat& base, const GammaMor& cof,
                 std::vector<int>* missed = nullptr);

/* The weak equivalence A v B/A -> B restricting to the cofibration on A:
 * image positions of phi first (carrying the inverted-to-f_i components),
 * missed positions after (carrying identities). It is also a cofibration. */
GammaMor splitting_equivalence(const FinPermCat& base, const GammaMor& cof);

/* Every tuple of length <= max_len and every morphism between two such
 * tuples, in a deterministic order (objects by length then lexicographic;
 * morphisms by source, target, index map, components). */
struct TruncatedGammaView {
    const FinPermCat* base = nullptr;
    int max_len = 0;
    std::vector<GammaObj> objects;
    std::vector<GammaMor> morphisms;
    std::vector<std::vector<std::vector<int>>> by_pair;  // [src][tgt] -> morphism ids

    int object_index(const GammaObj& a) const;           // -1 when absent
    int morphism_index(const GammaMor& m) const;         // -1 when absent
    const std::vector<int>& hom_ids(int src_idx, int tgt_idx) const;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TruncatedGammaView enumerate_truncated(const FinPermCat& base, int max_len,
                                       std::int64_t max_morphisms = 2'000'000);

/* Two cofibration/map spans joined by three weak equivalences forming
 * commuting squares; the induced map of pushouts must again be a weak
 * equivalence. */
struct GluingDiagram {
    GammaMor cof1, m1;    // B1 <-< A1 -> C1
    GammaMor cof2, m2;    // B2 <-< A2 -> C2
    GammaMor wa, wb, wc;  // A1->A2, B1->B2, C1->C2
};
/* Returns false only on a genuine violation; preconditions are checked and
 * violations reported via the Section. */
bool check_gluing_instance(const FinPermCat& base, const GluingDiagram& d,
                           Section& sec);

std::string describe(const FinPermCat& base, const GammaObj& a);
std::string describe(const FinPermCat& base, const GammaMor& m);

}  // namespace gammak
