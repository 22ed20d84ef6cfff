#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gammak/report.hpp"

namespace gammak {

using ObjId = int;
using MorId = int;
inline constexpr MorId kNoMor = -1;
inline constexpr ObjId kNoObj = -1;

/* Finite category given by total tables. Identities occupy MorIds
 * 0..num_objects()-1 (identity of object k is MorId k); declared morphisms
 * follow. Composition is stored as a dense matrix over morphism pairs with
 * kNoMor marking non-composable or missing entries. */
class FinCat {
  public:
    FinCat() = default;

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(src_.size()); }

    ObjId add_object(std::string name);
    MorId add_morphism(std::string name, ObjId src, ObjId tgt);
    void set_compose(MorId g, MorId f, MorId gf);

    const std::string& object_name(ObjId a) const { return objects_[a]; }
    const std::string& morphism_name(MorId f) const { return mor_names_[f]; }

    ObjId src(MorId f) const { return src_[f]; }
    ObjId tgt(MorId f) const { return tgt_[f]; }
    MorId identity(ObjId a) const { return a; }
    bool is_identity(MorId f) const { return f < num_objects(); }

    bool composable(MorId g, MorId f) const { return tgt_[f] == src_[g]; }
    /* kNoMor when not composable or the table has a hole. */
    MorId compose_or_hole(MorId g, MorId f) const;
    /* The stored table entry with no composability guard, for validation:
     * an entry on a non-composable pair is a defect worth reporting. */
    MorId compose_raw(MorId g, MorId f) const;
    /* Throws std::logic_error on non-composable arguments or table holes. */
    MorId compose(MorId g, MorId f) const;

    std::vector<MorId> hom(ObjId a, ObjId b) const;
    const std::vector<MorId>& morphisms_from(ObjId a) const;
    const std::vector<MorId>& morphisms_into(ObjId b) const;

    std::optional<ObjId> object_by_name(const std::string& name) const;
    std::optional<MorId> morphism_by_name(const std::string& name) const;

    /* Call after all tables are filled: derives identity compositions that
     * were not given explicitly and builds lookup indexes. Explicit entries
     * are kept as stated so a poisoned table stays poisoned for validation. */
    void finalize();

  private:
    std::vector<std::string> objects_;
    std::vector<std::string> mor_names_;
    std::vector<ObjId> src_, tgt_;
    std::vector<MorId> comp_;            // comp_[g * M + f]
    std::vector<std::vector<MorId>> from_, into_;
    bool finalized_ = false;
};

/* Functor between finite categories as explicit object/morphism maps. */
struct FinFunctor {
    const FinCat* dom = nullptr;
    const FinCat* cod = nullptr;
    std::vector<ObjId> obj_map;
    std::vector<MorId> mor_map;
};

/* Strict symmetric (permutative) structure on a FinCat: strictly associative
 * and unital tensor with a chosen symmetry morphism per object pair. */
class FinPermCat {
  public:
    FinPermCat() = default;
    FinPermCat(FinCat cat, ObjId unit) : cat_(std::move(cat)), unit_(unit) {
        const int n = cat_.num_objects();
        const int m = cat_.num_morphisms();
        tensor_obj_.assign(static_cast<std::size_t>(n) * n, kNoObj);
        tensor_mor_.assign(static_cast<std::size_t>(m) * m, kNoMor);
        sym_.assign(static_cast<std::size_t>(n) * n, kNoMor);
    }

    const FinCat& cat() const { return cat_; }
    ObjId unit() const { return unit_; }

    void set_tensor_obj(ObjId a, ObjId b, ObjId ab);
    void set_tensor_mor(MorId f, MorId g, MorId fg);
    void set_symmetry(ObjId a, ObjId b, MorId beta);
    /* Derives forced rows (unit laws, identity tensor identity) that were
     * not supplied; explicit entries win so mutations stay visible. */
    void derive_forced_rows();

    ObjId tensor_obj_or_hole(ObjId a, ObjId b) const;
    MorId tensor_mor_or_hole(MorId f, MorId g) const;
    MorId symmetry_or_hole(ObjId a, ObjId b) const;

    ObjId tensor(ObjId a, ObjId b) const;       // throws on hole
    MorId tensor_mor(MorId f, MorId g) const;   // throws on hole
    MorId symmetry(ObjId a, ObjId b) const;     // throws on hole

    /* Left fold; empty span gives the unit / its identity. */
    ObjId tensor_power(std::span<const ObjId> objs) const;
    MorId tensor_mor_power(std::span<const MorId> mors) const;

    /* Canonical symmetry isomorphism
     *   T(c_0,...,c_{n-1}) -> T(d_0,...,d_{n-1}),  d_{sigma[i]} = c_i,
     * assembled from adjacent transpositions (bubble-sort decomposition).
     * Any decomposition yields the same morphism; tested exhaustively. */
    MorId perm_iso(std::span<const ObjId> objs, std::span<const int> sigma) const;

  private:
    FinCat cat_;
    ObjId unit_ = kNoObj;
    std::vector<ObjId> tensor_obj_;
    std::vector<MorId> tensor_mor_;
    std::vector<MorId> sym_;
};

Report validate_category(const FinCat& cat);
Report validate_functor(const FinFunctor& fun);
Report validate_permutative(const FinPermCat& pcat);

/* Two-sided inverse search; nullopt when f is not invertible. */
std::optional<MorId> inverse_of(const FinCat& cat, MorId f);
bool is_iso(const FinCat& cat, MorId f);

/* Unique u : src -> tgt with u . leg == required for every constraint. */
struct TriangleConstraint {
    MorId leg;        // W -> src
    MorId required;   // W -> tgt
};
enum class MediatingOutcome { Found, NotFound, NotUnique };
struct MediatingResult {
    MediatingOutcome outcome = MediatingOutcome::NotFound;
    MorId mor = kNoMor;
    int candidates = 0;
};
MediatingResult mediating_morphism(const FinCat& cat, ObjId src, ObjId tgt,
                                   std::span<const TriangleConstraint> constraints);

/* Permutation helpers (vectors are images: sigma[i] = where i goes). */
bool is_permutation(std::span<const int> sigma);
std::vector<int> invert_permutation(std::span<const int> sigma);
std::vector<int> compose_permutations(std::span<const int> second,
                                      std::span<const int> first);
/* Permutation sending each position of `values` to its rank in the sorted
 * order; requires distinct values. */
std::vector<int> sorting_permutation(std::span<const int> values);

}  // namespace gammak
