#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gammak/gamma.hpp"
#include "gammak/report.hpp"

namespace gammak {

/* A finite window onto a category with cofibrations and weak equivalences:
 * integer handles for objects and morphisms, a zero object, the two
 * predicate classes, chosen wedges, and a pushout oracle. Partial answers
 * (nullopt) mean "outside this window" and are counted as skips by the
 * checkers; complete() distinguishes a total presentation from a window. */
class WaldView {
  public:
    virtual ~WaldView() = default;

    virtual int object_count() const = 0;
    virtual int morphism_count() const = 0;
    virtual int mor_src(int m) const = 0;
    virtual int mor_tgt(int m) const = 0;
    virtual int identity(int obj) const = 0;
    virtual const std::vector<int>& hom_ids(int a, int b) const = 0;

    /* nullopt when the composite is undefined inside the carrier. */
    virtual std::optional<int> compose(int second, int first) const = 0;

    virtual int zero_object() const = 0;
    virtual bool is_cofibration(int m) const = 0;
    virtual bool is_weak_equivalence(int m) const = 0;

    struct Wedge {
        int obj;
        int inl, inr;
    };
    virtual std::optional<Wedge> wedge(int a, int b) const = 0;

    struct Pushout {
        int apex;
        int into_c;   // C -> apex
        int into_b;   // B -> apex
    };
    /* cof : A >-> B, m : A -> C. */
    virtual std::optional<Pushout> pushout(int cof, int m) const = 0;

    virtual bool complete() const = 0;
    virtual std::string object_label(int obj) const = 0;
    virtual std::string morphism_label(int m) const = 0;
};

/* Window onto the tuple category of a permutative base. Handles are indices
 * into the enumerated view. */
class GammaWaldView final : public WaldView {
  public:
    GammaWaldView(const FinPermCat& base, TruncatedGammaView view);

    int object_count() const override;
    int morphism_count() const override;
    int mor_src(int m) const override;
    int mor_tgt(int m) const override;
    int identity(int obj) const override;
    const std::vector<int>& hom_ids(int a, int b) const override;
    std::optional<int> compose(int second, int first) const override;
    int zero_object() const override;
    bool is_cofibration(int m) const override;
    bool is_weak_equivalence(int m) const override;
    std::optional<Wedge> wedge(int a, int b) const override;
    std::optional<Pushout> pushout(int cof, int m) const override;
    bool complete() const override { return false; }
    std::string object_label(int obj) const override;
    std::string morphism_label(int m) const override;

    const FinPermCat& base() const { return *base_; }
    const TruncatedGammaView& view() const { return view_; }
    const GammaMor& mor(int m) const { return view_.morphisms[m]; }
    const GammaObj& obj(int a) const { return view_.objects[a]; }

  private:
    const FinPermCat* base_;
    TruncatedGammaView view_;
    std::vector<int> mor_src_, mor_tgt_, identities_;
    std::vector<bool> cof_, we_;
};

GammaWaldView gamma_as_wald(const FinPermCat& base, int max_len,
                            std::int64_t max_morphisms = 2'000'000);

/* Hand-built total presentation: a finite category plus designated zero,
 * predicate flags per morphism, and a partial wedge table. */
struct WaldPresentation {
    FinCat cat;
    ObjId zero = kNoObj;
    std::vector<bool> cof, we;            // per MorId
    struct WedgeEntry {
        ObjId a = kNoObj, b = kNoObj, obj = kNoObj;
        MorId inl = kNoMor, inr = kNoMor;
    };
    std::vector<WedgeEntry> wedges;
    std::string name;
};

class PresentationWaldView final : public WaldView {
  public:
    explicit PresentationWaldView(const WaldPresentation& p);

    int object_count() const override;
    int morphism_count() const override;
    int mor_src(int m) const override;
    int mor_tgt(int m) const override;
    int identity(int obj) const override;
    const std::vector<int>& hom_ids(int a, int b) const override;
    std::optional<int> compose(int second, int first) const override;
    int zero_object() const override;
    bool is_cofibration(int m) const override;
    bool is_weak_equivalence(int m) const override;
    std::optional<Wedge> wedge(int a, int b) const override;
    /* Universal-property search over the presentation. */
    std::optional<Pushout> pushout(int cof, int m) const override;
    bool complete() const override { return wedge_total_; }
    std::string object_label(int obj) const override;
    std::string morphism_label(int m) const override;

    const WaldPresentation& presentation() const { return *p_; }

  private:
    const WaldPresentation* p_;
    std::vector<std::vector<int>> wedge_idx_;   // [a][b] -> wedges index (or -1)
    std::vector<std::vector<std::vector<int>>> hom_;
    bool wedge_total_ = false;
};

/* Structural sanity of a presentation or window: zero is initial and
 * terminal, identities are cofibrations and weak equivalences, both classes
 * are closed under the (partial) composition, wedge rows satisfy the strict
 * unit law, wedge legs are cofibrations. */
Report validate_wald_view(const WaldView& view);

struct AxiomCheckOptions {
    std::int64_t budget = 200'000;   // elementary checks per axiom family
    std::uint64_t seed = 0;
    bool check_universal_property = true;
};

/* The four axioms:
 *   (i)   isomorphisms are cofibrations and weak equivalences,
 *   (ii)  the map from the zero object is the unique morphism and a
 *         cofibration, for every object,
 *   (iii) pushouts along cofibrations exist, commute, have a cofibration
 *         opposite leg, and satisfy the universal property,
 *   (iv)  gluing: the induced map on pushouts of weakly equivalent spans is
 *         a weak equivalence.
 * Checks every in-window instance up to the budget, then deterministic
 * seeded sampling; skips count window exhaustion. */
Report check_waldhausen_axioms(const WaldView& view, const AxiomCheckOptions& opt);

/* Gluing over a tuple-category window runs on the typed carrier where the
 * induced map is computable exactly. */
Report check_gluing(const GammaWaldView& view, const AxiomCheckOptions& opt);

/* Every in-window cofibration A >-> B admits the splitting weak equivalence
 * A v B/A -> B restricting to the cofibration on A. */
Report check_weakly_split(const GammaWaldView& view, const AxiomCheckOptions& opt);

}  // namespace gammak
