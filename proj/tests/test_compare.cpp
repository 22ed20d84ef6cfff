#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "gammak/compare.hpp"
#include "gammak/examples.hpp"
#include "gammak/ktheory.hpp"
#include "gammak/spec_io.hpp"
#include "gammak/wald.hpp"

using namespace gammak;

namespace {

const Section* find_section(const Report& rep, const std::string& name) {
    for (const Section& s : rep.sections)
        if (s.name == name) return &s;
    return nullptr;
}

}  // namespace

TEST_CASE("adjoining a basepoint keeps the structure and the K-group") {
    for (const CategorySpec& spec :
         {examples::c2(), examples::x1(), examples::m3()}) {
        CAPTURE(spec.name);
        FinPermCat base = elaborate_permutative(spec);
        PlusCat plus = plus_category(base);
        const FinPermCat& q = plus.pcat;

        CHECK(q.cat().num_objects() == base.cat().num_objects() + 1);
        CHECK(q.cat().num_morphisms() == base.cat().num_morphisms() + 1);
        CHECK(plus.star == base.cat().num_objects());
        CHECK(plus.star_id == q.cat().identity(plus.star));
        CHECK(q.unit() == plus.star);

        CHECK(validate_category(q.cat()).clean());
        CHECK(validate_permutative(q).clean());

        // the new object is a strict unit and stays isolated
        for (ObjId a = 0; a < q.cat().num_objects(); ++a) {
            CHECK(q.tensor(plus.star, a) == a);
            CHECK(q.tensor(a, plus.star) == a);
        }
        CHECK(q.cat().hom(plus.star, 0).empty());
        CHECK(q.cat().hom(0, plus.star).empty());

        for (MorId m = 0; m < base.cat().num_morphisms(); ++m) {
            MorId up = plus.mor_to_plus(m);
            CHECK(plus.mor_to_base(up) == m);
            CHECK(q.cat().morphism_name(up) == base.cat().morphism_name(m));
        }
        CHECK_THROWS(plus.mor_to_base(plus.star_id));

        CHECK(k0_segal(q) == k0_segal(base));

        Report rep = check_embedding_functorial(base);
        CHECK(rep.clean());
        CHECK(find_section(rep, "k0_added_unit") != nullptr);
    }
}

TEST_CASE("the embedding lands in weak equivalences and is functorial") {
    FinPermCat base = elaborate_permutative(examples::x1());
    PlusCat plus = plus_category(base);
    const FinCat& qc = plus.pcat.cat();

    CHECK(s_on_object(plus, plus.star) == gamma_zero());
    for (ObjId a = 0; a < base.cat().num_objects(); ++a)
        CHECK(s_on_object(plus, a) == GammaObj{{a}});

    for (MorId u = 0; u < qc.num_morphisms(); ++u) {
        GammaMor su = s_on_morphism(base, plus, u);
        CHECK(well_formed(base, su));
        CHECK(is_weak_equivalence(su));
        CHECK(su.src == s_on_object(plus, qc.src(u)));
        CHECK(su.tgt == s_on_object(plus, qc.tgt(u)));
        for (MorId v = 0; v < qc.num_morphisms(); ++v) {
            if (qc.src(v) != qc.tgt(u)) continue;
            GammaMor left = s_on_morphism(base, plus, qc.compose(v, u));
            GammaMor right = gamma_compose_strict(
                base, s_on_morphism(base, plus, v), su);
            CHECK(left == right);
        }
    }
}

TEST_CASE("structure maps are coherent over every base") {
    for (const CategorySpec& spec :
         {examples::c2(), examples::x1(), examples::m3()}) {
        CAPTURE(spec.name);
        FinPermCat base = elaborate_permutative(spec);
        Report rep = check_oplax_coherence(base, 2);
        CHECK(rep.clean());
        CHECK(rep.total_findings() == 0);
    }

    FinPermCat c2 = elaborate_permutative(examples::c2());
    ObjId x = *c2.cat().object_by_name("x");
    std::vector<ObjId> objs = {x, x};
    GammaMor str = oplax_structure_map(c2, objs);
    CHECK(str.src == GammaObj{{c2.tensor(x, x)}});
    CHECK(str.tgt == GammaObj{{x, x}});
    CHECK(str.phi.blocks == std::vector<std::vector<int>>{{0, 1}});
    CHECK(well_formed(c2, str));
    CHECK(is_weak_equivalence(str));

    std::vector<ObjId> single = {x};
    CHECK(oplax_structure_map(c2, single) == gamma_identity(c2, GammaObj{{x}}));
}

TEST_CASE("comma categories over pinned tuples") {
    FinPermCat c2 = elaborate_permutative(examples::c2());
    PlusCat plus2 = plus_category(c2);
    ObjId x = *c2.cat().object_by_name("x");
    CommaCategory over_xx = comma_over(c2, plus2, GammaObj{{x, x}});
    CHECK(over_xx.cat.num_objects() == 1);
    CHECK(over_xx.designated == 0);
    CHECK(find_terminal(over_xx.cat) == std::optional<ObjId>(0));
    CHECK(over_xx.plus_object[0] == *c2.cat().object_by_name("e"));

    CommaCategory over_empty = comma_over(c2, plus2, gamma_zero());
    CHECK(over_empty.cat.num_objects() == 1);
    CHECK(over_empty.plus_object[0] == plus2.star);
    CHECK(find_terminal(over_empty.cat) == std::optional<ObjId>(over_empty.designated));

    FinPermCat x1 = elaborate_permutative(examples::x1());
    PlusCat plus1 = plus_category(x1);
    ObjId xx = *x1.cat().object_by_name("x");
    CommaCategory two = comma_over(x1, plus1, GammaObj{{xx, xx}});
    CHECK(two.cat.num_objects() == 2);   // components id_x and t over x
    CHECK(find_terminal(two.cat) == std::optional<ObjId>(two.designated));
    CHECK(two.component[two.designated] == x1.cat().identity(xx));
}

TEST_CASE("terminal witnesses across all short tuples") {
    struct Row {
        CategorySpec spec;
        int expected_checked;
    };
    const Row rows[] = {
        {examples::c2(), 15},
        {examples::x1(), 15},
        {examples::m3(), 40},
    };
    for (const Row& row : rows) {
        CAPTURE(row.spec.name);
        FinPermCat base = elaborate_permutative(row.spec);
        Report rep = check_comma_terminal(base, 3);
        CHECK(rep.clean());
        CHECK(find_section(rep, "comma_terminal")->checked == row.expected_checked);
        CHECK(find_section(rep, "comma_terminal")->skipped == 0);
    }
}

TEST_CASE("a terminal object must be unique to be found") {
    FinCat two_points;
    two_points.add_object("a");
    two_points.add_object("b");
    two_points.finalize();
    CHECK(find_terminal(two_points) == std::nullopt);

    FinCat one;
    one.add_object("a");
    one.finalize();
    CHECK(find_terminal(one) == std::optional<ObjId>(0));
}

TEST_CASE("tuple window over a Waldhausen view has the predicted size") {
    FinPermCat c2 = elaborate_permutative(examples::c2());
    {
        GammaWaldView v = gamma_as_wald(c2, 1);
        GammaOverWaldWindow w = enumerate_gamma_over_wald(v, 1);
        CHECK(w.tuples.size() == 4);        // 1 + 3 over the three view objects
        // by hand: one empty-to-empty, three each way touching the empty
        // tuple, and per singleton pair one blockless morphism plus one for
        // every weak equivalence (the three identities)
        CHECK(w.morphisms.size() == 19);
        CHECK(w.skipped_blocks == 0);
    }
    {
        GammaWaldView v = gamma_as_wald(c2, 2);
        GammaOverWaldWindow w = enumerate_gamma_over_wald(v, 2);
        CHECK(w.tuples.size() == 57);       // 1 + 7 + 49
        CHECK(w.morphisms.size() == 8647);
        CHECK(w.skipped_blocks == 1824);
    }
}

TEST_CASE("folded wedges and the counit on objects") {
    WaldPresentation pres = elaborate_wald(examples::pointed_sets());
    PresentationWaldView view(pres);
    const FinCat& cat = pres.cat;
    int p0 = *cat.object_by_name("p0");
    int p1 = *cat.object_by_name("p1");
    int p2 = *cat.object_by_name("p2");

    std::vector<int> pair = {p1, p1};
    std::optional<FoldedWedge> w = fold_wedge(view, pair);
    REQUIRE(w.has_value());
    CHECK(w->obj == p2);
    CHECK(w->legs.size() == 2);
    CHECK(cat.morphism_name(w->legs[0]) == "m12w1");
    CHECK(cat.morphism_name(w->legs[1]) == "m12w2");
    CHECK(counit_on_object(view, pair) == std::optional<int>(p2));

    std::vector<int> empty_tuple;
    CHECK(counit_on_object(view, empty_tuple) == std::optional<int>(p0));

    std::vector<int> too_big = {p2, p2};   // six non-base points do not fit
    CHECK_FALSE(fold_wedge(view, too_big).has_value());
}

TEST_CASE("triangle identities hold on both windows") {
    FinPermCat c2 = elaborate_permutative(examples::c2());
    GammaWaldView gview = gamma_as_wald(c2, 2);
    CHECK(check_triangle_identities(gview).clean());
    CHECK(check_triangle_identity_singletons(gview).clean());

    WaldPresentation pres = elaborate_wald(examples::pointed_sets());
    PresentationWaldView view(pres);
    CHECK(check_triangle_identity_singletons(view).clean());
}

TEST_CASE("the counit preserves the exact structure") {
    AxiomCheckOptions opt;
    WaldPresentation pres = elaborate_wald(examples::pointed_sets());
    PresentationWaldView view(pres);
    Report rep = check_counit_exact(view, 2, opt);
    CHECK(rep.clean());

    FinPermCat c2 = elaborate_permutative(examples::c2());
    GammaWaldView gview = gamma_as_wald(c2, 2);
    Report grep = check_counit_exact(gview, 2, opt);
    CHECK(grep.clean());
    CHECK(find_section(grep, "counit_pushouts") != nullptr);
}
