#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <vector>

#include "gammak/examples.hpp"
#include "gammak/fincat.hpp"
#include "gammak/spec_io.hpp"

using namespace gammak;

namespace {

FinPermCat load(const CategorySpec& spec) { return elaborate_permutative(spec); }

FinPermCat copy_tables(const FinPermCat& p, FinCat cat) {
    FinPermCat q(std::move(cat), p.unit());
    const int n = p.cat().num_objects();
    const int m = p.cat().num_morphisms();
    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) {
            if (p.tensor_obj_or_hole(a, b) != kNoObj)
                q.set_tensor_obj(a, b, p.tensor_obj_or_hole(a, b));
            if (p.symmetry_or_hole(a, b) != kNoMor)
                q.set_symmetry(a, b, p.symmetry_or_hole(a, b));
        }
    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g)
            if (p.tensor_mor_or_hole(f, g) != kNoMor)
                q.set_tensor_mor(f, g, p.tensor_mor_or_hole(f, g));
    return q;
}

std::int64_t all_findings(const FinPermCat& p) {
    return validate_category(p.cat()).total_findings() +
           validate_permutative(p).total_findings();
}

std::vector<std::vector<int>> permutations_of(int n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(sigma);
    while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

}  // namespace

TEST_CASE("hand-built walking arrow is a clean category") {
    FinCat cat;
    ObjId a = cat.add_object("a");
    ObjId b = cat.add_object("b");
    MorId f = cat.add_morphism("f", a, b);
    cat.finalize();

    CHECK(cat.num_objects() == 2);
    CHECK(cat.num_morphisms() == 3);
    CHECK(cat.is_identity(cat.identity(a)));
    CHECK_FALSE(cat.is_identity(f));
    CHECK(cat.compose(cat.identity(b), f) == f);
    CHECK(cat.compose(f, cat.identity(a)) == f);
    CHECK(cat.hom(a, b) == std::vector<MorId>{f});
    CHECK(cat.hom(b, a).empty());
    CHECK(validate_category(cat).clean());
}

TEST_CASE("composition holes and off-domain entries are reported") {
    FinCat cat;
    ObjId a = cat.add_object("a");
    ObjId b = cat.add_object("b");
    ObjId c = cat.add_object("c");
    MorId f = cat.add_morphism("f", a, b);
    MorId g = cat.add_morphism("g", b, c);
    cat.finalize();   // g.f never declared

    Report rep = validate_category(cat);
    CHECK_FALSE(rep.clean());
    bool hole = false;
    for (const Section& s : rep.sections)
        for (const Finding& x : s.findings) hole |= x.kind == "composition_hole";
    CHECK(hole);

    cat.set_compose(g, f, cat.identity(a));   // a -> a cannot be g.f : a -> c
    Report rep2 = validate_category(cat);
    bool typing = false;
    for (const Section& s : rep2.sections)
        for (const Finding& x : s.findings) typing |= x.kind == "composition_typing";
    CHECK(typing);

    cat.set_compose(f, g, f);                 // not composable in this order
    Report rep3 = validate_category(cat);
    bool off = false;
    for (const Section& s : rep3.sections)
        for (const Finding& x : s.findings) off |= x.kind == "composition_off_domain";
    CHECK(off);
}

TEST_CASE("associativity violations are reported") {
    FinCat cat;
    ObjId a = cat.add_object("a");
    ObjId b = cat.add_object("b");
    ObjId c = cat.add_object("c");
    ObjId d = cat.add_object("d");
    MorId f = cat.add_morphism("f", a, b);
    MorId g = cat.add_morphism("g", b, c);
    MorId h = cat.add_morphism("h", c, d);
    MorId gf = cat.add_morphism("gf", a, c);
    MorId hg = cat.add_morphism("hg", b, d);
    MorId p = cat.add_morphism("p", a, d);
    MorId q = cat.add_morphism("q", a, d);
    cat.set_compose(g, f, gf);
    cat.set_compose(h, g, hg);
    cat.set_compose(h, gf, p);
    cat.set_compose(hg, f, q);     // (h.g).f != h.(g.f)
    cat.finalize();

    Report rep = validate_category(cat);
    bool assoc = false;
    for (const Section& s : rep.sections)
        for (const Finding& x : s.findings) assoc |= x.kind == "associativity";
    CHECK(assoc);
}

TEST_CASE("corpus categories validate cleanly") {
    for (const CategorySpec& spec :
         {examples::c2(), examples::x1(), examples::m3()}) {
        CAPTURE(spec.name);
        FinPermCat p = load(spec);
        CHECK(validate_category(p.cat()).clean());
        CHECK(validate_permutative(p).clean());
    }
    FinCat ps = elaborate_category(examples::pointed_sets());
    CHECK(ps.num_morphisms() == 23);
    CHECK(validate_category(ps).clean());
}

TEST_CASE("every single-entry table mutation is detected") {
    for (const CategorySpec& spec :
         {examples::c2(), examples::x1(), examples::m3()}) {
        CAPTURE(spec.name);
        FinPermCat orig = load(spec);
        REQUIRE(all_findings(orig) == 0);
        const int n = orig.cat().num_objects();
        const int m = orig.cat().num_morphisms();

        for (MorId g = 0; g < m; ++g)
            for (MorId f = 0; f < m; ++f) {
                MorId cur = orig.cat().compose_or_hole(g, f);
                for (MorId alt = kNoMor; alt < m; ++alt) {
                    if (alt == cur) continue;
                    FinCat cat = orig.cat();
                    cat.set_compose(g, f, alt);
                    FinPermCat mut = copy_tables(orig, std::move(cat));
                    CAPTURE(g); CAPTURE(f); CAPTURE(alt);
                    CHECK(all_findings(mut) >= 1);
                }
            }

        for (ObjId a = 0; a < n; ++a)
            for (ObjId b = 0; b < n; ++b) {
                for (ObjId alt = kNoObj; alt < n; ++alt) {
                    if (alt == orig.tensor_obj_or_hole(a, b)) continue;
                    FinPermCat mut = orig;
                    mut.set_tensor_obj(a, b, alt);
                    CAPTURE(a); CAPTURE(b); CAPTURE(alt);
                    CHECK(all_findings(mut) >= 1);
                }
                for (MorId alt = kNoMor; alt < m; ++alt) {
                    if (alt == orig.symmetry_or_hole(a, b)) continue;
                    FinPermCat mut = orig;
                    mut.set_symmetry(a, b, alt);
                    CAPTURE(a); CAPTURE(b); CAPTURE(alt);
                    CHECK(all_findings(mut) >= 1);
                }
            }

        for (MorId f = 0; f < m; ++f)
            for (MorId g = 0; g < m; ++g)
                for (MorId alt = kNoMor; alt < m; ++alt) {
                    if (alt == orig.tensor_mor_or_hole(f, g)) continue;
                    FinPermCat mut = orig;
                    mut.set_tensor_mor(f, g, alt);
                    CAPTURE(f); CAPTURE(g); CAPTURE(alt);
                    CHECK(all_findings(mut) >= 1);
                }
    }
}

TEST_CASE("tensor folds") {
    FinPermCat p = load(examples::m3());
    const FinCat& cat = p.cat();
    ObjId e = *cat.object_by_name("e");
    ObjId g = *cat.object_by_name("g");
    ObjId h = *cat.object_by_name("h");

    CHECK(p.tensor_power(std::vector<ObjId>{}) == e);
    CHECK(p.tensor_power(std::vector<ObjId>{g}) == g);
    CHECK(p.tensor_power(std::vector<ObjId>{g, g}) == h);
    CHECK(p.tensor_power(std::vector<ObjId>{g, g, g}) == e);
    CHECK(p.tensor_mor_power(std::vector<MorId>{}) == cat.identity(e));
    CHECK(p.tensor_mor_power(std::vector<MorId>{cat.identity(g), cat.identity(h)}) ==
          cat.identity(e));
}

TEST_CASE("perm_iso: identity, inverses, and decomposition independence") {
    for (const CategorySpec& spec : {examples::c2(), examples::m3()}) {
        CAPTURE(spec.name);
        FinPermCat p = load(spec);
        const FinCat& cat = p.cat();
        const int n = cat.num_objects();

        std::vector<std::vector<ObjId>> seqs{{}};
        for (int len = 1; len <= 4; ++len) {
            std::vector<std::vector<ObjId>> next;
            for (const auto& s : seqs)
                if (static_cast<int>(s.size()) == len - 1)
                    for (ObjId a = 0; a < n; ++a) {
                        auto t = s;
                        t.push_back(a);
                        next.push_back(std::move(t));
                    }
            for (auto& s : next) seqs.push_back(std::move(s));
        }

        for (const auto& objs : seqs) {
            const int len = static_cast<int>(objs.size());
            const auto perms = permutations_of(len);
            for (const auto& sigma : perms) {
                MorId u = p.perm_iso(objs, sigma);
                if (std::is_sorted(sigma.begin(), sigma.end()))
                    CHECK(u == cat.identity(p.tensor_power(objs)));

                // two-sided inverse along the inverse permutation
                std::vector<ObjId> moved(len);
                for (int i = 0; i < len; ++i) moved[sigma[i]] = objs[i];
                MorId back = p.perm_iso(moved, invert_permutation(sigma));
                CHECK(cat.compose(back, u) == cat.identity(p.tensor_power(objs)));

                // composite permutations agree with composed isomorphisms
                for (const auto& tau : perms) {
                    MorId second = p.perm_iso(moved, tau);
                    MorId direct = p.perm_iso(objs, compose_permutations(tau, sigma));
                    CHECK(cat.compose(second, u) == direct);
                }
            }
        }
    }
}

TEST_CASE("iso detection in the pointed-map category") {
    FinCat cat = elaborate_category(examples::pointed_sets());
    MorId swap = *cat.morphism_by_name("m22w21");
    CHECK(is_iso(cat, swap));
    CHECK(inverse_of(cat, swap) == swap);   // involution
    MorId collapse = *cat.morphism_by_name("m01w");
    CHECK_FALSE(is_iso(cat, collapse));
    CHECK_FALSE(inverse_of(cat, collapse).has_value());
}

TEST_CASE("mediating search finds the unique comparison map") {
    FinCat cat = elaborate_category(examples::pointed_sets());
    ObjId p1 = *cat.object_by_name("p1");
    ObjId p2 = *cat.object_by_name("p2");
    MorId in1 = *cat.morphism_by_name("m12w1");
    MorId in2 = *cat.morphism_by_name("m12w2");
    MorId swap = *cat.morphism_by_name("m22w21");

    // same legs: only the identity mediates
    TriangleConstraint same[] = {{in1, in1}, {in2, in2}};
    MediatingResult r = mediating_morphism(cat, p2, p2, same);
    CHECK(r.outcome == MediatingOutcome::Found);
    CHECK(r.mor == cat.identity(p2));

    // swapped legs: the mediating map is the transposition
    TriangleConstraint crossed[] = {{in1, in2}, {in2, in1}};
    r = mediating_morphism(cat, p2, p2, crossed);
    CHECK(r.outcome == MediatingOutcome::Found);
    CHECK(r.mor == swap);

    // under-constrained: one leg leaves the second point free
    MorId zero11 = *cat.morphism_by_name("m11w0");   // p1 -> p1 through the basepoint
    TriangleConstraint loose[] = {{in1, zero11}};
    r = mediating_morphism(cat, p2, p1, loose);
    CHECK(r.outcome == MediatingOutcome::NotUnique);
    CHECK(r.candidates == 2);   // the free point of p2 can land on 0 or 1
}

TEST_CASE("permutation helpers") {
    std::vector<int> sigma{2, 0, 1};
    CHECK(is_permutation(sigma));
    CHECK_FALSE(is_permutation(std::vector<int>{0, 0, 2}));
    auto inv = invert_permutation(sigma);
    CHECK(compose_permutations(inv, sigma) == std::vector<int>({0, 1, 2}));
    CHECK(sorting_permutation(std::vector<int>{30, 10, 20}) ==
          std::vector<int>({2, 0, 1}));
}
