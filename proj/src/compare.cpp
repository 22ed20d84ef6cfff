#include "gammak/compare.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "gammak/ktheory.hpp"

namespace gammak {

namespace {

/* All tuples over {0..n-1} of length <= max_len, shortest first, then
 * lexicographic — the same order the truncated tuple windows use. */
std::vector<std::vector<int>> all_tuples(int n, int max_len) {
    std::vector<std::vector<int>> out;
    out.push_back({});
    for (int len = 1; len <= max_len; ++len) {
        if (n == 0) break;
        std::vector<int> idx(len, 0);
        while (true) {
            out.push_back(idx);
            int k = len - 1;
            while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
            if (k < 0) break;
        }
    }
    return out;
}

std::optional<int> view_inverse(const WaldView& v, int m) {
    const int s = v.mor_src(m), t = v.mor_tgt(m);
    for (int g : v.hom_ids(t, s))
        if (v.compose(g, m) == std::optional<int>(v.identity(s)) &&
            v.compose(m, g) == std::optional<int>(v.identity(t)))
            return g;
    return std::nullopt;
}

}  // namespace

/* ---------------- the added-unit category ---------------- */

MorId PlusCat::mor_to_plus(MorId base_mor) const {
    return base_mor < star ? base_mor : base_mor + 1;
}

MorId PlusCat::mor_to_base(MorId plus_mor) const {
    if (plus_mor == star_id)
        throw std::logic_error("identity of the added object has no preimage");
    return plus_mor < star ? plus_mor : plus_mor - 1;
}

PlusCat plus_category(const FinPermCat& base) {
    const FinCat& bc = base.cat();
    const int n = bc.num_objects();

    FinCat cat;
    for (ObjId a = 0; a < n; ++a) cat.add_object(bc.object_name(a));
    const ObjId star = cat.add_object("*");
    for (MorId f = n; f < bc.num_morphisms(); ++f)
        cat.add_morphism(bc.morphism_name(f), bc.src(f), bc.tgt(f));

    auto to_plus = [&](MorId f) { return f < n ? f : f + 1; };
    for (MorId g = 0; g < bc.num_morphisms(); ++g)
        for (MorId f = 0; f < bc.num_morphisms(); ++f) {
            if (!bc.composable(g, f)) continue;
            MorId h = bc.compose_or_hole(g, f);
            if (h == kNoMor) continue;
            cat.set_compose(to_plus(g), to_plus(f), to_plus(h));
        }
    cat.finalize();

    FinPermCat pc(std::move(cat), star);
    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) {
            ObjId ab = base.tensor_obj_or_hole(a, b);
            if (ab != kNoObj) pc.set_tensor_obj(a, b, ab);
            MorId beta = base.symmetry_or_hole(a, b);
            if (beta != kNoMor) pc.set_symmetry(a, b, to_plus(beta));
        }
    for (MorId f = 0; f < bc.num_morphisms(); ++f)
        for (MorId g = 0; g < bc.num_morphisms(); ++g) {
            MorId fg = base.tensor_mor_or_hole(f, g);
            if (fg != kNoMor) pc.set_tensor_mor(to_plus(f), to_plus(g), to_plus(fg));
        }
    pc.derive_forced_rows();  // the star rows: it acts as the strict unit

    PlusCat plus;
    plus.pcat = std::move(pc);
    plus.star = star;
    plus.star_id = star;  // identities coincide with object ids
    return plus;
}

GammaObj s_on_object(const PlusCat& plus, ObjId x) {
    if (x == plus.star) return gamma_zero();
    return GammaObj{{x}};
}

GammaMor s_on_morphism(const FinPermCat& base, const PlusCat& plus, MorId u) {
    if (u == plus.star_id) return gamma_identity(base, gamma_zero());
    MorId f = plus.mor_to_base(u);
    GammaMor m;
    m.src = GammaObj{{base.cat().src(f)}};
    m.tgt = GammaObj{{base.cat().tgt(f)}};
    m.phi.blocks = {{0}};
    m.phi.target_arity = 1;
    m.components = {f};
    return m;
}

/* ---------------- oplax structure maps ---------------- */

GammaMor oplax_structure_map(const FinPermCat& base, std::span<const ObjId> objs) {
    if (objs.empty())
        throw std::logic_error("structure map needs a nonempty object sequence");
    const ObjId t = base.tensor_power(objs);
    GammaMor m;
    m.src = GammaObj{{t}};
    m.tgt.entries.assign(objs.begin(), objs.end());
    std::vector<int> blk(objs.size());
    std::iota(blk.begin(), blk.end(), 0);
    m.phi.blocks = {std::move(blk)};
    m.phi.target_arity = static_cast<int>(objs.size());
    m.components = {base.cat().identity(t)};
    return m;
}

Report check_oplax_coherence(const FinPermCat& base, int max_len, std::int64_t budget) {
    Report rep;
    rep.command = "check_oplax_coherence";
    rep.max_len = max_len;
    rep.budget = budget;
    const FinCat& bc = base.cat();
    std::int64_t left = budget;

    Section& nat = rep.section("structure_naturality");
    auto tuples = all_tuples(bc.num_objects(), max_len);
    for (const auto& tup : tuples) {
        const int p = static_cast<int>(tup.size());
        if (p == 0) continue;
        std::vector<ObjId> objs(tup.begin(), tup.end());
        GammaMor mu_src = oplax_structure_map(base, objs);
        // one base morphism per position, odometer over the choices
        std::vector<const std::vector<MorId>*> from(p);
        bool possible = true;
        for (int i = 0; i < p; ++i) {
            from[i] = &bc.morphisms_from(objs[i]);
            if (from[i]->empty()) possible = false;
        }
        if (!possible) continue;  // identities always exist, so never taken
        std::vector<int> pick(p, 0);
        bool done = false;
        while (!done) {
            if (left-- <= 0) {
                nat.skip();
                done = true;
                break;
            }
            std::vector<MorId> fs(p);
            std::vector<ObjId> tgts(p);
            for (int i = 0; i < p; ++i) {
                fs[i] = (*from[i])[pick[i]];
                tgts[i] = bc.tgt(fs[i]);
            }
            GammaMor mu_tgt = oplax_structure_map(base, tgts);
            GammaMor diag;
            diag.src = mu_src.tgt;
            diag.tgt = mu_tgt.tgt;
            diag.phi.target_arity = p;
            for (int i = 0; i < p; ++i) diag.phi.blocks.push_back({i});
            diag.components = fs;
            GammaMor wrap;
            wrap.src = mu_src.src;
            wrap.tgt = mu_tgt.src;
            wrap.phi.blocks = {{0}};
            wrap.phi.target_arity = 1;
            wrap.components = {base.tensor_mor_power(fs)};
            GammaMor lhs = gamma_compose_strict(base, diag, mu_src);
            GammaMor rhs = gamma_compose_strict(base, mu_tgt, wrap);
            if (!(lhs == rhs))
                nat.fail("structure_naturality", describe(base, mu_src.src),
                         "square for " + describe(base, diag) + " does not commute");
            else
                nat.pass();
            int k = p - 1;
            while (k >= 0 && ++pick[k] == static_cast<int>(from[k]->size())) pick[k--] = 0;
            if (k < 0) done = true;
        }
    }

    Section& nest = rep.section("structure_nesting");
    for (const auto& tup : tuples) {
        const int p = static_cast<int>(tup.size());
        if (p == 0) continue;
        std::vector<ObjId> objs(tup.begin(), tup.end());
        GammaMor one_step = oplax_structure_map(base, objs);
        for (int mask = 0; mask < (1 << (p - 1)); ++mask) {
            if (left-- <= 0) {
                nest.skip();
                continue;
            }
            // cut after position i when bit i is set
            std::vector<std::pair<int, int>> parts;  // [begin, end)
            int begin = 0;
            for (int i = 0; i + 1 < p; ++i)
                if (mask & (1 << i)) {
                    parts.emplace_back(begin, i + 1);
                    begin = i + 1;
                }
            parts.emplace_back(begin, p);
            std::vector<ObjId> part_tensors;
            for (auto [s, e] : parts)
                part_tensors.push_back(
                    base.tensor_power(std::span<const ObjId>(objs.data() + s, e - s)));
            GammaMor outer = oplax_structure_map(base, part_tensors);
            GammaMor inner;
            inner.src = outer.tgt;
            inner.tgt = one_step.tgt;
            inner.phi.target_arity = p;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                std::vector<int> blk;
                for (int t = parts[j].first; t < parts[j].second; ++t) blk.push_back(t);
                inner.phi.blocks.push_back(std::move(blk));
                inner.components.push_back(bc.identity(part_tensors[j]));
            }
            GammaMor two_step = gamma_compose_strict(base, inner, outer);
            if (!(two_step == one_step))
                nest.fail("structure_nesting", describe(base, one_step.src),
                          "split at mask " + std::to_string(mask) +
                              " disagrees with the one-step map");
            else
                nest.pass();
        }
    }
    return rep;
}

/* ---------------- comma categories over tuples ---------------- */

CommaCategory comma_over(const FinPermCat& base, const PlusCat& plus, const GammaObj& a) {
    const FinCat& bc = base.cat();
    CommaCategory comma;
    const int arity = a.arity();

    if (arity == 0) {
        comma.cat.add_object("*|()");
        comma.plus_object.push_back(plus.star);
        comma.component.push_back(kNoMor);
        comma.designated = 0;
        comma.cat.finalize();
        return comma;
    }

    const ObjId t = base.tensor_power(a.entries);
    for (ObjId c = 0; c < bc.num_objects(); ++c)
        for (MorId f : bc.hom(c, t)) {
            comma.cat.add_object(bc.object_name(c) + "|" + bc.morphism_name(f));
            comma.plus_object.push_back(c);
            comma.component.push_back(f);
            if (c == t && f == bc.identity(t))
                comma.designated = comma.cat.num_objects() - 1;
        }

    const int N = comma.cat.num_objects();
    std::map<std::tuple<int, int, MorId>, MorId> lookup;
    for (int i = 0; i < N; ++i)
        lookup[{i, i, bc.identity(comma.plus_object[i])}] = comma.cat.identity(i);

    struct Arrow {
        int src, tgt;
        MorId u;
    };
    std::vector<Arrow> arrows;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (MorId u : bc.hom(comma.plus_object[i], comma.plus_object[j])) {
                if (bc.is_identity(u) && i == j) continue;
                if (bc.compose(comma.component[j], u) != comma.component[i]) continue;
                MorId id = comma.cat.add_morphism(bc.morphism_name(u) + "|" +
                                                      std::to_string(i) + ">" +
                                                      std::to_string(j),
                                                  i, j);
                lookup[{i, j, u}] = id;
                arrows.push_back({i, j, u});
            }

    const int first = N;  // non-identity comma morphisms start here
    for (std::size_t q = 0; q < arrows.size(); ++q)
        for (std::size_t p = 0; p < arrows.size(); ++p) {
            if (arrows[p].tgt != arrows[q].src) continue;
            MorId w = bc.compose(arrows[q].u, arrows[p].u);
            auto it = lookup.find({arrows[p].src, arrows[q].tgt, w});
            if (it == lookup.end())
                throw std::logic_error("comma composition left the comma category");
            comma.cat.set_compose(first + static_cast<int>(q),
                                  first + static_cast<int>(p), it->second);
        }
    comma.cat.finalize();
    return comma;
}

std::optional<ObjId> find_terminal(const FinCat& cat) {
    std::optional<ObjId> found;
    for (ObjId t = 0; t < cat.num_objects(); ++t) {
        bool ok = true;
        for (ObjId x = 0; x < cat.num_objects() && ok; ++x)
            if (cat.hom(x, t).size() != 1) ok = false;
        if (!ok) continue;
        if (found) return std::nullopt;
        found = t;
    }
    return found;
}

Report check_comma_terminal(const FinPermCat& base, int max_len) {
    Report rep;
    rep.command = "check_comma_terminal";
    rep.max_len = max_len;
    PlusCat plus = plus_category(base);
    Section& sec = rep.section("comma_terminal");
    for (const auto& tup : all_tuples(base.cat().num_objects(), max_len)) {
        GammaObj a{std::vector<ObjId>(tup.begin(), tup.end())};
        CommaCategory comma = comma_over(base, plus, a);
        Report valid = validate_category(comma.cat);
        if (!valid.clean()) {
            sec.fail("comma_category", describe(base, a),
                     "comma category tables are inconsistent");
            continue;
        }
        auto t = find_terminal(comma.cat);
        if (!t)
            sec.fail("comma_no_terminal", describe(base, a),
                     std::to_string(comma.cat.num_objects()) +
                         " objects, no unique terminal");
        else if (*t != comma.designated)
            sec.fail("comma_wrong_terminal", describe(base, a),
                     "terminal is " + comma.cat.object_name(*t) + ", designated is " +
                         comma.cat.object_name(comma.designated));
        else
            sec.pass();
    }
    return rep;
}

/* ---------------- the counit over a Waldhausen window ---------------- */

std::optional<FoldedWedge> fold_wedge(const WaldView& view, std::span<const int> tuple) {
    FoldedWedge acc;
    acc.obj = view.zero_object();
    for (int t : tuple) {
        auto w = view.wedge(acc.obj, t);
        if (!w) return std::nullopt;
        for (int& leg : acc.legs) {
            auto c = view.compose(w->inl, leg);
            if (!c) throw std::logic_error("wedge leg does not compose");
            leg = *c;
        }
        acc.legs.push_back(w->inr);
        acc.obj = w->obj;
    }
    return acc;
}

std::optional<int> counit_on_object(const WaldView& view, std::span<const int> tuple) {
    auto f = fold_wedge(view, tuple);
    if (!f) return std::nullopt;
    return f->obj;
}

namespace {

/* Unique u : src -> tgt with u . legs[k] == required[k]; -1 when not unique
 * or missing (count reported through the out-parameter). */
std::optional<int> unique_for_legs(const WaldView& view, int src, int tgt,
                                   const std::vector<int>& legs,
                                   const std::vector<int>& required, int& count) {
    count = 0;
    int found = -1;
    for (int u : view.hom_ids(src, tgt)) {
        bool ok = true;
        for (std::size_t k = 0; k < legs.size() && ok; ++k)
            if (view.compose(u, legs[k]) != std::optional<int>(required[k])) ok = false;
        if (ok) {
            ++count;
            found = u;
        }
    }
    return count == 1 ? std::optional<int>(found) : std::nullopt;
}

}  // namespace

std::optional<int> counit_on_morphism(const WaldView& view, const GammaOverWald& m,
                                      Section& sec) {
    auto S = fold_wedge(view, m.src);
    auto T = fold_wedge(view, m.tgt);
    if (!S || !T) return std::nullopt;

    const int a = static_cast<int>(m.src.size());
    std::vector<int> gs(a, -1);
    for (int i = 0; i < a; ++i) {
        const auto& blk = m.phi.blocks[i];
        if (blk.empty()) {
            const int z = view.zero_object();
            const auto& down = view.hom_ids(m.src[i], z);
            const auto& up = view.hom_ids(z, T->obj);
            if (down.size() != 1 || up.size() != 1) {
                sec.fail("counit_zero_factor", view.object_label(m.src[i]),
                         "zero object is not strict in the carrier");
                return std::nullopt;
            }
            auto g = view.compose(up[0], down[0]);
            if (!g) {
                sec.fail("counit_zero_factor", view.object_label(m.src[i]),
                         "factoring through zero does not compose");
                return std::nullopt;
            }
            gs[i] = *g;
            continue;
        }
        std::vector<int> sub, want;
        for (int j : blk) sub.push_back(m.tgt[j]);
        auto W = fold_wedge(view, sub);
        if (!W) return std::nullopt;
        for (int j : blk) want.push_back(T->legs[j]);
        int count = 0;
        auto h = unique_for_legs(view, W->obj, T->obj, W->legs, want, count);
        if (!h) {
            sec.fail("counit_block_fold", view.object_label(W->obj),
                     std::to_string(count) + " maps match the block legs");
            return std::nullopt;
        }
        auto g = view.compose(*h, m.components[i]);
        if (!g) {
            sec.fail("counit_component", view.morphism_label(m.components[i]),
                     "component does not compose with the block fold");
            return std::nullopt;
        }
        gs[i] = *g;
    }

    int count = 0;
    auto F = unique_for_legs(view, S->obj, T->obj, S->legs, gs, count);
    if (!F) {
        sec.fail("counit_mediating",
                 view.object_label(S->obj) + " -> " + view.object_label(T->obj),
                 std::to_string(count) + " maps match the source legs");
        return std::nullopt;
    }
    sec.pass();
    return F;
}

GammaOverWaldWindow enumerate_gamma_over_wald(const WaldView& view, int max_len,
                                              std::int64_t max_morphisms) {
    GammaOverWaldWindow out;
    out.tuples = all_tuples(view.object_count(), max_len);
    std::int64_t total = 0;

    struct Option {
        std::vector<int> block;
        int comp;
    };
    for (const auto& src : out.tuples)
        for (const auto& tgt : out.tuples) {
            const int a = static_cast<int>(src.size());
            const int b = static_cast<int>(tgt.size());
            std::vector<std::optional<FoldedWedge>> fold(std::size_t(1) << b);
            std::vector<std::vector<int>> mask_block(std::size_t(1) << b);
            for (int mask = 1; mask < (1 << b); ++mask) {
                std::vector<int> sub, blk;
                for (int j = 0; j < b; ++j)
                    if (mask & (1 << j)) {
                        sub.push_back(tgt[j]);
                        blk.push_back(j);
                    }
                fold[mask] = fold_wedge(view, sub);
                if (!fold[mask]) ++out.skipped_blocks;
                mask_block[mask] = std::move(blk);
            }
            std::vector<std::vector<Option>> options(a);
            for (int i = 0; i < a; ++i) {
                options[i].push_back({{}, -1});
                for (int mask = 1; mask < (1 << b); ++mask) {
                    if (!fold[mask]) continue;
                    for (int w : view.hom_ids(src[i], fold[mask]->obj))
                        if (view.is_weak_equivalence(w))
                            options[i].push_back({mask_block[mask], w});
                }
            }
            std::vector<int> pick(a, 0);
            while (true) {
                GammaOverWald m;
                m.src = src;
                m.tgt = tgt;
                m.phi.target_arity = b;
                for (int i = 0; i < a; ++i) {
                    const Option& o = options[i][pick[i]];
                    m.phi.blocks.push_back(o.block);
                    m.components.push_back(o.comp);
                }
                out.morphisms.push_back(std::move(m));
                if (++total > max_morphisms)
                    throw BudgetExceeded("tuple-over-window morphism budget exceeded");
                int k = a - 1;
                while (k >= 0 && ++pick[k] == static_cast<int>(options[k].size()))
                    pick[k--] = 0;
                if (k < 0) break;
            }
        }
    return out;
}

/* ---------------- triangle identities ---------------- */

Report check_triangle_identities(const GammaWaldView& gview, std::int64_t budget) {
    Report rep;
    rep.command = "check_triangle_identities";
    rep.budget = budget;
    std::int64_t left = budget;

    std::vector<int> sing(gview.base().cat().num_objects(), -1);
    for (ObjId c = 0; c < gview.base().cat().num_objects(); ++c)
        sing[c] = gview.view().object_index(GammaObj{{c}});

    Section& tob = rep.section("triangle_objects");
    for (int A = 0; A < gview.object_count(); ++A) {
        if (left-- <= 0) {
            tob.skip();
            continue;
        }
        std::vector<int> tuple;
        for (ObjId c : gview.obj(A).entries) tuple.push_back(sing[c]);
        auto img = counit_on_object(gview, tuple);
        if (img != std::optional<int>(A))
            tob.fail("triangle_object", gview.object_label(A),
                     "counit of the singleton expansion is not the object itself");
        else
            tob.pass();
    }

    Section& tmor = rep.section("triangle_morphisms");
    for (int m = 0; m < gview.morphism_count(); ++m) {
        if (left-- <= 0) {
            tmor.skip();
            continue;
        }
        const GammaMor& gm = gview.mor(m);
        GammaOverWald M;
        for (ObjId c : gm.src.entries) M.src.push_back(sing[c]);
        for (ObjId c : gm.tgt.entries) M.tgt.push_back(sing[c]);
        M.phi = gm.phi;
        bool wrapped_ok = true;
        for (std::size_t i = 0; i < gm.phi.blocks.size(); ++i) {
            const auto& blk = gm.phi.blocks[i];
            if (blk.empty()) {
                M.components.push_back(-1);
                continue;
            }
            GammaMor wrap;
            wrap.src = GammaObj{{gm.src.entries[i]}};
            for (int j : blk) wrap.tgt.entries.push_back(gm.tgt.entries[j]);
            wrap.phi.target_arity = static_cast<int>(blk.size());
            std::vector<int> full(blk.size());
            std::iota(full.begin(), full.end(), 0);
            wrap.phi.blocks = {std::move(full)};
            wrap.components = {gm.components[i]};
            int h = gview.view().morphism_index(wrap);
            if (h < 0) {
                wrapped_ok = false;
                break;
            }
            M.components.push_back(h);
        }
        if (!wrapped_ok) {
            tmor.skip();
            continue;
        }
        Section scratch{"scratch"};
        auto img = counit_on_morphism(gview, M, scratch);
        for (const Finding& f : scratch.findings) tmor.fail(f.kind, f.instance, f.witness);
        if (!img) {
            if (scratch.findings.empty()) tmor.skip();
            continue;
        }
        if (*img != m)
            tmor.fail("triangle_morphism", gview.morphism_label(m),
                      "counit returns " + gview.morphism_label(*img));
        else
            tmor.pass();
    }
    return rep;
}

Report check_triangle_identity_singletons(const WaldView& view) {
    Report rep;
    rep.command = "check_triangle_identity_singletons";
    Section& sob = rep.section("singleton_objects");
    for (int v = 0; v < view.object_count(); ++v) {
        std::vector<int> tuple{v};
        auto img = counit_on_object(view, tuple);
        if (!img) {
            sob.skip();
            continue;
        }
        if (*img != v)
            sob.fail("singleton_object", view.object_label(v),
                     "counit of the singleton is " + view.object_label(*img));
        else
            sob.pass();
    }
    Section& smor = rep.section("singleton_morphisms");
    for (int w = 0; w < view.morphism_count(); ++w) {
        if (!view.is_weak_equivalence(w)) continue;
        GammaOverWald M;
        M.src = {view.mor_src(w)};
        M.tgt = {view.mor_tgt(w)};
        M.phi.blocks = {{0}};
        M.phi.target_arity = 1;
        M.components = {w};
        Section scratch{"scratch"};
        auto img = counit_on_morphism(view, M, scratch);
        for (const Finding& f : scratch.findings) smor.fail(f.kind, f.instance, f.witness);
        if (!img) {
            if (scratch.findings.empty()) smor.skip();
            continue;
        }
        if (*img != w)
            smor.fail("singleton_morphism", view.morphism_label(w),
                      "counit returns " + view.morphism_label(*img));
        else
            smor.pass();
    }
    return rep;
}

/* ---------------- exactness of the counit ---------------- */

namespace {

bool carrier_we(const GammaOverWald& m) {
    const int b = m.phi.target_arity;
    std::vector<int> hits(b, 0);
    for (const auto& blk : m.phi.blocks) {
        if (blk.empty()) return false;
        for (int j : blk) ++hits[j];
    }
    for (int h : hits)
        if (h != 1) return false;
    return true;
}

bool carrier_cof(const WaldView& view, const GammaOverWald& m) {
    std::vector<int> seen;
    for (const auto& blk : m.phi.blocks) {
        if (blk.size() != 1) return false;
        seen.push_back(blk[0]);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    for (int w : m.components) {
        auto inv = view_inverse(view, w);
        if (!inv || !view.is_weak_equivalence(*inv)) return false;
    }
    return true;
}

struct CarrierPushout {
    std::vector<int> apex;
    GammaOverWald into_c, into_b;
};

std::optional<CarrierPushout> carrier_pushout(const WaldView& view,
                                              const GammaOverWald& cof,
                                              const GammaOverWald& n) {
    const int b = cof.phi.target_arity;
    const int c = n.phi.target_arity;
    std::vector<int> phi_of(b, -1);
    for (std::size_t i = 0; i < cof.phi.blocks.size(); ++i)
        phi_of[cof.phi.blocks[i][0]] = static_cast<int>(i);

    CarrierPushout out;
    out.apex = n.tgt;
    std::vector<int> missed_rank(b, -1);
    for (int j = 0; j < b; ++j)
        if (phi_of[j] < 0) {
            missed_rank[j] = static_cast<int>(out.apex.size());
            out.apex.push_back(cof.tgt[j]);
        }

    out.into_c.src = n.tgt;
    out.into_c.tgt = out.apex;
    out.into_c.phi.target_arity = static_cast<int>(out.apex.size());
    for (int j = 0; j < c; ++j) {
        out.into_c.phi.blocks.push_back({j});
        out.into_c.components.push_back(view.identity(n.tgt[j]));
    }

    out.into_b.src = cof.tgt;
    out.into_b.tgt = out.apex;
    out.into_b.phi.target_arity = static_cast<int>(out.apex.size());
    for (int j = 0; j < b; ++j) {
        const int i = phi_of[j];
        if (i < 0) {
            out.into_b.phi.blocks.push_back({missed_rank[j]});
            out.into_b.components.push_back(view.identity(cof.tgt[j]));
            continue;
        }
        out.into_b.phi.blocks.push_back(n.phi.blocks[i]);
        if (n.phi.blocks[i].empty()) {
            out.into_b.components.push_back(-1);
            continue;
        }
        auto inv = view_inverse(view, cof.components[i]);
        if (!inv) return std::nullopt;
        auto k = view.compose(n.components[i], *inv);
        if (!k) return std::nullopt;
        out.into_b.components.push_back(*k);
    }
    return out;
}

}  // namespace

Report check_counit_exact(const WaldView& view, int max_len,
                          const AxiomCheckOptions& opt) {
    Report rep;
    rep.command = "check_counit_exact";
    rep.max_len = max_len;
    rep.budget = opt.budget;
    rep.seed = opt.seed;
    std::int64_t left = opt.budget;

    GammaOverWaldWindow window = enumerate_gamma_over_wald(view, max_len);
    rep.section("window").pass(static_cast<int>(window.morphisms.size()));
    if (window.skipped_blocks > 0)
        rep.section("window").skip(static_cast<int>(window.skipped_blocks));

    Section& zsec = rep.section("counit_zero");
    {
        std::vector<int> empty;
        auto img = counit_on_object(view, empty);
        if (img != std::optional<int>(view.zero_object()))
            zsec.fail("counit_zero", "()", "empty tuple does not land on the zero object");
        else
            zsec.pass();
    }

    Section& wsec = rep.section("counit_weak_equivalences");
    Section& csec = rep.section("counit_cofibrations");
    std::vector<int> cof_handles;  // indices into window.morphisms
    for (std::size_t mi = 0; mi < window.morphisms.size(); ++mi) {
        const GammaOverWald& m = window.morphisms[mi];
        const bool we = carrier_we(m);
        const bool cof = carrier_cof(view, m);
        if (cof) cof_handles.push_back(static_cast<int>(mi));
        if (!we && !cof) continue;
        if (left-- <= 0) {
            (we ? wsec : csec).skip();
            continue;
        }
        Section scratch{"scratch"};
        auto img = counit_on_morphism(view, m, scratch);
        if (we) {
            for (const Finding& f : scratch.findings)
                wsec.fail(f.kind, f.instance, f.witness);
            if (!img) {
                if (scratch.findings.empty()) wsec.skip();
            } else if (!view.is_weak_equivalence(*img))
                wsec.fail("counit_we", view.morphism_label(*img),
                          "image of a levelwise weak equivalence is not one");
            else
                wsec.pass();
        }
        if (cof) {
            for (const Finding& f : scratch.findings)
                csec.fail(f.kind, f.instance, f.witness);
            if (!img) {
                if (scratch.findings.empty()) csec.skip();
            } else if (!view.is_cofibration(*img))
                csec.fail("counit_cof", view.morphism_label(*img),
                          "image of a levelwise cofibration is not one");
            else
                csec.pass();
        }
    }

    Section& psec = rep.section("counit_pushouts");
    auto run_pushouts = [&]() {
        for (int ci : cof_handles) {
            const GammaOverWald& cof = window.morphisms[ci];
            for (const GammaOverWald& n : window.morphisms) {
                if (n.src != cof.src) continue;
                if (left-- <= 0) {
                    psec.skip();
                    return;
                }
                auto po = carrier_pushout(view, cof, n);
                if (!po) {
                    psec.skip();
                    continue;
                }
                Section scratch{"scratch"};
                auto e_cof = counit_on_morphism(view, cof, scratch);
                auto e_n = counit_on_morphism(view, n, scratch);
                auto e_ib = counit_on_morphism(view, po->into_b, scratch);
                auto e_ic = counit_on_morphism(view, po->into_c, scratch);
                if (!e_cof || !e_n || !e_ib || !e_ic) {
                    for (const Finding& f : scratch.findings)
                        psec.fail(f.kind, f.instance, f.witness);
                    if (scratch.findings.empty()) psec.skip();
                    continue;
                }
                auto lhs = view.compose(*e_ib, *e_cof);
                auto rhs = view.compose(*e_ic, *e_n);
                if (!lhs || !rhs || *lhs != *rhs) {
                    psec.fail("counit_pushout_commutes", view.morphism_label(*e_cof),
                              "image square does not commute");
                    continue;
                }
                // universal property of the image square inside the view
                const int B = view.mor_tgt(*e_cof);
                const int C = view.mor_tgt(*e_n);
                const int P = view.mor_tgt(*e_ib);
                bool ok = true;
                for (int F = 0; F < view.object_count() && ok; ++F)
                    for (int fb : view.hom_ids(B, F)) {
                        for (int fc : view.hom_ids(C, F)) {
                            if (left-- <= 0) {
                                psec.skip();
                                return;
                            }
                            auto lb = view.compose(fb, *e_cof);
                            auto lc = view.compose(fc, *e_n);
                            if (!lb || !lc || *lb != *lc) continue;
                            int found = 0;
                            for (int u : view.hom_ids(P, F))
                                if (view.compose(u, *e_ib) == std::optional<int>(fb) &&
                                    view.compose(u, *e_ic) == std::optional<int>(fc))
                                    ++found;
                            if (found != 1) {
                                psec.fail("counit_pushout_universal",
                                          view.morphism_label(*e_cof),
                                          "cocone at " + view.object_label(F) +
                                              " admits " + std::to_string(found) +
                                              " mediating maps");
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) break;
                    }
                if (ok) psec.pass();
            }
        }
    };
    run_pushouts();
    return rep;
}

/* ---------------- the embedding ---------------- */

Report check_embedding_functorial(const FinPermCat& base) {
    Report rep;
    rep.command = "check_embedding_functorial";
    PlusCat plus = plus_category(base);

    Report structure = validate_permutative(plus.pcat);
    structure.command.clear();
    rep.merge(structure);

    const FinCat& pc = plus.pcat.cat();
    Section& ids = rep.section("embedding_identities");
    for (ObjId x = 0; x < pc.num_objects(); ++x) {
        GammaMor got = s_on_morphism(base, plus, pc.identity(x));
        GammaMor want = gamma_identity(base, s_on_object(plus, x));
        if (!(got == want))
            ids.fail("embedding_identity", pc.object_name(x),
                     "image of the identity is not the identity");
        else
            ids.pass();
    }

    Section& comp = rep.section("embedding_composition");
    for (MorId g = 0; g < pc.num_morphisms(); ++g)
        for (MorId f = 0; f < pc.num_morphisms(); ++f) {
            if (!pc.composable(g, f)) continue;
            GammaMor lhs = s_on_morphism(base, plus, pc.compose(g, f));
            ComposeResult r = gamma_compose(base, s_on_morphism(base, plus, g),
                                            s_on_morphism(base, plus, f));
            if (!compose_defined(r)) {
                comp.fail("embedding_composition",
                          pc.morphism_name(g) + " . " + pc.morphism_name(f),
                          "image composite is undefined");
                continue;
            }
            if (!(*composed(r) == lhs))
                comp.fail("embedding_composition",
                          pc.morphism_name(g) + " . " + pc.morphism_name(f),
                          "images compose to a different morphism");
            else
                comp.pass();
        }

    Section& lands = rep.section("embedding_lands_in_we");
    for (MorId u = 0; u < pc.num_morphisms(); ++u) {
        if (!is_weak_equivalence(s_on_morphism(base, plus, u)))
            lands.fail("embedding_we", pc.morphism_name(u),
                       "image is not a weak equivalence");
        else
            lands.pass();
    }

    Section& k0 = rep.section("k0_added_unit");
    AbGroupInvariants before = k0_segal(base, nullptr);
    AbGroupInvariants after = k0_segal(plus.pcat, nullptr);
    if (!(before == after))
        k0.fail("k0_added_unit", "K0",
                before.describe() + " changed to " + after.describe());
    else
        k0.pass();

    return rep;
}

}  // namespace gammak
