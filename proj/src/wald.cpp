#include "gammak/wald.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace gammak {

/* ---------------- GammaWaldView ---------------- */

GammaWaldView::GammaWaldView(const FinPermCat& base, TruncatedGammaView view)
    : base_(&base), view_(std::move(view)) {
    const int M = static_cast<int>(view_.morphisms.size());
    mor_src_.resize(M);
    mor_tgt_.resize(M);
    cof_.resize(M);
    we_.resize(M);
    for (int m = 0; m < M; ++m) {
        const GammaMor& gm = view_.morphisms[m];
        mor_src_[m] = view_.object_index(gm.src);
        mor_tgt_[m] = view_.object_index(gm.tgt);
        cof_[m] = gammak::is_cofibration(*base_, gm);
        we_[m] = gammak::is_weak_equivalence(gm);
    }
    identities_.resize(view_.objects.size());
    for (std::size_t a = 0; a < view_.objects.size(); ++a) {
        int id = view_.morphism_index(gamma_identity(*base_, view_.objects[a]));
        if (id < 0) throw std::logic_error("identity missing from enumerated window");
        identities_[a] = id;
    }
}

int GammaWaldView::object_count() const { return static_cast<int>(view_.objects.size()); }
int GammaWaldView::morphism_count() const { return static_cast<int>(view_.morphisms.size()); }
int GammaWaldView::mor_src(int m) const { return mor_src_[m]; }
int GammaWaldView::mor_tgt(int m) const { return mor_tgt_[m]; }
int GammaWaldView::identity(int obj) const { return identities_[obj]; }
const std::vector<int>& GammaWaldView::hom_ids(int a, int b) const {
    return view_.by_pair[a][b];
}

std::optional<int> GammaWaldView::compose(int second, int first) const {
    ComposeResult r = gamma_compose(*base_, view_.morphisms[second], view_.morphisms[first]);
    if (!compose_defined(r)) return std::nullopt;
    int idx = view_.morphism_index(*composed(r));
    if (idx < 0) throw std::logic_error("composite escaped the enumerated window");
    return idx;
}

int GammaWaldView::zero_object() const { return view_.object_index(gamma_zero()); }
bool GammaWaldView::is_cofibration(int m) const { return cof_[m]; }
bool GammaWaldView::is_weak_equivalence(int m) const { return we_[m]; }

std::optional<WaldView::Wedge> GammaWaldView::wedge(int a, int b) const {
    const GammaObj& A = view_.objects[a];
    const GammaObj& B = view_.objects[b];
    if (A.arity() + B.arity() > view_.max_len) return std::nullopt;
    Wedge w;
    w.obj = view_.object_index(gammak::wedge(A, B));
    w.inl = view_.morphism_index(wedge_inl(*base_, A, B));
    w.inr = view_.morphism_index(wedge_inr(*base_, A, B));
    if (w.obj < 0 || w.inl < 0 || w.inr < 0)
        throw std::logic_error("wedge data escaped the enumerated window");
    return w;
}

std::optional<WaldView::Pushout> GammaWaldView::pushout(int cof, int m) const {
    const GammaMor& gc = view_.morphisms[cof];
    const GammaMor& gm = view_.morphisms[m];
    PushoutSquare sq = pushout_along_cofibration(*base_, gc, gm);
    if (sq.apex.arity() > view_.max_len) return std::nullopt;
    Pushout p;
    p.apex = view_.object_index(sq.apex);
    p.into_c = view_.morphism_index(sq.into_c);
    p.into_b = view_.morphism_index(sq.into_b);
    if (p.apex < 0 || p.into_c < 0 || p.into_b < 0)
        throw std::logic_error("pushout data escaped the enumerated window");
    return p;
}

std::string GammaWaldView::object_label(int obj) const {
    return describe(*base_, view_.objects[obj]);
}
std::string GammaWaldView::morphism_label(int m) const {
    return describe(*base_, view_.morphisms[m]);
}

GammaWaldView gamma_as_wald(const FinPermCat& base, int max_len,
                            std::int64_t max_morphisms) {
    return GammaWaldView(base, enumerate_truncated(base, max_len, max_morphisms));
}

/* ---------------- PresentationWaldView ---------------- */

PresentationWaldView::PresentationWaldView(const WaldPresentation& p) : p_(&p) {
    const int n = p.cat.num_objects();
    wedge_idx_.assign(n, std::vector<int>(n, -1));
    wedge_total_ = true;
    for (std::size_t w = 0; w < p.wedges.size(); ++w)
        wedge_idx_[p.wedges[w].a][p.wedges[w].b] = static_cast<int>(w);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (wedge_idx_[a][b] < 0) wedge_total_ = false;
    hom_.assign(n, std::vector<std::vector<int>>(n));
    for (MorId f = 0; f < p.cat.num_morphisms(); ++f)
        hom_[p.cat.src(f)][p.cat.tgt(f)].push_back(f);
}

int PresentationWaldView::object_count() const { return p_->cat.num_objects(); }
int PresentationWaldView::morphism_count() const { return p_->cat.num_morphisms(); }
int PresentationWaldView::mor_src(int m) const { return p_->cat.src(m); }
int PresentationWaldView::mor_tgt(int m) const { return p_->cat.tgt(m); }
int PresentationWaldView::identity(int obj) const { return p_->cat.identity(obj); }
const std::vector<int>& PresentationWaldView::hom_ids(int a, int b) const {
    return hom_[a][b];
}

std::optional<int> PresentationWaldView::compose(int second, int first) const {
    MorId r = p_->cat.compose_or_hole(second, first);
    if (r == kNoMor) return std::nullopt;
    return r;
}

int PresentationWaldView::zero_object() const { return p_->zero; }
bool PresentationWaldView::is_cofibration(int m) const { return p_->cof[m]; }
bool PresentationWaldView::is_weak_equivalence(int m) const { return p_->we[m]; }

std::optional<WaldView::Wedge> PresentationWaldView::wedge(int a, int b) const {
    int w = wedge_idx_[a][b];
    if (w < 0) return std::nullopt;
    const auto& e = p_->wedges[w];
    return Wedge{e.obj, e.inl, e.inr};
}

std::optional<WaldView::Pushout> PresentationWaldView::pushout(int cof, int m) const {
    const FinCat& cat = p_->cat;
    const int A = cat.src(cof);
    if (cat.src(m) != A) throw std::logic_error("pushout: legs have different sources");
    const int B = cat.tgt(cof);
    const int C = cat.tgt(m);
    for (int E = 0; E < cat.num_objects(); ++E) {
        for (int ib : hom_[B][E])
            for (int ic : hom_[C][E]) {
                if (cat.compose_or_hole(ib, cof) != cat.compose_or_hole(ic, m)) continue;
                // universal property against every commuting cocone
                bool universal = true;
                for (int F = 0; F < cat.num_objects() && universal; ++F)
                    for (int fb : hom_[B][F]) {
                        for (int fc : hom_[C][F]) {
                            if (cat.compose_or_hole(fb, cof) != cat.compose_or_hole(fc, m))
                                continue;
                            int found = 0;
                            for (int u : hom_[E][F])
                                if (cat.compose_or_hole(u, ib) == fb &&
                                    cat.compose_or_hole(u, ic) == fc)
                                    ++found;
                            if (found != 1) {
                                universal = false;
                                break;
                            }
                        }
                        if (!universal) break;
                    }
                if (universal) return Pushout{E, ic, ib};
            }
    }
    return std::nullopt;
}

std::string PresentationWaldView::object_label(int obj) const {
    return p_->cat.object_name(obj);
}
std::string PresentationWaldView::morphism_label(int m) const {
    return p_->cat.morphism_name(m);
}

/* ---------------- shared helpers ---------------- */

namespace {

/* Memoized composition over a view: dense table for small views, hash map
 * above. -2 = not yet computed, -1 = undefined. */
class Composer {
  public:
    explicit Composer(const WaldView& v) : v_(&v), m_(v.morphism_count()) {
        if (m_ > 0 && m_ <= 1500) dense_.assign(static_cast<std::size_t>(m_) * m_, -2);
    }
    std::optional<int> operator()(int g, int f) const {
        if (!dense_.empty()) {
            int& slot = dense_[static_cast<std::size_t>(g) * m_ + f];
            if (slot == -2) slot = raw(g, f);
            return slot < 0 ? std::nullopt : std::optional<int>(slot);
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint32_t>(f);
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, raw(g, f)).first;
        return it->second < 0 ? std::nullopt : std::optional<int>(it->second);
    }

  private:
    int raw(int g, int f) const {
        auto r = v_->compose(g, f);
        return r ? *r : -1;
    }
    const WaldView* v_;
    int m_;
    mutable std::vector<int> dense_;
    mutable std::unordered_map<std::uint64_t, int> memo_;
};

std::optional<int> view_inverse(const WaldView& v, const Composer& comp, int m) {
    const int s = v.mor_src(m), t = v.mor_tgt(m);
    for (int g : v.hom_ids(t, s))
        if (comp(g, m) == std::optional<int>(v.identity(s)) &&
            comp(m, g) == std::optional<int>(v.identity(t)))
            return g;
    return std::nullopt;
}

struct Budget {
    std::int64_t left;
    bool exhausted = false;
    bool take(std::int64_t n = 1) {
        if (left < n) {
            exhausted = true;
            return false;
        }
        left -= n;
        return true;
    }
};

std::vector<int> shuffled(int n, std::mt19937_64& rng) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
    }
    return order;
}

}  // namespace

/* ---------------- structural validation ---------------- */

Report validate_wald_view(const WaldView& v) {
    Report rep;
    rep.command = "validate_wald_view";
    Composer comp(v);
    Section& zero = rep.section("zero_object");
    Section& idc = rep.section("identity_classes");
    Section& closure = rep.section("class_closure");
    Section& wrows = rep.section("wedge_rows");

    const int z = v.zero_object();
    for (int a = 0; a < v.object_count(); ++a) {
        if (v.hom_ids(z, a).size() != 1)
            zero.fail("zero_not_initial", v.object_label(a),
                      std::to_string(v.hom_ids(z, a).size()) + " maps from the zero object");
        else
            zero.pass();
        if (v.hom_ids(a, z).size() != 1)
            zero.fail("zero_not_terminal", v.object_label(a),
                      std::to_string(v.hom_ids(a, z).size()) + " maps into the zero object");
        else
            zero.pass();
    }

    for (int a = 0; a < v.object_count(); ++a) {
        int id = v.identity(a);
        if (!v.is_cofibration(id) || !v.is_weak_equivalence(id))
            idc.fail("identity_class", v.object_label(a),
                     "identity is not in both distinguished classes");
        else
            idc.pass();
    }

    std::vector<int> marked;
    for (int m = 0; m < v.morphism_count(); ++m)
        if (v.is_cofibration(m) || v.is_weak_equivalence(m)) marked.push_back(m);
    for (int g : marked)
        for (int f : marked) {
            if (v.mor_tgt(f) != v.mor_src(g)) continue;
            const bool both_cof = v.is_cofibration(f) && v.is_cofibration(g);
            const bool both_we = v.is_weak_equivalence(f) && v.is_weak_equivalence(g);
            if (!both_cof && !both_we) continue;
            auto gf = comp(g, f);
            if (!gf) {
                closure.fail("class_composition_undefined",
                             v.morphism_label(g) + " . " + v.morphism_label(f),
                             "composite of distinguished morphisms is undefined");
                continue;
            }
            if (both_cof && !v.is_cofibration(*gf))
                closure.fail("cofibration_closure",
                             v.morphism_label(g) + " . " + v.morphism_label(f),
                             "composite " + v.morphism_label(*gf) + " is not a cofibration");
            else if (both_we && !v.is_weak_equivalence(*gf))
                closure.fail("weak_equivalence_closure",
                             v.morphism_label(g) + " . " + v.morphism_label(f),
                             "composite " + v.morphism_label(*gf) +
                                 " is not a weak equivalence");
            else
                closure.pass();
        }

    for (int a = 0; a < v.object_count(); ++a)
        for (int b = 0; b < v.object_count(); ++b) {
            auto w = v.wedge(a, b);
            if (!w) {
                wrows.skip();
                continue;
            }
            bool ok = v.mor_src(w->inl) == a && v.mor_tgt(w->inl) == w->obj &&
                      v.mor_src(w->inr) == b && v.mor_tgt(w->inr) == w->obj;
            if (!ok) {
                wrows.fail("wedge_typing", v.object_label(a) + " v " + v.object_label(b),
                           "legs do not land in the wedge object");
                continue;
            }
            if (!v.is_cofibration(w->inl) || !v.is_cofibration(w->inr)) {
                wrows.fail("wedge_legs", v.object_label(a) + " v " + v.object_label(b),
                           "wedge inclusions must be cofibrations");
                continue;
            }
            if (a == z && (w->obj != b || w->inr != v.identity(b))) {
                wrows.fail("wedge_left_unit", v.object_label(b),
                           "zero v b must be b with the identity leg");
                continue;
            }
            if (b == z && (w->obj != a || w->inl != v.identity(a))) {
                wrows.fail("wedge_right_unit", v.object_label(a),
                           "a v zero must be a with the identity leg");
                continue;
            }
            wrows.pass();
        }
    return rep;
}

/* ---------------- axiom checks ---------------- */

Report check_waldhausen_axioms(const WaldView& v, const AxiomCheckOptions& opt) {
    Report rep;
    rep.command = "check_waldhausen_axioms";
    rep.budget = opt.budget;
    rep.seed = opt.seed;
    Composer comp(v);
    Budget budget{opt.budget};

    Section& ax1 = rep.section("axiom_i_isos");
    for (int m = 0; m < v.morphism_count(); ++m) {
        auto inv = view_inverse(v, comp, m);
        if (!inv) continue;
        if (!v.is_cofibration(m) || !v.is_weak_equivalence(m))
            ax1.fail("iso_classes", v.morphism_label(m),
                     "invertible morphism missing from a distinguished class");
        else
            ax1.pass();
    }

    Section& ax2 = rep.section("axiom_ii_zero_cofibration");
    const int z = v.zero_object();
    for (int a = 0; a < v.object_count(); ++a) {
        const auto& from_zero = v.hom_ids(z, a);
        if (from_zero.size() != 1) {
            ax2.fail("zero_map_count", v.object_label(a),
                     std::to_string(from_zero.size()) + " maps from the zero object");
            continue;
        }
        if (!v.is_cofibration(from_zero[0]))
            ax2.fail("zero_map_cofibration", v.object_label(a),
                     "the map from the zero object is not a cofibration");
        else
            ax2.pass();
    }

    Section& ax3 = rep.section("axiom_iii_pushout");
    Section& up = rep.section("axiom_iii_universal");
    std::vector<int> cofs;
    for (int m = 0; m < v.morphism_count(); ++m)
        if (v.is_cofibration(m)) cofs.push_back(m);

    std::mt19937_64 rng(opt.seed);
    auto run_pushouts = [&]() {
    for (int ci : shuffled(static_cast<int>(cofs.size()), rng)) {
        const int cof = cofs[ci];
        const int A = v.mor_src(cof);
        for (int b2 = 0; b2 < v.object_count(); ++b2)
            for (int m : v.hom_ids(A, b2)) {
                if (!budget.take()) {
                    ax3.skip();
                    return;
                }
                auto po = v.pushout(cof, m);
                if (!po) {
                    ax3.skip();
                    continue;
                }
                auto left = comp(po->into_b, cof);
                auto right = comp(po->into_c, m);
                std::string inst = v.morphism_label(cof) + " pushed along " +
                                   v.morphism_label(m);
                if (!left || !right || *left != *right) {
                    ax3.fail("pushout_commutes", inst, "square does not commute");
                    continue;
                }
                if (!v.is_cofibration(po->into_c)) {
                    ax3.fail("pushout_cofibration_leg", inst,
                             "map under the pushout is not a cofibration");
                    continue;
                }
                ax3.pass();
                if (!opt.check_universal_property) continue;
                const int B = v.mor_tgt(cof), C = v.mor_tgt(m);
                for (int F = 0; F < v.object_count(); ++F)
                    for (int fb : v.hom_ids(B, F))
                        for (int fc : v.hom_ids(C, F)) {
                            if (!budget.take()) {
                                up.skip();
                                return;
                            }
                            auto lb = comp(fb, cof);
                            auto lc = comp(fc, m);
                            if (!lb || !lc || *lb != *lc) continue;
                            int found = 0;
                            for (int u : v.hom_ids(po->apex, F))
                                if (comp(u, po->into_b) == std::optional<int>(fb) &&
                                    comp(u, po->into_c) == std::optional<int>(fc))
                                    ++found;
                            if (found != 1)
                                up.fail("pushout_universal", inst,
                                        "cocone at " + v.object_label(F) + " admits " +
                                            std::to_string(found) + " mediating maps");
                            else
                                up.pass();
                        }
            }
    }
    };
    run_pushouts();

    Section& ax4 = rep.section("axiom_iv_gluing");
    std::vector<std::vector<int>> cofs_from(v.object_count());
    for (int c : cofs) cofs_from[v.mor_src(c)].push_back(c);
    std::vector<int> wes;
    for (int m = 0; m < v.morphism_count(); ++m)
        if (v.is_weak_equivalence(m)) wes.push_back(m);

    std::int64_t stream = 0;
    const std::int64_t stream_cap = opt.budget * 64;
    auto run_gluing = [&]() {
    for (int wi : shuffled(static_cast<int>(wes.size()), rng)) {
        const int wa = wes[wi];
        const int A1 = v.mor_src(wa), A2 = v.mor_tgt(wa);
        for (int cof1 : cofs_from[A1])
            for (int cof2 : cofs_from[A2]) {
                const int B1 = v.mor_tgt(cof1), B2 = v.mor_tgt(cof2);
                for (int wb : v.hom_ids(B1, B2)) {
                    if (!v.is_weak_equivalence(wb)) continue;
                    if (comp(wb, cof1) != comp(cof2, wa) || !comp(wb, cof1)) continue;
                    for (int c1 = 0; c1 < v.object_count(); ++c1)
                        for (int m1 : v.hom_ids(A1, c1))
                            for (int c2 = 0; c2 < v.object_count(); ++c2)
                                for (int m2 : v.hom_ids(A2, c2))
                                    for (int wc : v.hom_ids(c1, c2)) {
                                        if (++stream > stream_cap) {
                                            ax4.skip();
                                            return;
                                        }
                                        if (!v.is_weak_equivalence(wc)) continue;
                                        if (comp(wc, m1) != comp(m2, wa) || !comp(wc, m1))
                                            continue;
                                        if (!budget.take()) {
                                            ax4.skip();
                                            return;
                                        }
                                        auto p1 = v.pushout(cof1, m1);
                                        auto p2 = v.pushout(cof2, m2);
                                        if (!p1 || !p2) {
                                            ax4.skip();
                                            continue;
                                        }
                                        auto leg_b = comp(p2->into_b, wb);
                                        auto leg_c = comp(p2->into_c, wc);
                                        if (!leg_b || !leg_c) {
                                            ax4.fail("gluing_legs",
                                                     v.morphism_label(wa),
                                                     "legs into the second pushout are "
                                                     "undefined");
                                            continue;
                                        }
                                        int found = 0, witness = -1;
                                        for (int u : v.hom_ids(p1->apex, p2->apex))
                                            if (comp(u, p1->into_b) == leg_b &&
                                                comp(u, p1->into_c) == leg_c) {
                                                ++found;
                                                witness = u;
                                            }
                                        std::string inst =
                                            "spans over " + v.morphism_label(wa);
                                        if (found != 1) {
                                            ax4.fail("gluing_mediating", inst,
                                                     std::to_string(found) +
                                                         " induced maps of pushouts");
                                            continue;
                                        }
                                        if (!v.is_weak_equivalence(witness))
                                            ax4.fail("gluing", inst,
                                                     "induced map " +
                                                         v.morphism_label(witness) +
                                                         " is not a weak equivalence");
                                        else
                                            ax4.pass();
                                    }
                }
            }
    }
    };
    run_gluing();
    return rep;
}

Report check_gluing(const GammaWaldView& v, const AxiomCheckOptions& opt) {
    Report rep;
    rep.command = "check_gluing";
    rep.budget = opt.budget;
    rep.seed = opt.seed;
    Section& sec = rep.section("gluing_typed");
    Composer comp(v);
    Budget budget{opt.budget};

    std::vector<int> cofs, wes;
    for (int m = 0; m < v.morphism_count(); ++m) {
        if (v.is_cofibration(m)) cofs.push_back(m);
        if (v.is_weak_equivalence(m)) wes.push_back(m);
    }
    std::vector<std::vector<int>> cofs_from(v.object_count());
    for (int c : cofs) cofs_from[v.mor_src(c)].push_back(c);

    std::mt19937_64 rng(opt.seed);
    const FinPermCat& base = v.base();
    std::int64_t stream = 0;
    const std::int64_t stream_cap = opt.budget * 64;
    auto run = [&]() {
    for (int wi : shuffled(static_cast<int>(wes.size()), rng)) {
        const int wa = wes[wi];
        const int A1 = v.mor_src(wa), A2 = v.mor_tgt(wa);
        for (int cof1 : cofs_from[A1])
            for (int cof2 : cofs_from[A2]) {
                const int B1 = v.mor_tgt(cof1), B2 = v.mor_tgt(cof2);
                for (int wb : v.hom_ids(B1, B2)) {
                    if (!v.is_weak_equivalence(wb)) continue;
                    if (comp(wb, cof1) != comp(cof2, wa) || !comp(wb, cof1)) continue;
                    for (int c1 = 0; c1 < v.object_count(); ++c1)
                        for (int m1 : v.hom_ids(A1, c1))
                            for (int c2 = 0; c2 < v.object_count(); ++c2)
                                for (int m2 : v.hom_ids(A2, c2))
                                    for (int wc : v.hom_ids(c1, c2)) {
                                        if (++stream > stream_cap) {
                                            sec.skip();
                                            return;
                                        }
                                        if (!v.is_weak_equivalence(wc)) continue;
                                        if (comp(wc, m1) != comp(m2, wa) || !comp(wc, m1))
                                            continue;
                                        if (!budget.take()) {
                                            sec.skip();
                                            return;
                                        }
                                        GluingDiagram d{v.mor(cof1), v.mor(m1),
                                                        v.mor(cof2), v.mor(m2),
                                                        v.mor(wa),   v.mor(wb),
                                                        v.mor(wc)};
                                        check_gluing_instance(base, d, sec);
                                    }
                }
            }
    }
    };
    run();
    return rep;
}

Report check_weakly_split(const GammaWaldView& v, const AxiomCheckOptions& opt) {
    Report rep;
    rep.command = "check_weakly_split";
    rep.budget = opt.budget;
    rep.seed = opt.seed;
    Section& swe = rep.section("splitting_weak_equivalence");
    Section& srel = rep.section("splitting_restriction");
    const FinPermCat& base = v.base();
    Budget budget{opt.budget};
    for (int m = 0; m < v.morphism_count(); ++m) {
        if (!v.is_cofibration(m)) continue;
        if (!budget.take()) {
            swe.skip();
            continue;
        }
        const GammaMor& cof = v.mor(m);
        GammaMor split = splitting_equivalence(base, cof);
        std::vector<int> missed;
        GammaObj q = cofiber(base, cof, &missed);
        if (!(split.src == wedge(cof.src, q))) {
            swe.fail("splitting_source", v.morphism_label(m),
                     "splitting source is not source v cofiber");
            continue;
        }
        if (!is_weak_equivalence(split)) {
            swe.fail("splitting_we", v.morphism_label(m),
                     describe(base, split) + " is not a weak equivalence");
            continue;
        }
        swe.pass();
        GammaMor inl = wedge_inl(base, cof.src, q);
        ComposeResult restricted = gamma_compose(base, split, inl);
        if (!compose_defined(restricted) || !(*composed(restricted) == cof))
            srel.fail("splitting_rel", v.morphism_label(m),
                      "splitting does not restrict to the cofibration");
        else
            srel.pass();
    }
    return rep;
}

}  // namespace gammak
