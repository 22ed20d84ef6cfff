#include "gammak/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gammak {

ObjId FinCat::add_object(std::string name) {
    if (finalized_) throw std::logic_error("add_object after finalize");
    if (num_morphisms() > num_objects())
        throw std::logic_error("objects must be added before morphisms");
    objects_.push_back(std::move(name));
    ObjId a = num_objects() - 1;
    mor_names_.push_back("id_" + objects_[a]);
    src_.push_back(a);
    tgt_.push_back(a);
    return a;
}

MorId FinCat::add_morphism(std::string name, ObjId src, ObjId tgt) {
    if (finalized_) throw std::logic_error("add_morphism after finalize");
    mor_names_.push_back(std::move(name));
    src_.push_back(src);
    tgt_.push_back(tgt);
    return num_morphisms() - 1;
}

void FinCat::set_compose(MorId g, MorId f, MorId gf) {
    const int m = num_morphisms();
    if (comp_.size() != static_cast<std::size_t>(m) * m) {
        if (!comp_.empty())
            throw std::logic_error("set_compose before all morphisms were added");
        comp_.assign(static_cast<std::size_t>(m) * m, kNoMor);
    }
    comp_[static_cast<std::size_t>(g) * m + f] = gf;
}

MorId FinCat::compose_or_hole(MorId g, MorId f) const {
    if (!composable(g, f)) return kNoMor;
    const int m = num_morphisms();
    if (comp_.empty()) return kNoMor;
    return comp_[static_cast<std::size_t>(g) * m + f];
}

MorId FinCat::compose_raw(MorId g, MorId f) const {
    const int m = num_morphisms();
    if (comp_.empty()) return kNoMor;
    return comp_[static_cast<std::size_t>(g) * m + f];
}

MorId FinCat::compose(MorId g, MorId f) const {
    if (!composable(g, f)) {
        std::ostringstream msg;
        msg << "non-composable pair: " << morphism_name(g) << " after " << morphism_name(f);
        throw std::logic_error(msg.str());
    }
    MorId r = compose_or_hole(g, f);
    if (r == kNoMor) {
        std::ostringstream msg;
        msg << "composition table hole: " << morphism_name(g) << " after " << morphism_name(f);
        throw std::logic_error(msg.str());
    }
    return r;
}

std::vector<MorId> FinCat::hom(ObjId a, ObjId b) const {
    std::vector<MorId> out;
    for (MorId f : morphisms_from(a))
        if (tgt_[f] == b) out.push_back(f);
    return out;
}

const std::vector<MorId>& FinCat::morphisms_from(ObjId a) const { return from_[a]; }
const std::vector<MorId>& FinCat::morphisms_into(ObjId b) const { return into_[b]; }

std::optional<ObjId> FinCat::object_by_name(const std::string& name) const {
    for (ObjId a = 0; a < num_objects(); ++a)
        if (objects_[a] == name) return a;
    return std::nullopt;
}

std::optional<MorId> FinCat::morphism_by_name(const std::string& name) const {
    for (MorId f = 0; f < num_morphisms(); ++f)
        if (mor_names_[f] == name) return f;
    return std::nullopt;
}

void FinCat::finalize() {
    const int m = num_morphisms();
    const int n = num_objects();
    if (comp_.size() != static_cast<std::size_t>(m) * m)
        comp_.assign(static_cast<std::size_t>(m) * m, kNoMor);
    for (MorId f = 0; f < m; ++f) {
        // id_tgt(f) . f and f . id_src(f) default to f unless explicitly set
        auto& left = comp_[static_cast<std::size_t>(identity(tgt_[f])) * m + f];
        if (left == kNoMor) left = f;
        auto& right = comp_[static_cast<std::size_t>(f) * m + identity(src_[f])];
        if (right == kNoMor) right = f;
    }
    from_.assign(n, {});
    into_.assign(n, {});
    for (MorId f = 0; f < m; ++f) {
        from_[src_[f]].push_back(f);
        into_[tgt_[f]].push_back(f);
    }
    finalized_ = true;
}

/* ---------------- permutative structure ---------------- */

void FinPermCat::set_tensor_obj(ObjId a, ObjId b, ObjId ab) {
    tensor_obj_[static_cast<std::size_t>(a) * cat_.num_objects() + b] = ab;
}
void FinPermCat::set_tensor_mor(MorId f, MorId g, MorId fg) {
    tensor_mor_[static_cast<std::size_t>(f) * cat_.num_morphisms() + g] = fg;
}
void FinPermCat::set_symmetry(ObjId a, ObjId b, MorId beta) {
    sym_[static_cast<std::size_t>(a) * cat_.num_objects() + b] = beta;
}

void FinPermCat::derive_forced_rows() {
    const int n = cat_.num_objects();
    const int m = cat_.num_morphisms();
    for (ObjId a = 0; a < n; ++a) {
        auto& ua = tensor_obj_[static_cast<std::size_t>(unit_) * n + a];
        if (ua == kNoObj) ua = a;
        auto& au = tensor_obj_[static_cast<std::size_t>(a) * n + unit_];
        if (au == kNoObj) au = a;
    }
    const MorId unit_id = cat_.identity(unit_);
    for (MorId f = 0; f < m; ++f) {
        auto& uf = tensor_mor_[static_cast<std::size_t>(unit_id) * m + f];
        if (uf == kNoMor) uf = f;
        auto& fu = tensor_mor_[static_cast<std::size_t>(f) * m + unit_id];
        if (fu == kNoMor) fu = f;
    }
    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) {
            ObjId ab = tensor_obj_or_hole(a, b);
            if (ab == kNoObj) continue;
            auto& t = tensor_mor_[static_cast<std::size_t>(cat_.identity(a)) * m +
                                  cat_.identity(b)];
            if (t == kNoMor) t = cat_.identity(ab);
            if (a == unit_ || b == unit_) {
                auto& s = sym_[static_cast<std::size_t>(a) * n + b];
                if (s == kNoMor) s = cat_.identity(a == unit_ ? b : a);
            }
        }
}

ObjId FinPermCat::tensor_obj_or_hole(ObjId a, ObjId b) const {
    return tensor_obj_[static_cast<std::size_t>(a) * cat_.num_objects() + b];
}
MorId FinPermCat::tensor_mor_or_hole(MorId f, MorId g) const {
    return tensor_mor_[static_cast<std::size_t>(f) * cat_.num_morphisms() + g];
}
MorId FinPermCat::symmetry_or_hole(ObjId a, ObjId b) const {
    return sym_[static_cast<std::size_t>(a) * cat_.num_objects() + b];
}

ObjId FinPermCat::tensor(ObjId a, ObjId b) const {
    ObjId r = tensor_obj_or_hole(a, b);
    if (r == kNoObj)
        throw std::logic_error("tensor table hole at objects " + cat_.object_name(a) +
                               ", " + cat_.object_name(b));
    return r;
}

MorId FinPermCat::tensor_mor(MorId f, MorId g) const {
    MorId r = tensor_mor_or_hole(f, g);
    if (r == kNoMor)
        throw std::logic_error("tensor table hole at morphisms " + cat_.morphism_name(f) +
                               ", " + cat_.morphism_name(g));
    return r;
}

MorId FinPermCat::symmetry(ObjId a, ObjId b) const {
    MorId r = symmetry_or_hole(a, b);
    if (r == kNoMor)
        throw std::logic_error("symmetry table hole at " + cat_.object_name(a) + ", " +
                               cat_.object_name(b));
    return r;
}

ObjId FinPermCat::tensor_power(std::span<const ObjId> objs) const {
    ObjId acc = unit_;
    for (ObjId a : objs) acc = tensor(acc, a);
    return acc;
}

MorId FinPermCat::tensor_mor_power(std::span<const MorId> mors) const {
    MorId acc = cat_.identity(unit_);
    for (MorId f : mors) acc = tensor_mor(acc, f);
    return acc;
}

MorId FinPermCat::perm_iso(std::span<const ObjId> objs, std::span<const int> sigma) const {
    const int n = static_cast<int>(objs.size());
    if (static_cast<int>(sigma.size()) != n || !is_permutation(sigma))
        throw std::logic_error("perm_iso: not a permutation of the object list");
    std::vector<ObjId> arr(objs.begin(), objs.end());
    std::vector<int> dest(sigma.begin(), sigma.end());   // dest of the item at slot k
    MorId acc = cat_.identity(tensor_power(objs));
    // bubble until every item sits at its destination
    bool moved = true;
    while (moved) {
        moved = false;
        for (int k = 0; k + 1 < n; ++k) {
            if (dest[k] <= dest[k + 1]) continue;
            std::vector<MorId> factors;
            factors.reserve(n - 1);
            for (int t = 0; t < k; ++t) factors.push_back(cat_.identity(arr[t]));
            factors.push_back(symmetry(arr[k], arr[k + 1]));
            for (int t = k + 2; t < n; ++t) factors.push_back(cat_.identity(arr[t]));
            MorId step = tensor_mor_power(factors);
            acc = cat_.compose(step, acc);
            std::swap(arr[k], arr[k + 1]);
            std::swap(dest[k], dest[k + 1]);
            moved = true;
        }
    }
    return acc;
}

/* ---------------- validators ---------------- */

Report validate_category(const FinCat& cat) {
    Report rep;
    rep.command = "validate_category";
    Section& typing = rep.section("typing");
    Section& total = rep.section("composition_total");
    Section& ident = rep.section("identity_laws");
    Section& assoc = rep.section("associativity");

    const int m = cat.num_morphisms();
    const int n = cat.num_objects();

    for (ObjId a = 0; a < n; ++a) {
        MorId i = cat.identity(a);
        if (cat.src(i) != a || cat.tgt(i) != a)
            typing.fail("identity_typing", cat.object_name(a),
                        "identity endpoints differ from the object");
        else
            typing.pass();
    }

    for (MorId g = 0; g < m; ++g)
        for (MorId f = 0; f < m; ++f) {
            MorId r = cat.compose_raw(g, f);
            if (!cat.composable(g, f)) {
                if (r != kNoMor)
                    total.fail("composition_off_domain",
                               cat.morphism_name(g) + " . " + cat.morphism_name(f),
                               "entry present for a non-composable pair");
                else
                    total.pass();
                continue;
            }
            if (r == kNoMor) {
                total.fail("composition_hole",
                           cat.morphism_name(g) + " . " + cat.morphism_name(f),
                           "no entry for a composable pair");
                continue;
            }
            if (cat.src(r) != cat.src(f) || cat.tgt(r) != cat.tgt(g)) {
                total.fail("composition_typing",
                           cat.morphism_name(g) + " . " + cat.morphism_name(f),
                           "result " + cat.morphism_name(r) + " has wrong endpoints");
                continue;
            }
            total.pass();
        }

    for (MorId f = 0; f < m; ++f) {
        MorId l = cat.compose_or_hole(cat.identity(cat.tgt(f)), f);
        MorId r = cat.compose_or_hole(f, cat.identity(cat.src(f)));
        if (l != f)
            ident.fail("left_identity", cat.morphism_name(f),
                       "id . f = " + (l == kNoMor ? "<hole>" : cat.morphism_name(l)));
        else
            ident.pass();
        if (r != f)
            ident.fail("right_identity", cat.morphism_name(f),
                       "f . id = " + (r == kNoMor ? "<hole>" : cat.morphism_name(r)));
        else
            ident.pass();
    }

    for (MorId h = 0; h < m; ++h)
        for (MorId g = 0; g < m; ++g) {
            if (!cat.composable(h, g)) continue;
            MorId hg = cat.compose_or_hole(h, g);
            for (MorId f = 0; f < m; ++f) {
                if (!cat.composable(g, f)) continue;
                MorId gf = cat.compose_or_hole(g, f);
                if (hg == kNoMor || gf == kNoMor) continue;   // reported as holes
                MorId l = cat.compose_or_hole(h, gf);
                MorId r = cat.compose_or_hole(hg, f);
                if (l == kNoMor || r == kNoMor) continue;
                if (l != r)
                    assoc.fail("associativity",
                               cat.morphism_name(h) + " . " + cat.morphism_name(g) +
                                   " . " + cat.morphism_name(f),
                               cat.morphism_name(l) + " != " + cat.morphism_name(r));
                else
                    assoc.pass();
            }
        }
    return rep;
}

Report validate_functor(const FinFunctor& fun) {
    Report rep;
    rep.command = "validate_functor";
    Section& sec = rep.section("functor_laws");
    const FinCat& d = *fun.dom;
    const FinCat& c = *fun.cod;
    if (static_cast<int>(fun.obj_map.size()) != d.num_objects() ||
        static_cast<int>(fun.mor_map.size()) != d.num_morphisms()) {
        sec.fail("functor_shape", "maps", "object/morphism map sizes do not match the domain");
        return rep;
    }
    for (MorId f = 0; f < d.num_morphisms(); ++f) {
        MorId ff = fun.mor_map[f];
        if (c.src(ff) != fun.obj_map[d.src(f)] || c.tgt(ff) != fun.obj_map[d.tgt(f)])
            sec.fail("functor_typing", d.morphism_name(f), "image has wrong endpoints");
        else
            sec.pass();
    }
    for (ObjId a = 0; a < d.num_objects(); ++a) {
        if (fun.mor_map[d.identity(a)] != c.identity(fun.obj_map[a]))
            sec.fail("functor_identity", d.object_name(a), "identity not preserved");
        else
            sec.pass();
    }
    for (MorId g = 0; g < d.num_morphisms(); ++g)
        for (MorId f = 0; f < d.num_morphisms(); ++f) {
            if (!d.composable(g, f)) continue;
            MorId gf = d.compose_or_hole(g, f);
            if (gf == kNoMor) continue;
            MorId lhs = fun.mor_map[gf];
            MorId rhs = c.compose_or_hole(fun.mor_map[g], fun.mor_map[f]);
            if (lhs != rhs)
                sec.fail("functor_composition",
                         d.morphism_name(g) + " . " + d.morphism_name(f),
                         "images compose differently");
            else
                sec.pass();
        }
    return rep;
}

Report validate_permutative(const FinPermCat& p) {
    Report rep;
    rep.command = "validate_permutative";
    const FinCat& cat = p.cat();
    const int n = cat.num_objects();
    const int m = cat.num_morphisms();
    Section& tot = rep.section("tensor_total");
    Section& strict = rep.section("tensor_strictness");
    Section& fun = rep.section("tensor_functorial");
    Section& sym = rep.section("symmetry");

    auto oname = [&](ObjId a) { return cat.object_name(a); };
    auto mname = [&](MorId f) { return cat.morphism_name(f); };

    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) {
            if (p.tensor_obj_or_hole(a, b) == kNoObj)
                tot.fail("tensor_obj_hole", oname(a) + " (x) " + oname(b), "no entry");
            else
                tot.pass();
            if (p.symmetry_or_hole(a, b) == kNoMor)
                tot.fail("symmetry_hole", oname(a) + ", " + oname(b), "no entry");
            else
                tot.pass();
        }
    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g) {
            if (p.tensor_mor_or_hole(f, g) == kNoMor)
                tot.fail("tensor_mor_hole", mname(f) + " (x) " + mname(g), "no entry");
            else
                tot.pass();
        }
    if (!rep.clean()) return rep;   // later laws would chase holes

    for (ObjId a = 0; a < n; ++a) {
        if (p.tensor(p.unit(), a) != a)
            strict.fail("left_unit_obj", oname(a), "unit (x) a != a");
        else
            strict.pass();
        if (p.tensor(a, p.unit()) != a)
            strict.fail("right_unit_obj", oname(a), "a (x) unit != a");
        else
            strict.pass();
    }
    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b)
            for (ObjId c = 0; c < n; ++c) {
                if (p.tensor(p.tensor(a, b), c) != p.tensor(a, p.tensor(b, c)))
                    strict.fail("assoc_obj",
                                oname(a) + ", " + oname(b) + ", " + oname(c),
                                "object tensor not associative");
                else
                    strict.pass();
            }

    const MorId eid = cat.identity(p.unit());
    for (MorId f = 0; f < m; ++f) {
        if (p.tensor_mor(eid, f) != f)
            strict.fail("left_unit_mor", mname(f), "id_unit (x) f != f");
        else
            strict.pass();
        if (p.tensor_mor(f, eid) != f)
            strict.fail("right_unit_mor", mname(f), "f (x) id_unit != f");
        else
            strict.pass();
    }

    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g) {
            MorId fg = p.tensor_mor(f, g);
            if (cat.src(fg) != p.tensor(cat.src(f), cat.src(g)) ||
                cat.tgt(fg) != p.tensor(cat.tgt(f), cat.tgt(g))) {
                fun.fail("tensor_typing", mname(f) + " (x) " + mname(g),
                         "endpoints of " + mname(fg) + " are not the tensored endpoints");
                continue;
            }
            fun.pass();
        }

    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) {
            if (p.tensor_mor(cat.identity(a), cat.identity(b)) != cat.identity(p.tensor(a, b)))
                fun.fail("tensor_identities", oname(a) + ", " + oname(b),
                         "id (x) id is not the identity of the tensor");
            else
                fun.pass();
        }

    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g)
            for (MorId h = 0; h < m; ++h) {
                if (p.tensor_mor(p.tensor_mor(f, g), h) != p.tensor_mor(f, p.tensor_mor(g, h))) {
                    fun.fail("assoc_mor", mname(f) + ", " + mname(g) + ", " + mname(h),
                             "morphism tensor not associative");
                } else {
                    fun.pass();
                }
            }

    // interchange over composable pairs
    for (MorId f2 = 0; f2 < m; ++f2)
        for (MorId f1 = 0; f1 < m; ++f1) {
            if (!cat.composable(f2, f1)) continue;
            MorId f21 = cat.compose_or_hole(f2, f1);
            if (f21 == kNoMor) continue;
            for (MorId g2 = 0; g2 < m; ++g2)
                for (MorId g1 = 0; g1 < m; ++g1) {
                    if (!cat.composable(g2, g1)) continue;
                    MorId g21 = cat.compose_or_hole(g2, g1);
                    if (g21 == kNoMor) continue;
                    MorId lhs = p.tensor_mor(f21, g21);
                    MorId rhs = cat.compose_or_hole(p.tensor_mor(f2, g2), p.tensor_mor(f1, g1));
                    if (lhs != rhs)
                        fun.fail("interchange",
                                 "(" + mname(f2) + "." + mname(f1) + ") (x) (" + mname(g2) +
                                     "." + mname(g1) + ")",
                                 "tensor of composites differs from composite of tensors");
                    else
                        fun.pass();
                }
        }

    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b) {
            MorId beta = p.symmetry(a, b);
            if (cat.src(beta) != p.tensor(a, b) || cat.tgt(beta) != p.tensor(b, a)) {
                sym.fail("symmetry_typing", oname(a) + ", " + oname(b),
                         mname(beta) + " does not map a(x)b -> b(x)a");
                continue;
            }
            sym.pass();
            MorId back = p.symmetry(b, a);
            if (cat.compose_or_hole(back, beta) != cat.identity(p.tensor(a, b)))
                sym.fail("symmetry_involution", oname(a) + ", " + oname(b),
                         "beta(b,a) . beta(a,b) is not the identity");
            else
                sym.pass();
            if (b == p.unit() || a == p.unit()) {
                ObjId other = (a == p.unit()) ? b : a;
                if (beta != cat.identity(other))
                    sym.fail("symmetry_unit", oname(a) + ", " + oname(b),
                             "symmetry with the unit must be the identity");
                else
                    sym.pass();
            }
        }
    if (!rep.clean()) return rep;

    // naturality: beta(a',b') . (f (x) g) = (g (x) f) . beta(a,b)
    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g) {
            MorId lhs = cat.compose_or_hole(p.symmetry(cat.tgt(f), cat.tgt(g)), p.tensor_mor(f, g));
            MorId rhs = cat.compose_or_hole(p.tensor_mor(g, f), p.symmetry(cat.src(f), cat.src(g)));
            if (lhs != rhs || lhs == kNoMor)
                sym.fail("symmetry_naturality", mname(f) + ", " + mname(g),
                         "square with the symmetry does not commute");
            else
                sym.pass();
        }

    // strict hexagon: beta(a, b(x)c) = (id_b (x) beta(a,c)) . (beta(a,b) (x) id_c)
    for (ObjId a = 0; a < n; ++a)
        for (ObjId b = 0; b < n; ++b)
            for (ObjId c = 0; c < n; ++c) {
                MorId lhs = p.symmetry(a, p.tensor(b, c));
                MorId step1 = p.tensor_mor(p.symmetry(a, b), cat.identity(c));
                MorId step2 = p.tensor_mor(cat.identity(b), p.symmetry(a, c));
                MorId rhs = cat.compose_or_hole(step2, step1);
                if (lhs != rhs || rhs == kNoMor)
                    sym.fail("hexagon", oname(a) + ", " + oname(b) + ", " + oname(c),
                             "hexagon identity fails");
                else
                    sym.pass();
            }
    return rep;
}

/* ---------------- search helpers ---------------- */

std::optional<MorId> inverse_of(const FinCat& cat, MorId f) {
    for (MorId g : cat.hom(cat.tgt(f), cat.src(f)))
        if (cat.compose_or_hole(g, f) == cat.identity(cat.src(f)) &&
            cat.compose_or_hole(f, g) == cat.identity(cat.tgt(f)))
            return g;
    return std::nullopt;
}

bool is_iso(const FinCat& cat, MorId f) { return inverse_of(cat, f).has_value(); }

MediatingResult mediating_morphism(const FinCat& cat, ObjId src, ObjId tgt,
                                   std::span<const TriangleConstraint> constraints) {
    MediatingResult res;
    for (MorId u : cat.hom(src, tgt)) {
        bool ok = true;
        for (const auto& c : constraints) {
            if (cat.compose_or_hole(u, c.leg) != c.required) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++res.candidates;
        if (res.candidates == 1) {
            res.outcome = MediatingOutcome::Found;
            res.mor = u;
        } else {
            res.outcome = MediatingOutcome::NotUnique;
            res.mor = kNoMor;
        }
    }
    return res;
}

bool is_permutation(std::span<const int> sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::vector<int> invert_permutation(std::span<const int> sigma) {
    std::vector<int> inv(sigma.size());
    for (int i = 0; i < static_cast<int>(sigma.size()); ++i) inv[sigma[i]] = i;
    return inv;
}

std::vector<int> compose_permutations(std::span<const int> second,
                                      std::span<const int> first) {
    std::vector<int> out(first.size());
    for (int i = 0; i < static_cast<int>(first.size()); ++i) out[i] = second[first[i]];
    return out;
}

std::vector<int> sorting_permutation(std::span<const int> values) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return values[i] < values[j]; });
    std::vector<int> sigma(n);
    for (int rank = 0; rank < n; ++rank) sigma[order[rank]] = rank;
    return sigma;
}

}  // namespace gammak
