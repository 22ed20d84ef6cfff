#include "gammak/gamma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace gammak {

std::string ComposeUndefined::describe() const {
    std::ostringstream out;
    if (reason == Reason::OverlappingBlocks)
        out << "overlapping blocks at source position " << source_index << ": targets of "
            << block_a << " and " << block_b << " intersect";
    else
        out << "missing component at source position " << source_index
            << ": middle position " << block_a << " has an empty block";
    return out.str();
}

bool compose_defined(const ComposeResult& r) {
    return std::holds_alternative<GammaMor>(r);
}
const GammaMor* composed(const ComposeResult& r) { return std::get_if<GammaMor>(&r); }
const ComposeUndefined* compose_failure(const ComposeResult& r) {
    return std::get_if<ComposeUndefined>(&r);
}

bool well_formed(const FinPermCat& base, const GammaMor& m, std::string* why) {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int a = m.src.arity();
    const int b = m.tgt.arity();
    if (m.phi.source_arity() != a || m.phi.target_arity != b)
        return bad("index map shape does not match the endpoints");
    if (static_cast<int>(m.components.size()) != a)
        return bad("component list length differs from the source arity");
    for (int i = 0; i < a; ++i) {
        const auto& blk = m.phi.blocks[i];
        for (std::size_t t = 0; t < blk.size(); ++t) {
            if (blk[t] < 0 || blk[t] >= b) return bad("block entry out of range");
            if (t > 0 && blk[t - 1] >= blk[t]) return bad("block not strictly increasing");
        }
        if (blk.empty()) {
            if (m.components[i] != kNoMor)
                return bad("component present on an empty block");
            continue;
        }
        MorId f = m.components[i];
        if (f == kNoMor) return bad("component missing on a nonempty block");
        if (f < 0 || f >= base.cat().num_morphisms()) return bad("component id out of range");
        std::vector<ObjId> tgt_objs;
        tgt_objs.reserve(blk.size());
        for (int j : blk) tgt_objs.push_back(m.tgt.entries[j]);
        if (base.cat().src(f) != m.src.entries[i])
            return bad("component source is not the tuple entry");
        if (base.cat().tgt(f) != base.tensor_power(tgt_objs))
            return bad("component target is not the tensor of the block entries");
    }
    return true;
}

GammaObj gamma_zero() { return GammaObj{}; }

GammaMor gamma_identity(const FinPermCat& base, const GammaObj& a) {
    GammaMor m;
    m.src = m.tgt = a;
    m.phi.target_arity = a.arity();
    m.phi.blocks.resize(a.arity());
    m.components.resize(a.arity());
    for (int i = 0; i < a.arity(); ++i) {
        m.phi.blocks[i] = {i};
        m.components[i] = base.cat().identity(a.entries[i]);
    }
    return m;
}

GammaMor gamma_to_zero(const GammaObj& a) {
    GammaMor m;
    m.src = a;
    m.phi.target_arity = 0;
    m.phi.blocks.assign(a.arity(), {});
    m.components.assign(a.arity(), kNoMor);
    return m;
}

GammaMor gamma_from_zero(const GammaObj& b) {
    GammaMor m;
    m.tgt = b;
    m.phi.target_arity = b.arity();
    return m;
}

ComposeResult gamma_compose(const FinPermCat& base, const GammaMor& second,
                            const GammaMor& first) {
    if (first.tgt != second.src)
        throw std::logic_error("gamma_compose: middle objects differ");
    const int a = first.src.arity();
    GammaMor out;
    out.src = first.src;
    out.tgt = second.tgt;
    out.phi.target_arity = second.tgt.arity();
    out.phi.blocks.resize(a);
    out.components.assign(a, kNoMor);

    for (int i = 0; i < a; ++i) {
        const auto& blk = first.phi.blocks[i];
        // union with disjointness check
        std::vector<int> concat;
        std::vector<int> owner;   // who contributed each entry, for witnesses
        for (int j : blk) {
            for (int k : second.phi.blocks[j]) {
                concat.push_back(k);
                owner.push_back(j);
            }
        }
        std::vector<int> sorted_ids(concat.size());
        std::iota(sorted_ids.begin(), sorted_ids.end(), 0);
        std::sort(sorted_ids.begin(), sorted_ids.end(),
                  [&](int x, int y) { return concat[x] < concat[y]; });
        for (std::size_t t = 1; t < sorted_ids.size(); ++t) {
            if (concat[sorted_ids[t - 1]] == concat[sorted_ids[t]]) {
                ComposeUndefined u;
                u.reason = ComposeUndefined::Reason::OverlappingBlocks;
                u.source_index = i;
                // blocks are strictly increasing, so equal entries always
                // come from two distinct middle positions
                u.block_a = owner[sorted_ids[t - 1]];
                u.block_b = owner[sorted_ids[t]];
                return u;
            }
        }
        std::vector<int> un(concat.size());
        for (std::size_t t = 0; t < concat.size(); ++t) un[t] = concat[sorted_ids[t]];
        out.phi.blocks[i] = un;
        if (un.empty()) continue;
        // a nonempty union needs a component from every contributing block
        for (int j : blk) {
            if (second.phi.blocks[j].empty()) {
                ComposeUndefined u;
                u.reason = ComposeUndefined::Reason::MissingComponent;
                u.source_index = i;
                u.block_a = j;
                return u;
            }
        }
        std::vector<MorId> gs;
        gs.reserve(blk.size());
        for (int j : blk) gs.push_back(second.components[j]);
        MorId tensored = base.tensor_mor_power(gs);
        MorId inner = base.cat().compose(tensored, first.components[i]);
        // sort the concatenated blocks into increasing target order
        std::vector<ObjId> concat_objs;
        concat_objs.reserve(concat.size());
        for (int k : concat) concat_objs.push_back(second.tgt.entries[k]);
        std::vector<int> sigma = sorting_permutation(concat);
        MorId sorter = base.perm_iso(concat_objs, sigma);
        out.components[i] = base.cat().compose(sorter, inner);
    }
    return out;
}

GammaMor gamma_compose_strict(const FinPermCat& base, const GammaMor& second,
                              const GammaMor& first) {
    ComposeResult r = gamma_compose(base, second, first);
    if (const auto* u = compose_failure(r))
        throw std::logic_error("gamma_compose undefined: " + u->describe());
    return *composed(r);
}

bool is_weak_equivalence(const GammaMor& m) {
    const int b = m.tgt.arity();
    std::vector<int> hits(b, 0);
    for (const auto& blk : m.phi.blocks) {
        if (blk.empty()) return false;
        for (int j : blk) ++hits[j];
    }
    for (int c : hits)
        if (c != 1) return false;
    return true;
}

bool is_cofibration(const FinPermCat& base, const GammaMor& m) {
    std::vector<bool> used(m.tgt.arity(), false);
    for (int i = 0; i < m.src.arity(); ++i) {
        const auto& blk = m.phi.blocks[i];
        if (blk.size() != 1) return false;
        if (used[blk[0]]) return false;
        used[blk[0]] = true;
        if (!is_iso(base.cat(), m.components[i])) return false;
    }
    return true;
}

bool is_gamma_iso(const FinPermCat& base, const GammaMor& m) {
    // bijective singleton blocks with invertible components
    if (m.src.arity() != m.tgt.arity()) return false;
    return is_cofibration(base, m) && is_weak_equivalence(m);
}

GammaObj wedge(const GammaObj& a, const GammaObj& b) {
    GammaObj out = a;
    out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
    return out;
}

GammaMor wedge_inl(const FinPermCat& base, const GammaObj& a, const GammaObj& b) {
    GammaMor m;
    m.src = a;
    m.tgt = wedge(a, b);
    m.phi.target_arity = m.tgt.arity();
    for (int i = 0; i < a.arity(); ++i) {
        m.phi.blocks.push_back({i});
        m.components.push_back(base.cat().identity(a.entries[i]));
    }
    return m;
}

GammaMor wedge_inr(const FinPermCat& base, const GammaObj& a, const GammaObj& b) {
    GammaMor m;
    m.src = b;
    m.tgt = wedge(a, b);
    m.phi.target_arity = m.tgt.arity();
    for (int i = 0; i < b.arity(); ++i) {
        m.phi.blocks.push_back({a.arity() + i});
        m.components.push_back(base.cat().identity(b.entries[i]));
    }
    return m;
}

GammaMor wedge_mor(const FinPermCat& base, const GammaMor& m, const GammaMor& n) {
    (void)base;
    GammaMor out;
    out.src = wedge(m.src, n.src);
    out.tgt = wedge(m.tgt, n.tgt);
    out.phi.target_arity = out.tgt.arity();
    out.phi.blocks = m.phi.blocks;
    out.components = m.components;
    const int shift = m.tgt.arity();
    for (const auto& blk : n.phi.blocks) {
        std::vector<int> shifted;
        shifted.reserve(blk.size());
        for (int j : blk) shifted.push_back(j + shift);
        out.phi.blocks.push_back(std::move(shifted));
    }
    out.components.insert(out.components.end(), n.components.begin(), n.components.end());
    return out;
}

PushoutSquare pushout_along_cofibration(const FinPermCat& base, const GammaMor& cof,
                                        const GammaMor& m) {
    if (cof.src != m.src)
        throw std::logic_error("pushout: span legs have different sources");
    if (!is_cofibration(base, cof))
        throw std::logic_error("pushout: left leg is not a cofibration");
    const int a = cof.src.arity();
    const int b = cof.tgt.arity();
    const int c = m.tgt.arity();

    std::vector<int> phi_of(b, -1);   // position i with phi(i) = {j}, else -1
    for (int i = 0; i < a; ++i) phi_of[cof.phi.blocks[i][0]] = i;

    PushoutSquare sq;
    sq.apex.entries = m.tgt.entries;
    for (int j = 0; j < b; ++j)
        if (phi_of[j] < 0) {
            sq.missed.push_back(j);
            sq.apex.entries.push_back(cof.tgt.entries[j]);
        }

    sq.into_c.src = m.tgt;
    sq.into_c.tgt = sq.apex;
    sq.into_c.phi.target_arity = sq.apex.arity();
    for (int t = 0; t < c; ++t) {
        sq.into_c.phi.blocks.push_back({t});
        sq.into_c.components.push_back(base.cat().identity(m.tgt.entries[t]));
    }

    sq.into_b.src = cof.tgt;
    sq.into_b.tgt = sq.apex;
    sq.into_b.phi.target_arity = sq.apex.arity();
    sq.into_b.phi.blocks.resize(b);
    sq.into_b.components.assign(b, kNoMor);
    int next_missed = 0;
    for (int j = 0; j < b; ++j) {
        if (phi_of[j] < 0) {
            sq.into_b.phi.blocks[j] = {c + next_missed};
            sq.into_b.components[j] = base.cat().identity(cof.tgt.entries[j]);
            ++next_missed;
            continue;
        }
        const int i = phi_of[j];
        // blocks of m land in the C part, whose apex positions are unchanged
        sq.into_b.phi.blocks[j] = m.phi.blocks[i];
        if (m.phi.blocks[i].empty()) continue;
        auto inv = inverse_of(base.cat(), cof.components[i]);
        if (!inv)
            throw std::logic_error("pushout: cofibration component is not invertible");
        sq.into_b.components[j] = base.cat().compose(m.components[i], *inv);
    }
    return sq;
}

GammaMor pushout_mediating(const FinPermCat& base, const GammaMor& cof,
                           const GammaMor& m, const PushoutSquare& square,
                           const GammaMor& from_b, const GammaMor& from_c) {
    if (from_b.src != cof.tgt || from_c.src != m.tgt || from_b.tgt != from_c.tgt)
        throw std::logic_error("pushout_mediating: cocone endpoints are off");
    ComposeResult via_b = gamma_compose(base, from_b, cof);
    ComposeResult via_c = gamma_compose(base, from_c, m);
    if (!compose_defined(via_b) || !compose_defined(via_c) ||
        !(*composed(via_b) == *composed(via_c)))
        throw std::logic_error("pushout_mediating: cocone does not commute with the span");

    GammaMor out;
    out.src = square.apex;
    out.tgt = from_b.tgt;
    out.phi.target_arity = out.tgt.arity();
    const int c = m.tgt.arity();
    out.phi.blocks.resize(square.apex.arity());
    out.components.assign(square.apex.arity(), kNoMor);
    for (int t = 0; t < c; ++t) {
        out.phi.blocks[t] = from_c.phi.blocks[t];
        out.components[t] = from_c.components[t];
    }
    for (std::size_t r = 0; r < square.missed.size(); ++r) {
        const int j = square.missed[r];
        out.phi.blocks[c + static_cast<int>(r)] = from_b.phi.blocks[j];
        out.components[c + static_cast<int>(r)] = from_b.components[j];
    }
    return out;
}

GammaObj cofiber(const FinPermCat& base, const GammaMor& cof, std::vector<int>* missed) {
    PushoutSquare sq = pushout_along_cofibration(base, cof, gamma_to_zero(cof.src));
    if (missed) *missed = sq.missed;
    return sq.apex;
}

GammaMor splitting_equivalence(const FinPermCat& base, const GammaMor& cof) {
    if (!is_cofibration(base, cof))
        throw std::logic_error("splitting_equivalence: not a cofibration");
    const int a = cof.src.arity();
    const int b = cof.tgt.arity();
    std::vector<int> phi_of(b, -1);
    for (int i = 0; i < a; ++i) phi_of[cof.phi.blocks[i][0]] = i;

    GammaMor out;
    out.src = cof.src;
    out.tgt = cof.tgt;
    out.phi.target_arity = b;
    for (int i = 0; i < a; ++i) {
        out.phi.blocks.push_back(cof.phi.blocks[i]);
        out.components.push_back(cof.components[i]);
    }
    for (int j = 0; j < b; ++j) {
        if (phi_of[j] >= 0) continue;
        out.src.entries.push_back(cof.tgt.entries[j]);
        out.phi.blocks.push_back({j});
        out.components.push_back(base.cat().identity(cof.tgt.entries[j]));
    }
    return out;
}

/* ---------------- enumeration ---------------- */

int TruncatedGammaView::object_index(const GammaObj& a) const {
    auto it = std::lower_bound(objects.begin(), objects.end(), a,
                               [](const GammaObj& x, const GammaObj& y) {
                                   return std::pair(x.arity(), x.entries) <
                                          std::pair(y.arity(), y.entries);
                               });
    if (it == objects.end() || !(*it == a)) return -1;
    return static_cast<int>(it - objects.begin());
}

int TruncatedGammaView::morphism_index(const GammaMor& m) const {
    int s = object_index(m.src);
    int t = object_index(m.tgt);
    if (s < 0 || t < 0) return -1;
    for (int id : by_pair[s][t])
        if (morphisms[id] == m) return id;
    return -1;
}

const std::vector<int>& TruncatedGammaView::hom_ids(int src_idx, int tgt_idx) const {
    return by_pair[src_idx][tgt_idx];
}

TruncatedGammaView enumerate_truncated(const FinPermCat& base, int max_len,
                                       std::int64_t max_morphisms) {
    TruncatedGammaView view;
    view.base = &base;
    view.max_len = max_len;
    const int n = base.cat().num_objects();

    for (int len = 0; len <= max_len; ++len) {
        if (len > 0 && n == 0) break;
        std::vector<int> idx(len, 0);
        while (true) {
            GammaObj obj;
            obj.entries.assign(idx.begin(), idx.end());
            view.objects.push_back(std::move(obj));
            int pos = len - 1;
            while (pos >= 0 && idx[pos] == n - 1) idx[pos--] = 0;
            if (pos < 0) break;
            ++idx[pos];
        }
    }

    const int N = static_cast<int>(view.objects.size());
    view.by_pair.assign(N, std::vector<std::vector<int>>(N));

    for (int si = 0; si < N; ++si) {
        const GammaObj& A = view.objects[si];
        const int a = A.arity();
        for (int ti = 0; ti < N; ++ti) {
            const GammaObj& B = view.objects[ti];
            const int b = B.arity();
            // per source position: every subset of [b] with its hom-set
            struct Option {
                std::vector<int> block;
                std::vector<MorId> homs;   // empty block: single "no component"
            };
            std::vector<std::vector<Option>> options(a);
            bool impossible = false;
            for (int i = 0; i < a && !impossible; ++i) {
                for (unsigned mask = 0; mask < (1u << b); ++mask) {
                    Option opt;
                    for (int j = 0; j < b; ++j)
                        if (mask & (1u << j)) opt.block.push_back(j);
                    if (opt.block.empty()) {
                        opt.homs.push_back(kNoMor);
                        options[i].push_back(std::move(opt));
                        continue;
                    }
                    std::vector<ObjId> objs;
                    for (int j : opt.block) objs.push_back(B.entries[j]);
                    ObjId target = base.tensor_power(objs);
                    opt.homs = base.cat().hom(A.entries[i], target);
                    if (!opt.homs.empty()) options[i].push_back(std::move(opt));
                }
                if (options[i].empty()) impossible = true;
            }
            if (impossible) continue;

            std::vector<std::size_t> opt_pick(a, 0), hom_pick(a, 0);
            while (true) {
                GammaMor m;
                m.src = A;
                m.tgt = B;
                m.phi.target_arity = b;
                m.phi.blocks.resize(a);
                m.components.assign(a, kNoMor);
                for (int i = 0; i < a; ++i) {
                    const Option& opt = options[i][opt_pick[i]];
                    m.phi.blocks[i] = opt.block;
                    m.components[i] = opt.homs[hom_pick[i]];
                }
                if (static_cast<std::int64_t>(view.morphisms.size()) >= max_morphisms)
                    throw BudgetExceeded("morphism enumeration budget exceeded at " +
                                         std::to_string(max_morphisms));
                view.by_pair[si][ti].push_back(static_cast<int>(view.morphisms.size()));
                view.morphisms.push_back(std::move(m));

                int pos = a - 1;
                while (pos >= 0) {
                    if (++hom_pick[pos] < options[pos][opt_pick[pos]].homs.size()) break;
                    hom_pick[pos] = 0;
                    if (++opt_pick[pos] < options[pos].size()) break;
                    opt_pick[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    return view;
}

bool check_gluing_instance(const FinPermCat& base, const GluingDiagram& d, Section& sec) {
    auto inst = [&]() {
        return describe(base, d.wa) + " under spans " + describe(base, d.cof1) + " / " +
               describe(base, d.cof2);
    };
    ComposeResult top = gamma_compose(base, d.wb, d.cof1);
    ComposeResult top2 = gamma_compose(base, d.cof2, d.wa);
    ComposeResult bot = gamma_compose(base, d.wc, d.m1);
    ComposeResult bot2 = gamma_compose(base, d.m2, d.wa);
    if (!compose_defined(top) || !compose_defined(top2) || !compose_defined(bot) ||
        !compose_defined(bot2) || !(*composed(top) == *composed(top2)) ||
        !(*composed(bot) == *composed(bot2))) {
        sec.fail("gluing_precondition", inst(), "input squares do not commute");
        return false;
    }
    PushoutSquare p1 = pushout_along_cofibration(base, d.cof1, d.m1);
    PushoutSquare p2 = pushout_along_cofibration(base, d.cof2, d.m2);
    GammaMor leg_b = gamma_compose_strict(base, p2.into_b, d.wb);
    GammaMor leg_c = gamma_compose_strict(base, p2.into_c, d.wc);
    GammaMor induced = pushout_mediating(base, d.cof1, d.m1, p1, leg_b, leg_c);
    if (!is_weak_equivalence(induced)) {
        sec.fail("gluing", inst(), "induced map of pushouts " + describe(base, induced) +
                                       " is not a weak equivalence");
        return false;
    }
    sec.pass();
    return true;
}

std::string describe(const FinPermCat& base, const GammaObj& a) {
    std::ostringstream out;
    out << "(";
    for (int i = 0; i < a.arity(); ++i) {
        if (i) out << ",";
        out << base.cat().object_name(a.entries[i]);
    }
    out << ")";
    return out.str();
}

std::string describe(const FinPermCat& base, const GammaMor& m) {
    std::ostringstream out;
    out << describe(base, m.src) << "->" << describe(base, m.tgt) << "[";
    for (int i = 0; i < m.phi.source_arity(); ++i) {
        if (i) out << ";";
        out << "{";
        for (std::size_t t = 0; t < m.phi.blocks[i].size(); ++t) {
            if (t) out << ",";
            out << m.phi.blocks[i][t] + 1;
        }
        out << "}";
        if (m.components[i] != kNoMor)
            out << ":" << base.cat().morphism_name(m.components[i]);
    }
    out << "]";
    return out.str();
}

}  // namespace gammak
