#include "gammak/ktheory.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace gammak {

namespace {

Int igcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

/* ---------------- Smith normal form ---------------- */

SmithResult smith_normal_form(const IntMatrix& original) {
    IntMatrix m = original;
    const int R = m.rows(), C = m.cols();
    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < C; ++j) std::swap(m.at(a, j), m.at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < R; ++i) std::swap(m.at(i, a), m.at(i, b));
    };

    int t = 0;
    const int limit = std::min(R, C);
    while (t < limit) {
        int pi = -1, pj = -1;
        for (int i = t; i < R && pi < 0; ++i)
            for (int j = t; j < C; ++j)
                if (m.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        while (true) {
            bool dirty = false;
            for (int i = t + 1; i < R; ++i) {
                if (m.at(i, t) == 0) continue;
                Int q = m.at(i, t) / m.at(t, t);
                for (int j = t; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) {
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (int j = t + 1; j < C; ++j) {
                if (m.at(t, j) == 0) continue;
                Int q = m.at(t, j) / m.at(t, t);
                for (int i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            bool fixed_up = false;
            for (int i = t + 1; i < R && !fixed_up; ++i)
                for (int j = t + 1; j < C; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        for (int jj = t; jj < C; ++jj) m.at(t, jj) += m.at(i, jj);
                        fixed_up = true;
                        break;
                    }
            if (!fixed_up) break;
        }
        if (m.at(t, t) < 0)
            for (int j = t; j < C; ++j) m.at(t, j) = -m.at(t, j);
        ++t;
    }

    SmithResult res;
    res.rank = t;
    for (int i = 0; i < t; ++i) res.diagonal.push_back(m.at(i, i));

    if (R <= 4 && C <= 4) {
        std::vector<Int> expect = gcd_of_minors_invariants(original);
        if (expect != res.diagonal)
            throw std::logic_error("smith normal form disagrees with the minors invariants");
    }
    return res;
}

std::vector<Int> gcd_of_minors_invariants(const IntMatrix& m) {
    const int R = m.rows(), C = m.cols();
    const int limit = std::min(R, C);

    // determinant of the submatrix given by row/col index lists, by expansion
    std::function<Int(const std::vector<int>&, const std::vector<int>&)> det =
        [&](const std::vector<int>& rows, const std::vector<int>& cols) -> Int {
        const int k = static_cast<int>(rows.size());
        if (k == 1) return m.at(rows[0], cols[0]);
        Int acc = 0;
        std::vector<int> sub(rows.begin() + 1, rows.end());
        for (int c = 0; c < k; ++c) {
            if (m.at(rows[0], cols[c]) == 0) continue;
            std::vector<int> rest;
            for (int cc = 0; cc < k; ++cc)
                if (cc != c) rest.push_back(cols[cc]);
            Int term = m.at(rows[0], cols[c]) * det(sub, rest);
            if (c % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        return acc;
    };

    std::vector<Int> gk;  // gk[k-1] = gcd of all k x k minors
    for (int k = 1; k <= limit; ++k) {
        Int g = 0;
        std::vector<int> rows(k), cols(k);
        std::iota(rows.begin(), rows.end(), 0);
        bool more_rows = true;
        while (more_rows) {
            std::iota(cols.begin(), cols.end(), 0);
            bool more_cols = true;
            while (more_cols) {
                g = igcd(g, det(rows, cols));
                more_cols = false;
                for (int i = k - 1; i >= 0; --i)
                    if (cols[i] < C - (k - i)) {
                        ++cols[i];
                        for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
                        more_cols = true;
                        break;
                    }
            }
            more_rows = false;
            for (int i = k - 1; i >= 0; --i)
                if (rows[i] < R - (k - i)) {
                    ++rows[i];
                    for (int j = i + 1; j < k; ++j) rows[j] = rows[j - 1] + 1;
                    more_rows = true;
                    break;
                }
        }
        if (g == 0) break;
        gk.push_back(g);
    }

    std::vector<Int> inv;
    Int prev = 1;
    for (const Int& g : gk) {
        inv.push_back(g / prev);
        prev = g;
    }
    return inv;
}

std::string AbGroupInvariants::describe() const {
    std::ostringstream os;
    bool first = true;
    if (rank == 1) {
        os << "Z";
        first = false;
    } else if (rank > 1) {
        os << "Z^" << rank;
        first = false;
    }
    for (const Int& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbGroupInvariants cokernel_invariants(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    AbGroupInvariants inv;
    inv.rank = m.cols() - s.rank;
    for (const Int& d : s.diagonal)
        if (d > 1) inv.torsion.push_back(d);
    return inv;
}

/* ---------------- monoids and group completion ---------------- */

Report validate_monoid(const FinCommMonoid& m) {
    Report rep;
    rep.command = "validate_monoid";
    Section& sec = rep.section("monoid");
    if (static_cast<int>(m.table.size()) != m.size * m.size) {
        sec.fail("table_shape", m.labels.empty() ? "monoid" : m.labels[0],
                 "operation table has the wrong size");
        return rep;
    }
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < m.size; ++b) {
            int r = m.op(a, b);
            if (r < 0 || r >= m.size)
                sec.fail("table_range", std::to_string(a) + "+" + std::to_string(b),
                         "entry out of range");
            else
                sec.pass();
        }
    if (!sec.findings.empty()) return rep;
    for (int a = 0; a < m.size; ++a) {
        if (m.op(m.unit, a) != a || m.op(a, m.unit) != a)
            sec.fail("unit_law", m.labels[a], "unit law fails");
        else
            sec.pass();
    }
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < m.size; ++b) {
            if (m.op(a, b) != m.op(b, a))
                sec.fail("commutativity", m.labels[a] + "+" + m.labels[b],
                         "operation is not commutative");
            else
                sec.pass();
            for (int c = 0; c < m.size; ++c) {
                if (m.op(m.op(a, b), c) != m.op(a, m.op(b, c)))
                    sec.fail("associativity",
                             m.labels[a] + "+" + m.labels[b] + "+" + m.labels[c],
                             "operation is not associative");
                else
                    sec.pass();
            }
        }
    return rep;
}

FinCommMonoid pi0_monoid(const FinPermCat& pcat, Report* rep) {
    const FinCat& cat = pcat.cat();
    const int n = cat.num_objects();
    UnionFind uf(n);
    for (MorId f = 0; f < cat.num_morphisms(); ++f) uf.unite(cat.src(f), cat.tgt(f));

    std::vector<int> comp_of(n), reps;
    std::map<int, int> comp_index;
    for (ObjId a = 0; a < n; ++a) {
        int r = uf.find(a);
        auto it = comp_index.find(r);
        if (it == comp_index.end()) {
            it = comp_index.emplace(r, static_cast<int>(reps.size())).first;
            reps.push_back(a);
        }
        comp_of[a] = it->second;
    }

    FinCommMonoid m;
    m.size = static_cast<int>(reps.size());
    m.unit = comp_of[pcat.unit()];
    m.table.assign(static_cast<std::size_t>(m.size) * m.size, -1);
    for (int a = 0; a < m.size; ++a) m.labels.push_back("[" + cat.object_name(reps[a]) + "]");
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < m.size; ++b)
            m.table[static_cast<std::size_t>(a) * m.size + b] =
                comp_of[pcat.tensor(reps[a], reps[b])];

    if (rep) {
        Section& sec = rep->section("pi0_well_defined");
        for (ObjId x = 0; x < n; ++x)
            for (ObjId y = 0; y < n; ++y) {
                int got = comp_of[pcat.tensor(x, y)];
                int want = m.op(comp_of[x], comp_of[y]);
                if (got != want)
                    sec.fail("pi0_product",
                             cat.object_name(x) + " @ " + cat.object_name(y),
                             "component of the product depends on representatives");
                else
                    sec.pass();
            }
    }
    return m;
}

AbGroupInvariants grothendieck_group(const FinCommMonoid& m) {
    // generators: one per monoid element; relations: the operation table and
    // the vanishing of the unit
    std::vector<std::vector<Int>> rows;
    for (int a = 0; a < m.size; ++a)
        for (int b = a; b < m.size; ++b) {
            std::vector<Int> row(m.size, 0);
            row[a] += 1;
            row[b] += 1;
            row[m.op(a, b)] -= 1;
            rows.push_back(std::move(row));
        }
    {
        std::vector<Int> row(m.size, 0);
        row[m.unit] += 1;
        rows.push_back(std::move(row));
    }
    IntMatrix rel(static_cast<int>(rows.size()), m.size);
    for (int i = 0; i < rel.rows(); ++i)
        for (int j = 0; j < rel.cols(); ++j) rel.at(i, j) = rows[i][j];
    return cokernel_invariants(rel);
}

PairConstructionGroup grothendieck_pairs_oracle(const FinCommMonoid& m) {
    const int n = m.size;
    const int P = n * n;  // pair (a, b) encodes the difference a - b
    auto pid = [&](int a, int b) { return a * n + b; };
    UnionFind uf(P);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (uf.find(pid(a, b)) == uf.find(pid(c, d))) continue;
                    for (int k = 0; k < n; ++k)
                        if (m.op(m.op(a, d), k) == m.op(m.op(c, b), k)) {
                            uf.unite(pid(a, b), pid(c, d));
                            break;
                        }
                }

    std::map<int, int> cls_index;
    std::vector<std::pair<int, int>> rep_pair;
    std::vector<int> cls_of(P);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int r = uf.find(pid(a, b));
            auto it = cls_index.find(r);
            if (it == cls_index.end()) {
                it = cls_index.emplace(r, static_cast<int>(rep_pair.size())).first;
                rep_pair.emplace_back(a, b);
            }
            cls_of[pid(a, b)] = it->second;
        }

    const int order = static_cast<int>(rep_pair.size());
    auto cls_add = [&](int x, int y) {
        auto [a, b] = rep_pair[x];
        auto [c, d] = rep_pair[y];
        return cls_of[pid(m.op(a, c), m.op(b, d))];
    };
    const int zero = cls_of[pid(m.unit, m.unit)];

    PairConstructionGroup g;
    g.order = order;
    for (int mult = 1; mult <= order; ++mult) {
        int count = 0;
        for (int x = 0; x < order; ++x) {
            int acc = zero;
            for (int i = 0; i < mult; ++i) acc = cls_add(acc, x);
            if (acc == zero) ++count;
        }
        g.kill_counts.push_back(count);
    }
    return g;
}

bool matches_oracle(const AbGroupInvariants& inv, const PairConstructionGroup& g,
                    std::string* why) {
    auto explain = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (inv.rank != 0)
        return explain("pair construction gives a finite group but the invariants "
                       "have free rank " +
                       std::to_string(inv.rank));
    Int order = 1;
    for (const Int& d : inv.torsion) order *= d;
    if (order != g.order)
        return explain("orders differ: invariants give " + order.get_str() +
                       ", pair construction gives " + std::to_string(g.order));
    for (std::size_t i = 0; i < g.kill_counts.size(); ++i) {
        const Int mult = static_cast<long>(i + 1);
        Int killed = 1;
        for (const Int& d : inv.torsion) killed *= igcd(mult, d);
        if (killed != g.kill_counts[i])
            return explain("elements killed by " + mult.get_str() + " differ: invariants "
                           "give " +
                           killed.get_str() + ", pair construction gives " +
                           std::to_string(g.kill_counts[i]));
    }
    if (why) why->clear();
    return true;
}

/* ---------------- the two K0 routes ---------------- */

AbGroupInvariants k0_segal(const FinPermCat& pcat, Report* rep) {
    FinCommMonoid m = pi0_monoid(pcat, rep);
    if (rep) {
        Report mv = validate_monoid(m);
        rep->merge(mv);
    }
    return grothendieck_group(m);
}

AbGroupInvariants k0_waldhausen(const GammaWaldView& v, Report* rep) {
    const int n = v.object_count();
    std::vector<std::vector<Int>> rows;
    {
        std::vector<Int> row(n, 0);
        row[v.zero_object()] = 1;
        rows.push_back(std::move(row));
    }
    const FinPermCat& base = v.base();
    int cof_rows = 0, we_rows = 0;
    for (int m = 0; m < v.morphism_count(); ++m) {
        if (v.is_cofibration(m)) {
            GammaObj q = cofiber(base, v.mor(m));
            int qi = v.view().object_index(q);
            if (qi < 0) throw std::logic_error("cofiber escaped the enumerated window");
            std::vector<Int> row(n, 0);
            row[v.mor_src(m)] += 1;
            row[qi] += 1;
            row[v.mor_tgt(m)] -= 1;
            rows.push_back(std::move(row));
            ++cof_rows;
        }
        if (v.is_weak_equivalence(m)) {
            std::vector<Int> row(n, 0);
            row[v.mor_src(m)] += 1;
            row[v.mor_tgt(m)] -= 1;
            rows.push_back(std::move(row));
            ++we_rows;
        }
    }
    if (rep) {
        Section& sec = rep->section("k0_relations");
        sec.pass(cof_rows);
        sec.pass(we_rows);
    }
    IntMatrix rel(static_cast<int>(rows.size()), n);
    for (int i = 0; i < rel.rows(); ++i)
        for (int j = 0; j < rel.cols(); ++j) rel.at(i, j) = rows[i][j];
    return cokernel_invariants(rel);
}

/* ---------------- nerve homology ---------------- */

ChainComplex nerve_chain_complex(const FinCat& cat, int max_dim,
                                 std::int64_t max_generators) {
    ChainComplex cc;
    cc.max_dim = max_dim;
    cc.generators.resize(max_dim + 1);

    std::vector<MorId> arrows;  // the non-identity morphisms
    for (MorId f = 0; f < cat.num_morphisms(); ++f)
        if (!cat.is_identity(f)) arrows.push_back(f);

    // dimension 0: one generator per object, the chain is empty
    cc.generators[0].assign(cat.num_objects(), {});

    std::vector<std::map<std::vector<MorId>, int>> index(max_dim + 1);
    std::int64_t total = cat.num_objects();
    for (int d = 1; d <= max_dim; ++d) {
        std::vector<std::vector<MorId>> gens;
        // depth-first extension of composable non-identity strings
        std::function<void(std::vector<MorId>&)> extend = [&](std::vector<MorId>& chain) {
            if (static_cast<int>(chain.size()) == d) {
                index[d].emplace(chain, static_cast<int>(gens.size()));
                gens.push_back(chain);
                if (++total > max_generators)
                    throw BudgetExceeded("nerve generator budget exceeded");
                return;
            }
            ObjId at = cat.tgt(chain.back());
            for (MorId g : arrows) {
                if (cat.src(g) != at) continue;
                chain.push_back(g);
                extend(chain);
                chain.pop_back();
            }
        };
        for (MorId f : arrows) {
            std::vector<MorId> chain{f};
            extend(chain);
        }
        cc.generators[d] = std::move(gens);
    }

    // boundaries: row per dimension-d generator, column per dimension-(d-1) one
    cc.boundary.resize(max_dim + 1, IntMatrix(0, 0));
    for (int d = 1; d <= max_dim; ++d) {
        IntMatrix b(static_cast<int>(cc.generators[d].size()),
                    static_cast<int>(cc.generators[d - 1].size()));
        for (int r = 0; r < b.rows(); ++r) {
            const std::vector<MorId>& chain = cc.generators[d][r];
            auto add_face = [&](const std::vector<MorId>& face, int sign) {
                auto it = index[d - 1].find(face);
                if (it == index[d - 1].end())
                    throw std::logic_error("face of a nerve chain is not a generator");
                b.at(r, it->second) += sign;
            };
            if (d == 1) {
                b.at(r, cat.tgt(chain[0])) += 1;
                b.at(r, cat.src(chain[0])) -= 1;
            } else {
                int sign = 1;
                {  // drop the first object
                    std::vector<MorId> face(chain.begin() + 1, chain.end());
                    add_face(face, sign);
                }
                for (int i = 1; i < d; ++i) {
                    sign = -sign;
                    MorId comp = cat.compose(chain[i], chain[i - 1]);
                    if (cat.is_identity(comp)) continue;  // degenerate face
                    std::vector<MorId> face;
                    for (int j = 0; j < d; ++j) {
                        if (j == i - 1) {
                            face.push_back(comp);
                            ++j;  // skip the consumed entry
                        } else {
                            face.push_back(chain[j]);
                        }
                    }
                    add_face(face, sign);
                }
                sign = -sign;
                {  // drop the last object
                    std::vector<MorId> face(chain.begin(), chain.end() - 1);
                    add_face(face, sign);
                }
            }
        }
        cc.boundary[d] = std::move(b);
    }

    // the composite of consecutive boundaries must vanish
    for (int d = 2; d <= max_dim; ++d) {
        const IntMatrix& hi = cc.boundary[d];
        const IntMatrix& lo = cc.boundary[d - 1];
        for (int i = 0; i < hi.rows(); ++i)
            for (int k = 0; k < lo.cols(); ++k) {
                Int acc = 0;
                for (int j = 0; j < hi.cols(); ++j) acc += hi.at(i, j) * lo.at(j, k);
                if (acc != 0) throw std::logic_error("boundary squared is nonzero");
            }
    }
    return cc;
}

std::vector<AbGroupInvariants> homology(const ChainComplex& cc) {
    std::vector<SmithResult> snf(cc.max_dim + 1);
    for (int d = 1; d <= cc.max_dim; ++d) snf[d] = smith_normal_form(cc.boundary[d]);
    std::vector<AbGroupInvariants> out;
    for (int d = 0; d < cc.max_dim; ++d) {
        AbGroupInvariants h;
        const int cd = static_cast<int>(cc.generators[d].size());
        const int r_d = d == 0 ? 0 : snf[d].rank;
        const int r_up = snf[d + 1].rank;
        h.rank = cd - r_d - r_up;
        for (const Int& e : snf[d + 1].diagonal)
            if (e > 1) h.torsion.push_back(e);
        out.push_back(std::move(h));
    }
    return out;
}

int weak_equivalence_components(const WaldView& v) {
    UnionFind uf(v.object_count());
    for (int m = 0; m < v.morphism_count(); ++m)
        if (v.is_weak_equivalence(m)) uf.unite(v.mor_src(m), v.mor_tgt(m));
    int count = 0;
    for (int a = 0; a < v.object_count(); ++a)
        if (uf.find(a) == a) ++count;
    return count;
}

}  // namespace gammak
