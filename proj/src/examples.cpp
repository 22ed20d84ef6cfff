#include "gammak/examples.hpp"

#include <map>
#include <string>
#include <vector>

#include "gammak/compare.hpp"

namespace gammak::examples {

CategorySpec c2() {
    CategorySpec s;
    s.name = "c2";
    s.objects = {"e", "x"};
    s.unit = "e";
    s.tensor_obj = {{"x", "x", "e"}};
    s.symmetry = {{"x", "x", "id_e"}};
    return s;
}

CategorySpec x1() {
    CategorySpec s;
    s.name = "x1";
    s.objects = {"e", "x"};
    s.morphisms = {{"t", "x", "x"}};
    s.compose = {{"t", "t", "t"}};
    s.unit = "e";
    s.tensor_obj = {{"x", "x", "x"}};
    s.tensor_mor = {{"t", "t", "t"}, {"t", "id_x", "t"}, {"id_x", "t", "t"}};
    s.symmetry = {{"x", "x", "id_x"}};
    return s;
}

CategorySpec m3() {
    CategorySpec s;
    s.name = "m3";
    s.objects = {"e", "g", "h"};
    s.unit = "e";
    s.tensor_obj = {{"g", "g", "h"}, {"g", "h", "e"}, {"h", "g", "e"}, {"h", "h", "g"}};
    s.symmetry = {
        {"g", "g", "id_h"}, {"g", "h", "id_e"}, {"h", "g", "id_e"}, {"h", "h", "id_g"}};
    return s;
}

namespace {

/* A pointed map p_a -> p_b as the images of the non-basepoint elements
 * 1..a (the basepoint 0 always goes to 0). */
struct PointedMap {
    int a, b;
    std::vector<int> img;
};

std::string map_name(const PointedMap& m) {
    std::string word;
    for (int v : m.img) word += static_cast<char>('0' + v);
    return "m" + std::to_string(m.a) + std::to_string(m.b) + "w" + word;
}

bool is_pointed_identity(const PointedMap& m) {
    if (m.a != m.b) return false;
    for (int i = 0; i < m.a; ++i)
        if (m.img[i] != i + 1) return false;
    return true;
}

bool is_injective(const PointedMap& m) {
    std::vector<bool> hit(m.b + 1, false);
    hit[0] = true;  // the basepoint's image
    for (int v : m.img) {
        if (hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

}  // namespace

CategorySpec pointed_sets() {
    constexpr int kMaxSize = 2;  // non-basepoint elements per set: p0, p1, p2
    CategorySpec s;
    s.name = "pointed_sets";
    for (int n = 0; n <= kMaxSize; ++n) s.objects.push_back("p" + std::to_string(n));

    std::vector<PointedMap> maps;
    std::map<std::string, std::string> by_graph;  // "a>b>img" -> name
    auto graph_key = [](const PointedMap& m) {
        std::string k = std::to_string(m.a) + ">" + std::to_string(m.b) + ">";
        for (int v : m.img) k += static_cast<char>('0' + v);
        return k;
    };
    for (int a = 0; a <= kMaxSize; ++a)
        for (int b = 0; b <= kMaxSize; ++b) {
            std::vector<int> img(a, 0);
            while (true) {
                PointedMap m{a, b, img};
                std::string name =
                    is_pointed_identity(m) ? "id_p" + std::to_string(a) : map_name(m);
                by_graph[graph_key(m)] = name;
                maps.push_back(std::move(m));
                int k = a - 1;
                while (k >= 0 && ++img[k] > b) img[k--] = 0;
                if (k < 0) break;
            }
        }

    for (const PointedMap& m : maps) {
        if (is_pointed_identity(m)) continue;
        s.morphisms.push_back({map_name(m), "p" + std::to_string(m.a),
                               "p" + std::to_string(m.b)});
    }
    for (const PointedMap& g : maps)
        for (const PointedMap& f : maps) {
            if (f.b != g.a) continue;
            if (is_pointed_identity(f) || is_pointed_identity(g)) continue;
            PointedMap h{f.a, g.b, {}};
            for (int i = 0; i < f.a; ++i)
                h.img.push_back(f.img[i] == 0 ? 0 : g.img[f.img[i] - 1]);
            s.compose.push_back({by_graph.at(graph_key(g)), by_graph.at(graph_key(f)),
                                 by_graph.at(graph_key(h))});
        }

    CategorySpec::WaldBlock blk;
    blk.zero = "p0";
    for (const PointedMap& m : maps) {
        if (is_pointed_identity(m)) continue;
        if (is_injective(m)) blk.cofibrations.push_back(map_name(m));
        if (m.a == m.b && is_injective(m)) blk.weak_equivalences.push_back(map_name(m));
    }
    auto inclusion = [&](int a, int b, int offset) {
        // p_a -> p_b shifting the non-basepoint elements up by offset
        PointedMap m{a, b, {}};
        for (int i = 1; i <= a; ++i) m.img.push_back(i + offset);
        return by_graph.at(graph_key(m));
    };
    for (int a = 0; a <= kMaxSize; ++a)
        for (int b = 0; b <= kMaxSize; ++b) {
            if (a + b > kMaxSize) continue;
            blk.wedges.push_back({"p" + std::to_string(a), "p" + std::to_string(b),
                                  "p" + std::to_string(a + b), inclusion(a, a + b, 0),
                                  inclusion(b, a + b, a)});
        }
    s.waldhausen = std::move(blk);
    return s;
}

CategorySpec plus_of(const CategorySpec& base_spec) {
    FinPermCat base = elaborate_permutative(base_spec);
    PlusCat plus = plus_category(base);
    const FinCat& pc = plus.pcat.cat();
    const int n_obj = pc.num_objects();

    CategorySpec out;
    out.name = base_spec.name + "_plus";
    for (ObjId a = 0; a < n_obj; ++a) out.objects.push_back(pc.object_name(a));
    for (MorId f = n_obj; f < pc.num_morphisms(); ++f)
        out.morphisms.push_back(
            {pc.morphism_name(f), pc.object_name(pc.src(f)), pc.object_name(pc.tgt(f))});
    for (MorId g = n_obj; g < pc.num_morphisms(); ++g)
        for (MorId f = n_obj; f < pc.num_morphisms(); ++f) {
            if (!pc.composable(g, f)) continue;
            MorId h = pc.compose_or_hole(g, f);
            if (h == kNoMor) continue;
            out.compose.push_back(
                {pc.morphism_name(g), pc.morphism_name(f), pc.morphism_name(h)});
        }

    const ObjId star = plus.star;
    out.unit = pc.object_name(star);
    for (ObjId a = 0; a < n_obj; ++a)
        for (ObjId b = 0; b < n_obj; ++b) {
            if (a == star || b == star) continue;  // the unit rows re-derive
            ObjId ab = plus.pcat.tensor_obj_or_hole(a, b);
            if (ab != kNoObj)
                out.tensor_obj.push_back(
                    {pc.object_name(a), pc.object_name(b), pc.object_name(ab)});
            MorId beta = plus.pcat.symmetry_or_hole(a, b);
            if (beta != kNoMor)
                out.symmetry.push_back(
                    {pc.object_name(a), pc.object_name(b), pc.morphism_name(beta)});
        }
    for (MorId f = 0; f < pc.num_morphisms(); ++f)
        for (MorId g = 0; g < pc.num_morphisms(); ++g) {
            if (f == plus.star_id || g == plus.star_id) continue;
            if (pc.is_identity(f) && pc.is_identity(g)) continue;  // re-derives
            MorId fg = plus.pcat.tensor_mor_or_hole(f, g);
            if (fg != kNoMor)
                out.tensor_mor.push_back(
                    {pc.morphism_name(f), pc.morphism_name(g), pc.morphism_name(fg)});
        }
    return out;
}

}  // namespace gammak::examples
