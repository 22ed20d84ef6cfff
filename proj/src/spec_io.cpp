#include "gammak/spec_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gammak {

using nlohmann::ordered_json;

SpecError::SpecError(std::string msg, std::string where_)
    : std::runtime_error(msg + " (at " + where_ + ")"), where(std::move(where_)) {}

namespace {

void require_fields(const ordered_json& j, const std::set<std::string>& allowed,
                    const std::set<std::string>& required, const std::string& where) {
    if (!j.is_object()) throw SpecError("expected an object", where);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw SpecError("unknown field '" + it.key() + "'", where);
    for (const std::string& r : required)
        if (!j.contains(r)) throw SpecError("missing field '" + r + "'", where);
}

std::string get_string(const ordered_json& j, const std::string& key,
                       const std::string& where) {
    if (!j.at(key).is_string())
        throw SpecError("field '" + key + "' must be a string", where);
    return j.at(key).get<std::string>();
}

std::vector<std::string> get_string_array(const ordered_json& j, const std::string& key,
                                          const std::string& where) {
    if (!j.at(key).is_array())
        throw SpecError("field '" + key + "' must be an array", where);
    std::vector<std::string> out;
    int i = 0;
    for (const auto& e : j.at(key)) {
        if (!e.is_string())
            throw SpecError("entry must be a string", where + "/" + key + "/" +
                                                          std::to_string(i));
        out.push_back(e.get<std::string>());
        ++i;
    }
    return out;
}

}  // namespace

CategorySpec parse_spec(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("malformed JSON: ") + e.what(), "/");
    }
    require_fields(j,
                   {"name", "objects", "morphisms", "compose", "unit", "tensor_obj",
                    "tensor_mor", "symmetry", "waldhausen"},
                   {"name", "objects", "morphisms", "compose"}, "/");

    CategorySpec spec;
    spec.name = get_string(j, "name", "/");
    spec.objects = get_string_array(j, "objects", "/");

    int i = 0;
    for (const auto& m : j.at("morphisms")) {
        std::string where = "/morphisms/" + std::to_string(i++);
        require_fields(m, {"name", "src", "tgt"}, {"name", "src", "tgt"}, where);
        spec.morphisms.push_back({get_string(m, "name", where),
                                  get_string(m, "src", where),
                                  get_string(m, "tgt", where)});
    }
    i = 0;
    for (const auto& c : j.at("compose")) {
        std::string where = "/compose/" + std::to_string(i++);
        require_fields(c, {"g", "f", "eq"}, {"g", "f", "eq"}, where);
        spec.compose.push_back({get_string(c, "g", where), get_string(c, "f", where),
                                get_string(c, "eq", where)});
    }

    if (j.contains("unit")) spec.unit = get_string(j, "unit", "/");
    if (j.contains("tensor_obj")) {
        i = 0;
        for (const auto& t : j.at("tensor_obj")) {
            std::string where = "/tensor_obj/" + std::to_string(i++);
            require_fields(t, {"a", "b", "eq"}, {"a", "b", "eq"}, where);
            spec.tensor_obj.push_back({get_string(t, "a", where),
                                       get_string(t, "b", where),
                                       get_string(t, "eq", where)});
        }
    }
    if (j.contains("tensor_mor")) {
        i = 0;
        for (const auto& t : j.at("tensor_mor")) {
            std::string where = "/tensor_mor/" + std::to_string(i++);
            require_fields(t, {"f", "g", "eq"}, {"f", "g", "eq"}, where);
            spec.tensor_mor.push_back({get_string(t, "f", where),
                                       get_string(t, "g", where),
                                       get_string(t, "eq", where)});
        }
    }
    if (j.contains("symmetry")) {
        i = 0;
        for (const auto& s : j.at("symmetry")) {
            std::string where = "/symmetry/" + std::to_string(i++);
            require_fields(s, {"a", "b", "eq"}, {"a", "b", "eq"}, where);
            spec.symmetry.push_back({get_string(s, "a", where),
                                     get_string(s, "b", where),
                                     get_string(s, "eq", where)});
        }
    }
    if ((!spec.tensor_obj.empty() || !spec.tensor_mor.empty() ||
         !spec.symmetry.empty()) &&
        !spec.unit)
        throw SpecError("tensor tables given without a unit", "/");

    if (j.contains("waldhausen")) {
        const auto& w = j.at("waldhausen");
        std::string where = "/waldhausen";
        require_fields(w, {"zero", "cofibrations", "weak_equivalences", "wedges"},
                       {"zero", "cofibrations", "weak_equivalences"}, where);
        CategorySpec::WaldBlock blk;
        blk.zero = get_string(w, "zero", where);
        blk.cofibrations = get_string_array(w, "cofibrations", where);
        blk.weak_equivalences = get_string_array(w, "weak_equivalences", where);
        if (w.contains("wedges")) {
            i = 0;
            for (const auto& e : w.at("wedges")) {
                std::string ewhere = where + "/wedges/" + std::to_string(i++);
                require_fields(e, {"a", "b", "obj", "inl", "inr"},
                               {"a", "b", "obj", "inl", "inr"}, ewhere);
                blk.wedges.push_back({get_string(e, "a", ewhere),
                                      get_string(e, "b", ewhere),
                                      get_string(e, "obj", ewhere),
                                      get_string(e, "inl", ewhere),
                                      get_string(e, "inr", ewhere)});
            }
        }
        spec.waldhausen = std::move(blk);
    }
    return spec;
}

CategorySpec parse_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open '" + path + "'", "/");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string serialize_spec(const CategorySpec& spec) {
    ordered_json j;
    j["name"] = spec.name;
    j["objects"] = spec.objects;
    j["morphisms"] = ordered_json::array();
    for (const auto& m : spec.morphisms)
        j["morphisms"].push_back({{"name", m.name}, {"src", m.src}, {"tgt", m.tgt}});
    j["compose"] = ordered_json::array();
    for (const auto& c : spec.compose)
        j["compose"].push_back({{"g", c.g}, {"f", c.f}, {"eq", c.eq}});
    if (spec.unit) {
        j["unit"] = *spec.unit;
        j["tensor_obj"] = ordered_json::array();
        for (const auto& t : spec.tensor_obj)
            j["tensor_obj"].push_back({{"a", t.a}, {"b", t.b}, {"eq", t.eq}});
        j["tensor_mor"] = ordered_json::array();
        for (const auto& t : spec.tensor_mor)
            j["tensor_mor"].push_back({{"f", t.f}, {"g", t.g}, {"eq", t.eq}});
        j["symmetry"] = ordered_json::array();
        for (const auto& s : spec.symmetry)
            j["symmetry"].push_back({{"a", s.a}, {"b", s.b}, {"eq", s.eq}});
    }
    if (spec.waldhausen) {
        ordered_json w;
        w["zero"] = spec.waldhausen->zero;
        w["cofibrations"] = spec.waldhausen->cofibrations;
        w["weak_equivalences"] = spec.waldhausen->weak_equivalences;
        w["wedges"] = ordered_json::array();
        for (const auto& e : spec.waldhausen->wedges)
            w["wedges"].push_back({{"a", e.a},
                                   {"b", e.b},
                                   {"obj", e.obj},
                                   {"inl", e.inl},
                                   {"inr", e.inr}});
        j["waldhausen"] = std::move(w);
    }
    return j.dump(2) + "\n";
}

/* ---------------- elaboration ---------------- */

namespace {

struct NameTables {
    std::map<std::string, ObjId> obj;
    std::map<std::string, MorId> mor;

    ObjId obj_of(const std::string& name, const std::string& where) const {
        auto it = obj.find(name);
        if (it == obj.end()) throw SpecError("unknown object '" + name + "'", where);
        return it->second;
    }
    MorId mor_of(const std::string& name, const std::string& where) const {
        auto it = mor.find(name);
        if (it == mor.end()) throw SpecError("unknown morphism '" + name + "'", where);
        return it->second;
    }
};

NameTables build_category(const CategorySpec& spec, FinCat& cat) {
    NameTables names;
    for (const std::string& o : spec.objects) {
        if (names.obj.count(o)) throw SpecError("duplicate object '" + o + "'", "/objects");
        ObjId id = cat.add_object(o);
        names.obj[o] = id;
        names.mor["id_" + o] = cat.identity(id);
    }
    for (const auto& m : spec.morphisms) {
        if (names.mor.count(m.name))
            throw SpecError("duplicate morphism '" + m.name + "'", "/morphisms");
        MorId id = cat.add_morphism(m.name, names.obj_of(m.src, "/morphisms"),
                                    names.obj_of(m.tgt, "/morphisms"));
        names.mor[m.name] = id;
    }
    std::set<std::pair<MorId, MorId>> seen;
    for (const auto& c : spec.compose) {
        MorId g = names.mor_of(c.g, "/compose");
        MorId f = names.mor_of(c.f, "/compose");
        MorId eq = names.mor_of(c.eq, "/compose");
        if (!seen.insert({g, f}).second)
            throw SpecError("duplicate composition row " + c.g + " . " + c.f, "/compose");
        cat.set_compose(g, f, eq);
    }
    cat.finalize();
    return names;
}

}  // namespace

FinCat elaborate_category(const CategorySpec& spec) {
    FinCat cat;
    build_category(spec, cat);
    return cat;
}

FinPermCat elaborate_permutative(const CategorySpec& spec) {
    if (!spec.unit) throw SpecError("no unit: the category is not permutative", "/");
    FinCat cat;
    NameTables names = build_category(spec, cat);
    ObjId unit = names.obj_of(*spec.unit, "/unit");
    FinPermCat pcat(std::move(cat), unit);

    std::set<std::pair<ObjId, ObjId>> seen_to;
    for (const auto& t : spec.tensor_obj) {
        ObjId a = names.obj_of(t.a, "/tensor_obj");
        ObjId b = names.obj_of(t.b, "/tensor_obj");
        if (!seen_to.insert({a, b}).second)
            throw SpecError("duplicate tensor row " + t.a + " @ " + t.b, "/tensor_obj");
        pcat.set_tensor_obj(a, b, names.obj_of(t.eq, "/tensor_obj"));
    }
    std::set<std::pair<MorId, MorId>> seen_tm;
    for (const auto& t : spec.tensor_mor) {
        MorId f = names.mor_of(t.f, "/tensor_mor");
        MorId g = names.mor_of(t.g, "/tensor_mor");
        if (!seen_tm.insert({f, g}).second)
            throw SpecError("duplicate tensor row " + t.f + " @ " + t.g, "/tensor_mor");
        pcat.set_tensor_mor(f, g, names.mor_of(t.eq, "/tensor_mor"));
    }
    std::set<std::pair<ObjId, ObjId>> seen_sym;
    for (const auto& s : spec.symmetry) {
        ObjId a = names.obj_of(s.a, "/symmetry");
        ObjId b = names.obj_of(s.b, "/symmetry");
        if (!seen_sym.insert({a, b}).second)
            throw SpecError("duplicate symmetry row " + s.a + ", " + s.b, "/symmetry");
        pcat.set_symmetry(a, b, names.mor_of(s.eq, "/symmetry"));
    }
    pcat.derive_forced_rows();
    return pcat;
}

WaldPresentation elaborate_wald(const CategorySpec& spec) {
    if (!spec.waldhausen) throw SpecError("no waldhausen block", "/");
    WaldPresentation p;
    NameTables names = build_category(spec, p.cat);
    p.name = spec.name;
    const auto& blk = *spec.waldhausen;
    p.zero = names.obj_of(blk.zero, "/waldhausen/zero");
    p.cof.assign(p.cat.num_morphisms(), false);
    p.we.assign(p.cat.num_morphisms(), false);
    for (ObjId a = 0; a < p.cat.num_objects(); ++a) {
        p.cof[p.cat.identity(a)] = true;   // identities are always in both classes
        p.we[p.cat.identity(a)] = true;
    }
    for (const std::string& c : blk.cofibrations)
        p.cof[names.mor_of(c, "/waldhausen/cofibrations")] = true;
    for (const std::string& w : blk.weak_equivalences)
        p.we[names.mor_of(w, "/waldhausen/weak_equivalences")] = true;
    std::set<std::pair<ObjId, ObjId>> seen;
    for (const auto& e : blk.wedges) {
        ObjId a = names.obj_of(e.a, "/waldhausen/wedges");
        ObjId b = names.obj_of(e.b, "/waldhausen/wedges");
        if (!seen.insert({a, b}).second)
            throw SpecError("duplicate wedge row " + e.a + " v " + e.b,
                            "/waldhausen/wedges");
        p.wedges.push_back({a, b, names.obj_of(e.obj, "/waldhausen/wedges"),
                            names.mor_of(e.inl, "/waldhausen/wedges"),
                            names.mor_of(e.inr, "/waldhausen/wedges")});
    }
    return p;
}

}  // namespace gammak
