#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gammak/fincat.hpp"
#include "gammak/wald.hpp"

namespace gammak {

/* Name-level description of a finite category, optionally with a strict
 * symmetric tensor and/or a Waldhausen block. Identities are implicit and
 * always named id_<object>. Rows forced by strictness (unit tensor rows,
 * identity-with-identity tensors, compositions with identities) may be
 * omitted; explicit rows are kept verbatim so deliberately poisoned tables
 * reach the validators. */
struct CategorySpec {
    struct Morphism {
        std::string name, src, tgt;
        bool operator==(const Morphism&) const = default;
    };
    struct Compose {          // g after f equals eq
        std::string g, f, eq;
        bool operator==(const Compose&) const = default;
    };
    struct TensorObj {
        std::string a, b, eq;
        bool operator==(const TensorObj&) const = default;
    };
    struct TensorMor {
        std::string f, g, eq;
        bool operator==(const TensorMor&) const = default;
    };
    struct Symmetry {
        std::string a, b, eq;
        bool operator==(const Symmetry&) const = default;
    };
    struct WedgeRow {
        std::string a, b, obj, inl, inr;
        bool operator==(const WedgeRow&) const = default;
    };
    struct WaldBlock {
        std::string zero;
        std::vector<std::string> cofibrations;
        std::vector<std::string> weak_equivalences;
        std::vector<WedgeRow> wedges;
        bool operator==(const WaldBlock&) const = default;
    };

    std::string name;
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<Compose> compose;

    std::optional<std::string> unit;
    std::vector<TensorObj> tensor_obj;
    std::vector<TensorMor> tensor_mor;
    std::vector<Symmetry> symmetry;

    std::optional<WaldBlock> waldhausen;

    bool operator==(const CategorySpec&) const = default;
    bool has_permutative() const { return unit.has_value(); }
};

/* Structural input problems: malformed JSON, unknown fields, dangling
 * names, duplicate table rows. Distinct from algebraic violations, which
 * the validators report as findings. */
struct SpecError : std::runtime_error {
    std::string where;   // JSON-pointer-ish location
    SpecError(std::string msg, std::string where_);
};

CategorySpec parse_spec(const std::string& json_text);
CategorySpec parse_spec_file(const std::string& path);
std::string serialize_spec(const CategorySpec& spec);

/* Name resolution plus forced-row derivation. Throws SpecError on dangling
 * names or duplicates; leaves holes (= validator findings) for missing
 * non-derivable rows. */
FinCat elaborate_category(const CategorySpec& spec);
FinPermCat elaborate_permutative(const CategorySpec& spec);
WaldPresentation elaborate_wald(const CategorySpec& spec);

}  // namespace gammak
