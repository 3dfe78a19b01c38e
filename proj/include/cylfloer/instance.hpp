#pragma once

#include "cylfloer/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cylfloer {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or geometrically unrealizable input. CLI exit code 1.
struct ValidationError : Error {
    using Error::Error;
};
struct ReconstructionConflict : ValidationError {
    using ValidationError::ValidationError;
};
struct NonExact : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidTarget : ValidationError {
    using ValidationError::ValidationError;
};
struct NonPositiveWeight : ValidationError {
    using ValidationError::ValidationError;
};
struct BaseCase : ValidationError {
    using ValidationError::ValidationError;
};
struct GenerationExhausted : Error {
    using Error::Error;
};

// A mathematical identity the engine relies on failed to hold. Either a bug
// or a genuine counterexample; the offending instance is attached so the CLI
// can archive it. Exit code 2.
struct InvariantViolation : Error {
    InvariantViolation(const std::string& what, std::string instance_json = {})
        : Error(what), offending_instance(std::move(instance_json)) {}
    std::string offending_instance;
};
struct OracleMismatch : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

// Face area: strictly positive rational, or unbounded (root faces only).
struct Weight {
    std::optional<Rational> finite;

    static Weight unbounded() { return Weight{}; }
    static Weight of(const Rational& r) { return Weight{r}; }

    bool is_unbounded() const { return !finite.has_value(); }
    const Rational& value() const {
        if (!finite) throw Error("Weight: unbounded has no finite value");
        return *finite;
    }
    std::string str() const { return finite ? finite->str() : std::string("unbounded"); }

    friend bool operator==(const Weight& a, const Weight& b) { return a.finite == b.finite; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
};

using FaceId = std::string;

// Oriented, labeled tree edge. `up`/`down` name the faces above and below the
// base-circle segment the edge stands for; the orientation is always up -> down.
struct TreeEdge {
    int label = 0; // 1..2n
    FaceId up;
    FaceId down;
};

struct FaceArea {
    FaceId id;
    Weight area;
};

struct RootedTree {
    FaceId root;
    std::vector<FaceArea> vertices;
    std::vector<TreeEdge> edges;
};

// A transverse equator pair encoded as its weighted two-rooted-tree diagram.
// `top` holds the face touching the upper cylinder boundary, `bottom` the lower.
struct Instance {
    int n = 0; // half the number of intersection points
    RootedTree top;
    RootedTree bottom;

    int points() const { return 2 * n; }
};

inline constexpr const char* kFormatTag = "cyl-floer/1";
inline constexpr int kMaxN = 31; // keeps Z2 chains in one 64-bit word

// --- canonical form / equality ------------------------------------------------

inline void canonicalize(RootedTree& t) {
    std::sort(t.vertices.begin(), t.vertices.end(),
              [](const FaceArea& a, const FaceArea& b) { return a.id < b.id; });
    std::sort(t.edges.begin(), t.edges.end(),
              [](const TreeEdge& a, const TreeEdge& b) { return a.label < b.label; });
}

inline Instance canonical(Instance inst) {
    canonicalize(inst.top);
    canonicalize(inst.bottom);
    return inst;
}

inline bool operator==(const TreeEdge& a, const TreeEdge& b) {
    return a.label == b.label && a.up == b.up && a.down == b.down;
}
inline bool operator==(const FaceArea& a, const FaceArea& b) {
    return a.id == b.id && a.area == b.area;
}
inline bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.root == b.root && a.vertices == b.vertices && a.edges == b.edges;
}
inline bool same_instance(const Instance& a, const Instance& b) {
    Instance ca = canonical(a), cb = canonical(b);
    return ca.n == cb.n && ca.top == cb.top && ca.bottom == cb.bottom;
}

// Cyclic relabeling: old label l becomes ((l-1-r) mod 2n)+1; point s_{r+1}
// becomes the new s_1.
inline Instance rotate_labels(const Instance& inst, int r) {
    Instance out = inst;
    int m = 2 * inst.n;
    auto rot = [&](int l) { return ((l - 1 - r) % m + m) % m + 1; };
    for (auto* tree : {&out.top, &out.bottom})
        for (auto& e : tree->edges) e.label = rot(e.label);
    return out;
}

// --- JSON ----------------------------------------------------------------------

namespace detail {

inline void reject_unknown_keys(const nlohmann::ordered_json& j,
                                std::initializer_list<const char*> allowed,
                                const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ValidationError(std::string("unknown field '") + it.key() + "' in " + where);
    }
}

inline Weight parse_weight(const nlohmann::ordered_json& j, const char* where) {
    if (!j.is_string()) throw ValidationError(std::string("area must be a string in ") + where);
    std::string s = j.get<std::string>();
    if (s == "unbounded") return Weight::unbounded();
    try {
        return Weight::of(Rational::parse(s));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " in " + where);
    }
}

inline RootedTree parse_tree(const nlohmann::ordered_json& j, const char* where) {
    if (!j.is_object()) throw ValidationError(std::string(where) + " must be an object");
    reject_unknown_keys(j, {"root", "vertices", "edges"}, where);
    if (!j.contains("root") || !j.contains("vertices") || !j.contains("edges"))
        throw ValidationError(std::string(where) + " needs root, vertices, edges");
    RootedTree t;
    t.root = j.at("root").get<std::string>();
    for (const auto& v : j.at("vertices")) {
        reject_unknown_keys(v, {"id", "area"}, "vertex");
        if (!v.contains("id") || !v.contains("area"))
            throw ValidationError("vertex needs id and area");
        t.vertices.push_back({v.at("id").get<std::string>(), parse_weight(v.at("area"), "vertex area")});
    }
    for (const auto& e : j.at("edges")) {
        reject_unknown_keys(e, {"label", "up", "down"}, "edge");
        if (!e.contains("label") || !e.contains("up") || !e.contains("down"))
            throw ValidationError("edge needs label, up, down");
        if (!e.at("label").is_number_integer()) throw ValidationError("edge label must be an integer");
        t.edges.push_back({e.at("label").get<int>(), e.at("up").get<std::string>(),
                           e.at("down").get<std::string>()});
    }
    return t;
}

inline nlohmann::ordered_json tree_to_json(const RootedTree& tree) {
    nlohmann::ordered_json j;
    j["root"] = tree.root;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : tree.vertices)
        j["vertices"].push_back({{"id", v.id}, {"area", v.area.str()}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : tree.edges)
        j["edges"].push_back({{"label", e.label}, {"up", e.up}, {"down", e.down}});
    return j;
}

} // namespace detail

inline nlohmann::ordered_json to_json(const Instance& inst) {
    Instance c = canonical(inst);
    nlohmann::ordered_json j;
    j["format"] = kFormatTag;
    j["n"] = c.n;
    j["trees"] = {{"top", detail::tree_to_json(c.top)}, {"bottom", detail::tree_to_json(c.bottom)}};
    return j;
}

inline std::string serialize_instance(const Instance& inst) {
    return to_json(inst).dump(2) + "\n";
}

inline Instance parse_instance(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("instance file must be a JSON object");
    detail::reject_unknown_keys(j, {"format", "n", "trees"}, "instance");
    if (!j.contains("format") || j.at("format") != kFormatTag)
        throw ValidationError(std::string("missing or unsupported format tag, expected \"") +
                              kFormatTag + "\"");
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw ValidationError("missing integer field n");
    Instance inst;
    inst.n = j.at("n").get<int>();
    if (inst.n < 1 || inst.n > kMaxN)
        throw ValidationError("n must be between 1 and " + std::to_string(kMaxN));
    if (!j.contains("trees") || !j.at("trees").is_object())
        throw ValidationError("missing trees object");
    detail::reject_unknown_keys(j.at("trees"), {"top", "bottom"}, "trees");
    if (!j.at("trees").contains("top") || !j.at("trees").contains("bottom"))
        throw ValidationError("trees needs top and bottom");
    inst.top = detail::parse_tree(j.at("trees").at("top"), "trees.top");
    inst.bottom = detail::parse_tree(j.at("trees").at("bottom"), "trees.bottom");
    return inst;
}

} // namespace cylfloer
