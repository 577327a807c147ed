#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusys/group.hpp"

namespace fusys {

using Json = nlohmann::ordered_json;

inline constexpr int kCatalogFormatVersion = 1;

// Named permutation group given by generator image arrays (0-based points).
struct GroupSpec {
    std::string name;
    unsigned degree = 0;
    std::vector<std::vector<unsigned>> generators;

    GroupPtr build(std::size_t element_cap = kDefaultElementCap) const {
        std::vector<Perm> gens;
        gens.reserve(generators.size());
        for (const auto& images : generators) {
            if (images.size() != degree)
                throw InputError("group '" + name + "': generator length " +
                                 std::to_string(images.size()) + " != degree " +
                                 std::to_string(degree));
            try {
                gens.emplace_back(images);
            } catch (const InputError&) {
                throw InputError("group '" + name + "': generator is not a bijection");
            }
        }
        return Group::make(degree, std::move(gens), name, element_cap);
    }
};

class Catalog {
public:
    void add(GroupSpec spec) {
        if (index_.count(spec.name))
            throw InputError("duplicate group name '" + spec.name + "' in catalog");
        index_[spec.name] = specs_.size();
        specs_.push_back(std::move(spec));
    }

    const std::vector<GroupSpec>& specs() const { return specs_; }

    bool has(const std::string& name) const { return index_.count(name) != 0; }

    const GroupSpec& spec(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw InputError("unknown group name '" + name + "'");
        return specs_[it->second];
    }

    GroupPtr group(const std::string& name, std::size_t element_cap = kDefaultElementCap) const {
        return spec(name).build(element_cap);
    }

private:
    std::vector<GroupSpec> specs_;
    std::map<std::string, std::size_t> index_;
};

namespace detail {

// SL(2,3) acting on the 8 nonzero vectors of GF(3)^2; vector (x,y) has
// index 3x + y - 1.
inline std::vector<unsigned> gl23_action(int a, int b, int c, int d) {
    auto norm = [](int v) { return ((v % 3) + 3) % 3; };
    std::vector<unsigned> images(8);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            if (x == 0 && y == 0) continue;
            int nx = norm(a * x + b * y), ny = norm(c * x + d * y);
            images[static_cast<unsigned>(3 * x + y - 1)] =
                static_cast<unsigned>(3 * nx + ny - 1);
        }
    return images;
}

} // namespace detail

// The built-in catalog; available without any file.
inline Catalog builtin_catalog() {
    Catalog cat;
    cat.add({"C2", 2, {{1, 0}}});
    cat.add({"C3", 3, {{1, 2, 0}}});
    cat.add({"C4", 4, {{1, 2, 3, 0}}});
    cat.add({"C5", 5, {{1, 2, 3, 4, 0}}});
    cat.add({"C2xC2", 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}});
    cat.add({"C3xC3", 6, {{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}});
    cat.add({"S3", 3, {{1, 0, 2}, {1, 2, 0}}});
    cat.add({"S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}}});
    cat.add({"A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}}});
    cat.add({"D8", 4, {{1, 2, 3, 0}, {2, 1, 0, 3}}});
    // Q8 by left multiplication on {1,-1,i,-i,j,-j,k,-k}
    cat.add({"Q8", 8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}});
    cat.add({"SL(2,3)", 8, {detail::gl23_action(1, 1, 0, 1), detail::gl23_action(0, -1, 1, 0)}});
    // Frobenius group of order 21: C7 with the x -> 2x multiplier
    cat.add({"C7:C3", 7, {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}}});
    return cat;
}

// --- Serialization -----------------------------------------------------------
//
// Catalog files: {"format": 1, "groups": [{"name", "degree", "generators"}]}

inline Catalog catalog_from_json(const Json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("format"))
        throw InputError(origin + ": missing 'format' header");
    if (j["format"] != kCatalogFormatVersion)
        throw InputError(origin + ": unsupported format version");
    if (!j.contains("groups") || !j["groups"].is_array())
        throw InputError(origin + ": missing 'groups' array");
    Catalog cat;
    std::size_t i = 0;
    for (const auto& g : j["groups"]) {
        std::string where = origin + ": groups[" + std::to_string(i++) + "]";
        if (!g.is_object() || !g.contains("name") || !g.contains("degree") ||
            !g.contains("generators"))
            throw InputError(where + ": needs fields name, degree, generators");
        GroupSpec spec;
        if (!g["name"].is_string()) throw InputError(where + ": name must be a string");
        spec.name = g["name"].get<std::string>();
        if (!g["degree"].is_number_unsigned() || g["degree"].get<unsigned>() == 0)
            throw InputError(where + ": degree must be a positive integer");
        spec.degree = g["degree"].get<unsigned>();
        for (const auto& gen : g["generators"]) {
            if (!gen.is_array())
                throw InputError(where + ": each generator must be an image array");
            std::vector<unsigned> images;
            for (const auto& v : gen) {
                if (!v.is_number_unsigned())
                    throw InputError(where + ": image entries must be non-negative integers");
                images.push_back(v.get<unsigned>());
            }
            spec.generators.push_back(std::move(images));
        }
        // validate now so errors carry the file location
        try {
            spec.build();
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        } catch (const CapError& e) {
            throw InputError(where + ": " + e.what());
        }
        try {
            cat.add(std::move(spec));
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    return cat;
}

inline Json catalog_to_json(const Catalog& cat) {
    Json j;
    j["format"] = kCatalogFormatVersion;
    j["groups"] = Json::array();
    for (const GroupSpec& s : cat.specs()) {
        Json g;
        g["name"] = s.name;
        g["degree"] = s.degree;
        g["generators"] = s.generators;
        j["groups"].push_back(std::move(g));
    }
    return j;
}

inline std::string canonical_catalog_text(const Catalog& cat) {
    return catalog_to_json(cat).dump(2) + "\n";
}

inline Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Catalog load_catalog(const std::string& path) {
    return catalog_from_json(parse_json_file(path), path);
}

// FNV-1a over the canonical serialization; pins catalog identity in reports.
inline std::string catalog_hash(const Catalog& cat) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_catalog_text(cat)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace fusys
