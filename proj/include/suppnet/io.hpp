#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "suppnet/model.hpp"
#include "suppnet/motifs.hpp"

namespace suppnet {

/// Raised on malformed input documents; message carries file and field context.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    try {
        return nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

template <typename T>
T field(const nlohmann::json& j, const std::string& name, const std::string& context) {
    if (!j.contains(name)) throw SchemaError(context + ": missing field '" + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(context + ": field '" + name + "': " + e.what());
    }
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const Setup& setup) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const Node& n : setup.nodes) {
        doc["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}, {"role", to_string(n.role)}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    doc["rng_seed"] = setup.rng_seed;
    return doc;
}

/// Network document: the setup's nodes plus the edge list, edges sorted
/// lexicographically (the Network invariant already guarantees the order).
inline nlohmann::ordered_json to_json(const Network& net) {
    nlohmann::ordered_json doc = to_json(net.setup());
    for (const Edge& e : net.edges()) doc["edges"].push_back({e.from, e.to});
    return doc;
}

inline Setup setup_from_json(const nlohmann::json& doc, const std::string& context) {
    Setup s;
    if (!doc.contains("nodes")) throw SchemaError(context + ": missing field 'nodes'");
    for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
        const auto& jn = doc["nodes"][i];
        const std::string node_ctx = context + ": nodes[" + std::to_string(i) + "]";
        Node n;
        n.id = detail::field<int>(jn, "id", node_ctx);
        n.x = detail::field<double>(jn, "x", node_ctx);
        n.y = detail::field<double>(jn, "y", node_ctx);
        try {
            n.role = role_from_string(detail::field<std::string>(jn, "role", node_ctx));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(node_ctx + ": " + e.what());
        }
        s.nodes.push_back(n);
    }
    if (doc.contains("rng_seed")) s.rng_seed = doc["rng_seed"].get<std::uint64_t>();
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(context + ": " + e.what());
    }
    return s;
}

inline Setup load_setup(const std::string& path) {
    return setup_from_json(detail::parse_file(path), path);
}

inline Network network_from_json(const nlohmann::json& doc, const std::string& context) {
    auto setup = std::make_shared<Setup>(setup_from_json(doc, context));
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
            const auto& je = doc["edges"][i];
            if (!je.is_array() || je.size() != 2)
                throw SchemaError(context + ": edges[" + std::to_string(i) + "] must be a [u, v] pair");
            edges.push_back(Edge{je[0].get<int>(), je[1].get<int>()});
        }
    }
    try {
        return Network(std::move(setup), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(context + ": " + e.what());
    }
}

inline Network load_network(const std::string& path) {
    return network_from_json(detail::parse_file(path), path);
}

inline void write_json(const nlohmann::ordered_json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << doc.dump(2) << '\n';
}

/// Target-signature file: a JSON array of 13 reals.
inline TargetSignature load_target_signature(const std::string& path) {
    const nlohmann::json doc = detail::parse_file(path);
    if (!doc.is_array() || doc.size() != static_cast<std::size_t>(triads::kClassCount))
        throw SchemaError(path + ": target signature must be an array of 13 reals");
    TargetSignature t;
    for (int i = 0; i < triads::kClassCount; ++i) t.values[static_cast<std::size_t>(i)] = doc[static_cast<std::size_t>(i)].get<double>();
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return t;
}

}  // namespace suppnet
