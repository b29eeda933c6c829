#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "suppnet/io.hpp"
#include "suppnet/model.hpp"

namespace suppnet {

/// One product category of a geo network: its role assignment over the shared
/// facilities plus the direct supplier->demander routes.
struct GeoProduct {
    std::string name;
    std::vector<int> suppliers;
    std::vector<int> demanders;
    Network direct;  // over a product-specific setup sharing the facility coordinates
};

struct GeoNetwork {
    std::vector<std::pair<double, double>> facilities;
    std::vector<GeoProduct> products;
};

/// Loads the geo-network schema:
///   {"facilities":[{"id","x","y"}],
///    "products":[{"name","suppliers":[ids],"demanders":[ids],"routes":[[u,v],...]}]}
/// Facility ids must be contiguous from 0. Every product yields a setup in
/// which its suppliers are producers, its demanders are demanders, and all
/// other facilities are intermediates.
inline GeoNetwork import_geo_network(const std::string& path) {
    const nlohmann::json doc = detail::parse_file(path);
    GeoNetwork geo;

    if (!doc.contains("facilities") || !doc["facilities"].is_array())
        throw SchemaError(path + ": missing array field 'facilities'");
    const auto& jf = doc["facilities"];
    geo.facilities.resize(jf.size());
    std::vector<char> seen(jf.size(), 0);
    for (std::size_t i = 0; i < jf.size(); ++i) {
        const std::string ctx = path + ": facilities[" + std::to_string(i) + "]";
        const int id = detail::field<int>(jf[i], "id", ctx);
        if (id < 0 || static_cast<std::size_t>(id) >= jf.size() || seen[static_cast<std::size_t>(id)])
            throw SchemaError(ctx + ": facility ids must be unique and contiguous from 0");
        seen[static_cast<std::size_t>(id)] = 1;
        geo.facilities[static_cast<std::size_t>(id)] = {detail::field<double>(jf[i], "x", ctx),
                                                        detail::field<double>(jf[i], "y", ctx)};
    }

    if (!doc.contains("products") || !doc["products"].is_array())
        throw SchemaError(path + ": missing array field 'products'");
    for (std::size_t p = 0; p < doc["products"].size(); ++p) {
        const auto& jp = doc["products"][p];
        const std::string ctx = path + ": products[" + std::to_string(p) + "]";
        GeoProduct product;
        product.name = detail::field<std::string>(jp, "name", ctx);
        product.suppliers = detail::field<std::vector<int>>(jp, "suppliers", ctx);
        product.demanders = detail::field<std::vector<int>>(jp, "demanders", ctx);

        auto setup = std::make_shared<Setup>();
        setup->nodes.resize(geo.facilities.size());
        for (std::size_t i = 0; i < geo.facilities.size(); ++i) {
            Node& n = setup->nodes[i];
            n.id = static_cast<int>(i);
            n.x = geo.facilities[i].first;
            n.y = geo.facilities[i].second;
            n.role = NodeRole::Intermediate;
        }
        auto assign = [&](const std::vector<int>& ids, NodeRole role, const char* what) {
            for (int id : ids) {
                if (id < 0 || static_cast<std::size_t>(id) >= setup->nodes.size())
                    throw SchemaError(ctx + ": " + what + " id " + std::to_string(id) + " out of range");
                if (setup->nodes[static_cast<std::size_t>(id)].role != NodeRole::Intermediate)
                    throw SchemaError(ctx + ": facility " + std::to_string(id) +
                                      " has conflicting roles");
                setup->nodes[static_cast<std::size_t>(id)].role = role;
            }
        };
        assign(product.suppliers, NodeRole::Producer, "supplier");
        assign(product.demanders, NodeRole::Demander, "demander");
        try {
            setup->validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError(ctx + ": " + e.what());
        }

        std::vector<Edge> routes;
        if (!jp.contains("routes") || !jp["routes"].is_array())
            throw SchemaError(ctx + ": missing array field 'routes'");
        for (std::size_t k = 0; k < jp["routes"].size(); ++k) {
            const auto& jr = jp["routes"][k];
            if (!jr.is_array() || jr.size() != 2)
                throw SchemaError(ctx + ": routes[" + std::to_string(k) + "] must be a [u, v] pair");
            routes.push_back(Edge{jr[0].get<int>(), jr[1].get<int>()});
        }
        try {
            product.direct = Network(std::move(setup), std::move(routes));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(ctx + ": " + e.what());
        }
        geo.products.push_back(std::move(product));
    }
    return geo;
}

/// How the path-length budget of the neighborhood expansion is derived from
/// the direct-link length L: (1 + t) * L (default), or the literal t * L.
enum class ExpandBudget { OnePlusT, TTimes };

/// Adds, for every producer->demander direct route of length L, all paths of
/// at most 3 edges from that producer to that demander whose total Euclidean
/// length stays within the budget. Any facility may serve as a relay. The
/// output edge set is a superset of the input's.
inline Network expand_neighborhood(const Network& sub, double t,
                                   ExpandBudget budget = ExpandBudget::OnePlusT) {
    if (t < 0.0) throw std::invalid_argument("neighborhood size t must be >= 0");
    const Setup& setup = sub.setup();
    const int n = setup.size();

    std::vector<Edge> edges = sub.edges();
    auto add_edge = [&edges](int u, int v) {
        if (u != v) edges.push_back(Edge{u, v});
    };

    for (const Edge& route : sub.edges()) {
        const int p = route.from, q = route.to;
        if (setup.nodes[static_cast<std::size_t>(p)].role != NodeRole::Producer) continue;
        if (setup.nodes[static_cast<std::size_t>(q)].role != NodeRole::Demander) continue;
        const double direct_len = setup.distance(p, q);
        const double limit =
            (budget == ExpandBudget::OnePlusT ? (1.0 + t) * direct_len : t * direct_len) + 1e-12;

        for (int i = 0; i < n; ++i) {
            if (i == p || i == q) continue;
            const double leg_pi = setup.distance(p, i);
            if (leg_pi > limit) continue;
            if (leg_pi + setup.distance(i, q) <= limit) {
                add_edge(p, i);
                add_edge(i, q);
            }
            for (int j = 0; j < n; ++j) {
                if (j == p || j == q || j == i) continue;
                if (leg_pi + setup.distance(i, j) + setup.distance(j, q) <= limit) {
                    add_edge(p, i);
                    add_edge(i, j);
                    add_edge(j, q);
                }
            }
        }
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Network(sub.setup_ptr(), std::move(edges));
}

}  // namespace suppnet
