#include "cylpos/network.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cylpos/errors.hpp"

namespace cylpos {

namespace {

enum class Role { kSource, kSink, kInterior };

struct VertexInfo {
    Role role;
    std::size_t index;  // position in its role's list
};

using VertexIndex = std::unordered_map<VertexId, VertexInfo>;

// Builds the id lookup; returns the first duplicate id if there is one.
std::optional<VertexId> index_vertices(const CylNetwork& n, VertexIndex& out) {
    out.clear();
    out.reserve(n.sources.size() + n.sinks.size() + n.interior.size());
    for (std::size_t i = 0; i < n.sources.size(); ++i)
        if (!out.emplace(n.sources[i].id, VertexInfo{Role::kSource, i}).second) return n.sources[i].id;
    for (std::size_t i = 0; i < n.sinks.size(); ++i)
        if (!out.emplace(n.sinks[i].id, VertexInfo{Role::kSink, i}).second) return n.sinks[i].id;
    for (std::size_t i = 0; i < n.interior.size(); ++i)
        if (!out.emplace(n.interior[i].id, VertexInfo{Role::kInterior, i}).second) return n.interior[i].id;
    return std::nullopt;
}

VertexIndex build_index(const CylNetwork& n) {
    VertexIndex idx;
    if (auto dup = index_vertices(n, idx)) {
        throw InputError("duplicate vertex id " + std::to_string(*dup));
    }
    return idx;
}

Rational layer_via(const CylNetwork& n, const VertexIndex& idx, VertexId id) {
    const auto& info = idx.at(id);
    switch (info.role) {
        case Role::kSource: return Rational(0);
        case Role::kSink: return Rational(1);
        case Role::kInterior: return n.interior[info.index].layer;
    }
    return Rational(0);
}

std::optional<Rational> angle_via(const CylNetwork& n, const VertexIndex& idx, VertexId id) {
    const auto& info = idx.at(id);
    switch (info.role) {
        case Role::kSource: return n.sources[info.index].angle;
        case Role::kSink: return n.sinks[info.index].angle;
        case Role::kInterior: return n.interior[info.index].angle;
    }
    return std::nullopt;
}

// Track of an edge: (layer, lifted angle) points from tail to head.
std::vector<Waypoint> edge_track(const CylNetwork& n, const VertexIndex& idx, const Edge& e) {
    std::vector<Waypoint> track;
    track.reserve(e.via.size() + 2);
    track.push_back({layer_via(n, idx, e.from), *angle_via(n, idx, e.from)});
    track.insert(track.end(), e.via.begin(), e.via.end());
    track.push_back({layer_via(n, idx, e.to), *angle_via(n, idx, e.to) + Rational(e.wind)});
    return track;
}

Rational lifted_angle_at(const std::vector<Waypoint>& track, const Rational& t) {
    for (std::size_t k = 0; k + 1 < track.size(); ++k) {
        const auto& a = track[k];
        const auto& b = track[k + 1];
        if (a.layer <= t && t <= b.layer) {
            return a.angle + (b.angle - a.angle) * ((t - a.layer) / (b.layer - a.layer));
        }
    }
    throw InputError("layer outside the edge's span");
}

Rational floor_of(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return Rational(mpq_class(q));
}

Rational frac_of(const Rational& x) { return x - floor_of(x); }

// Boundary angles must be distinct and, read in list order, cyclically
// sorted (one rotation of the sorted order).
bool cyclically_sorted(const std::vector<BoundaryVertex>& list) {
    std::size_t descents = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& a = *list[i].angle;
        const auto& b = *list[(i + 1) % list.size()].angle;
        if (list.size() > 1 && a == b) return false;
        if (b < a) ++descents;
    }
    return list.size() <= 1 || descents == 1;
}

struct Degrees {
    std::unordered_map<VertexId, std::size_t> in, out;
};

Degrees degrees(const CylNetwork& n) {
    Degrees d;
    for (const auto& e : n.edges) {
        ++d.out[e.from];
        ++d.in[e.to];
    }
    return d;
}

std::size_t get(const std::unordered_map<VertexId, std::size_t>& m, VertexId id) {
    auto it = m.find(id);
    return it == m.end() ? 0 : it->second;
}

Validation violation(ViolationKind kind, std::string detail, std::vector<VertexId> vertices = {},
                     std::optional<std::size_t> edge = std::nullopt) {
    Validation v;
    v.kind = kind;
    v.detail = std::move(detail);
    v.vertices = std::move(vertices);
    v.edge = edge;
    return v;
}

// Iterative DFS; returns a directed cycle in order if one exists.
std::vector<VertexId> find_cycle(const CylNetwork& n) {
    std::unordered_map<VertexId, std::vector<VertexId>> adj;
    for (const auto& e : n.edges) adj[e.from].push_back(e.to);
    std::unordered_map<VertexId, int> color;  // 0 white, 1 on stack, 2 done
    std::unordered_map<VertexId, VertexId> parent;

    std::vector<VertexId> all;
    for (const auto& v : n.sources) all.push_back(v.id);
    for (const auto& v : n.interior) all.push_back(v.id);
    for (const auto& v : n.sinks) all.push_back(v.id);

    for (VertexId root : all) {
        if (color[root] != 0) continue;
        std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& out = adj[v];
            if (next == out.size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            const VertexId w = out[next++];
            if (color[w] == 1) {
                std::vector<VertexId> cycle{w};
                for (VertexId x = v; x != w; x = parent[x]) cycle.push_back(x);
                std::reverse(cycle.begin() + 1, cycle.end());
                return cycle;
            }
            if (color[w] == 0) {
                color[w] = 1;
                parent[w] = v;
                stack.emplace_back(w, 0);
            }
        }
    }
    return {};
}

Validation validate_geometry(const CylNetwork& n, const VertexIndex& idx) {
    std::size_t with_angle = 0;
    std::size_t total = 0;
    auto count = [&](const std::optional<Rational>& a) {
        ++total;
        if (a) ++with_angle;
    };
    for (const auto& v : n.sources) count(v.angle);
    for (const auto& v : n.sinks) count(v.angle);
    for (const auto& v : n.interior) count(v.angle);

    if (with_angle == 0) {
        for (std::size_t i = 0; i < n.edges.size(); ++i) {
            if (n.edges[i].wind != 0 || !n.edges[i].via.empty())
                return violation(ViolationKind::kGeometry, "edge track given without vertex angles", {}, i);
        }
        return {};
    }
    if (with_angle != total) {
        return violation(ViolationKind::kGeometry, "angles given for some vertices but not all");
    }
    auto in_unit = [](const Rational& a) { return a.sign() >= 0 && a < Rational(1); };
    for (const auto& v : n.sources)
        if (!in_unit(*v.angle)) return violation(ViolationKind::kGeometry, "angle outside [0,1)", {v.id});
    for (const auto& v : n.sinks)
        if (!in_unit(*v.angle)) return violation(ViolationKind::kGeometry, "angle outside [0,1)", {v.id});
    for (const auto& v : n.interior)
        if (!in_unit(*v.angle)) return violation(ViolationKind::kGeometry, "angle outside [0,1)", {v.id});
    if (!cyclically_sorted(n.sources))
        return violation(ViolationKind::kGeometry, "source order disagrees with source angles");
    if (!cyclically_sorted(n.sinks))
        return violation(ViolationKind::kGeometry, "sink order disagrees with sink angles");
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
        const auto& e = n.edges[i];
        Rational prev = layer_via(n, idx, e.from);
        for (const auto& w : e.via) {
            if (!(prev < w.layer))
                return violation(ViolationKind::kGeometry, "track waypoints out of layer order", {}, i);
            prev = w.layer;
        }
        if (!(prev < layer_via(n, idx, e.to)))
            return violation(ViolationKind::kGeometry, "track waypoints out of layer order", {}, i);
    }
    return {};
}

std::string join_ids(const std::vector<VertexId>& ids) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " -> " : "") << ids[i];
    return os.str();
}

}  // namespace

Rational CylNetwork::layer_of(VertexId id) const {
    return layer_via(*this, build_index(*this), id);
}

std::optional<Rational> CylNetwork::angle_of(VertexId id) const {
    return angle_via(*this, build_index(*this), id);
}

bool CylNetwork::is_embedded() const {
    auto has = [](const auto& v) { return v.angle.has_value(); };
    return std::all_of(sources.begin(), sources.end(), has) &&
           std::all_of(sinks.begin(), sinks.end(), has) &&
           std::all_of(interior.begin(), interior.end(), has);
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::kNone: return "ok";
        case ViolationKind::kDuplicateVertex: return "duplicate vertex";
        case ViolationKind::kUnknownVertex: return "unknown vertex";
        case ViolationKind::kNonPositiveWeight: return "non-positive weight";
        case ViolationKind::kOrientedLoop: return "oriented loop";
        case ViolationKind::kSourceCondition: return "source condition";
        case ViolationKind::kSinkCondition: return "sink condition";
        case ViolationKind::kInteriorCondition: return "interior vertex is a source or sink";
        case ViolationKind::kLayerOrder: return "layer order";
        case ViolationKind::kGeometry: return "geometry";
    }
    return "?";
}

Validation validate(const CylNetwork& n) {
    VertexIndex idx;
    if (auto dup = index_vertices(n, idx)) {
        return violation(ViolationKind::kDuplicateVertex, "vertex id used twice", {*dup});
    }
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
        const auto& e = n.edges[i];
        if (!idx.count(e.from)) return violation(ViolationKind::kUnknownVertex, "edge tail not declared", {e.from}, i);
        if (!idx.count(e.to)) return violation(ViolationKind::kUnknownVertex, "edge head not declared", {e.to}, i);
        if (e.weight.sign() <= 0)
            return violation(ViolationKind::kNonPositiveWeight, "weight " + e.weight.str(), {e.from, e.to}, i);
    }
    if (auto cycle = find_cycle(n); !cycle.empty()) {
        return violation(ViolationKind::kOrientedLoop, join_ids(cycle) + " -> " + std::to_string(cycle.front()),
                         cycle);
    }
    const Degrees d = degrees(n);
    for (const auto& v : n.sources) {
        if (get(d.in, v.id) != 0)
            return violation(ViolationKind::kSourceCondition, "source has an incoming edge", {v.id});
        if (get(d.out, v.id) == 0)
            return violation(ViolationKind::kSourceCondition, "source has no outgoing edge", {v.id});
    }
    for (const auto& v : n.sinks) {
        if (get(d.out, v.id) != 0)
            return violation(ViolationKind::kSinkCondition, "sink has an outgoing edge", {v.id});
        if (get(d.in, v.id) == 0)
            return violation(ViolationKind::kSinkCondition, "sink has no incoming edge", {v.id});
    }
    for (const auto& v : n.interior) {
        if (get(d.in, v.id) == 0)
            return violation(ViolationKind::kInteriorCondition, "interior vertex has no incoming edge", {v.id});
        if (get(d.out, v.id) == 0)
            return violation(ViolationKind::kInteriorCondition, "interior vertex has no outgoing edge", {v.id});
    }
    for (const auto& v : n.interior) {
        if (v.layer.sign() <= 0 || v.layer >= Rational(1))
            return violation(ViolationKind::kLayerOrder, "interior layer outside (0,1)", {v.id});
    }
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
        const auto& e = n.edges[i];
        if (!(layer_via(n, idx, e.from) < layer_via(n, idx, e.to)))
            return violation(ViolationKind::kLayerOrder, "edge does not move to a larger layer", {e.from, e.to}, i);
    }
    return validate_geometry(n, idx);
}

void require_valid(const CylNetwork& n) {
    const Validation v = validate(n);
    if (!v.ok()) throw InputError("invalid network: " + to_string(v.kind) + ": " + v.detail);
}

bool is_perfect(const CylNetwork& n) {
    require_valid(n);
    const Degrees d = degrees(n);
    auto deg = [&](VertexId id) { return get(d.in, id) + get(d.out, id); };
    for (const auto& v : n.sources)
        if (deg(v.id) != 1) return false;
    for (const auto& v : n.sinks)
        if (deg(v.id) != 1) return false;
    for (const auto& v : n.interior)
        if (deg(v.id) != 3) return false;
    return true;
}

CylNetwork perfectize(const CylNetwork& input) {
    require_valid(input);
    CylNetwork n = input;
    const bool embedded = n.is_embedded();

    VertexId next_id = 0;
    for (const auto& v : n.sources) next_id = std::max(next_id, v.id + 1);
    for (const auto& v : n.sinks) next_id = std::max(next_id, v.id + 1);
    for (const auto& v : n.interior) next_id = std::max(next_id, v.id + 1);

    // Contract interior vertices with one in-edge and one out-edge.
    {
        VertexIndex idx = build_index(n);
        std::vector<bool> drop_vertex(n.interior.size(), false);
        std::vector<bool> dead(n.edges.size(), false);
        for (std::size_t vi = 0; vi < n.interior.size(); ++vi) {
            const VertexId v = n.interior[vi].id;
            std::vector<std::size_t> ins, outs;
            for (std::size_t i = 0; i < n.edges.size(); ++i) {
                if (dead[i]) continue;
                if (n.edges[i].to == v) ins.push_back(i);
                if (n.edges[i].from == v) outs.push_back(i);
            }
            if (ins.size() != 1 || outs.size() != 1) continue;
            Edge& a = n.edges[ins[0]];
            const Edge& b = n.edges[outs[0]];
            Edge merged;
            merged.from = a.from;
            merged.to = b.to;
            merged.weight = a.weight * b.weight;
            if (embedded) {
                merged.via = a.via;
                const Rational lift(a.wind);
                merged.via.push_back({n.interior[vi].layer, *n.interior[vi].angle + lift});
                for (const auto& w : b.via) merged.via.push_back({w.layer, w.angle + lift});
                merged.wind = a.wind + b.wind;
            }
            a = std::move(merged);
            dead[outs[0]] = true;
            drop_vertex[vi] = true;
        }
        std::vector<Edge> kept_edges;
        for (std::size_t i = 0; i < n.edges.size(); ++i)
            if (!dead[i]) kept_edges.push_back(std::move(n.edges[i]));
        n.edges = std::move(kept_edges);
        std::vector<InteriorVertex> kept_vertices;
        for (std::size_t i = 0; i < n.interior.size(); ++i)
            if (!drop_vertex[i]) kept_vertices.push_back(std::move(n.interior[i]));
        n.interior = std::move(kept_vertices);
        (void)idx;
    }

    // Replace a vertex by a comb: merge vertices for the in-edges, then split
    // vertices for the out-edges. `v` is kept only when it is a boundary vertex.
    auto rebuild = [&](VertexId v, Role role, const std::optional<Rational>& angle) {
        std::vector<std::size_t> ins, outs;
        for (std::size_t i = 0; i < n.edges.size(); ++i) {
            if (n.edges[i].to == v) ins.push_back(i);
            if (n.edges[i].from == v) outs.push_back(i);
        }
        const VertexIndex idx = build_index(n);
        Rational lo(0), hi(1);
        for (auto i : ins) lo = std::max(lo, layer_via(n, idx, n.edges[i].from));
        for (auto i : outs) hi = std::min(hi, layer_via(n, idx, n.edges[i].to));

        const std::size_t merges = ins.size() >= 2 ? ins.size() - 1 : 0;
        const std::size_t splits = outs.size() >= 2 ? outs.size() - 1 : 0;
        const std::size_t chain = merges + splits;
        std::vector<VertexId> ids;
        for (std::size_t k = 0; k < chain; ++k) {
            InteriorVertex nv;
            nv.id = next_id++;
            nv.layer = lo + (hi - lo) * Rational(static_cast<long>(k + 1), static_cast<long>(chain + 1));
            nv.angle = angle;
            n.interior.push_back(nv);
            ids.push_back(nv.id);
        }
        auto trim = [&](Edge& e) {
            // Drop waypoints that no longer lie strictly inside the span.
            const VertexIndex j = build_index(n);
            const Rational a = layer_via(n, j, e.from);
            const Rational b = layer_via(n, j, e.to);
            std::erase_if(e.via, [&](const Waypoint& w) { return !(a < w.layer && w.layer < b); });
        };
        auto add_edge = [&](VertexId from, VertexId to) {
            Edge e;
            e.from = from;
            e.to = to;
            e.weight = 1;
            n.edges.push_back(e);
        };

        // Merge part: ins[0], ins[1] -> ids[0]; ids[k-1], ins[k+1] -> ids[k].
        VertexId stream_end = v;  // vertex carrying the merged flow
        if (merges > 0) {
            n.edges[ins[0]].to = ids[0];
            for (std::size_t k = 0; k < merges; ++k) {
                n.edges[ins[k + 1]].to = ids[k];
                if (k > 0) add_edge(ids[k - 1], ids[k]);
            }
            stream_end = ids[merges - 1];
        }
        // Split part: stream -> ids[merges]; ids[merges+k] emits outs[k].
        if (splits > 0) {
            const VertexId first_split = ids[merges];
            if (merges > 0) {
                add_edge(stream_end, first_split);
            } else if (role == Role::kSource) {
                add_edge(v, first_split);
            } else {
                n.edges[ins[0]].to = first_split;
            }
            for (std::size_t k = 0; k < splits; ++k) {
                n.edges[outs[k]].from = ids[merges + k];
                if (k + 1 < splits) add_edge(ids[merges + k], ids[merges + k + 1]);
            }
            n.edges[outs.back()].from = ids[merges + splits - 1];
        } else if (merges > 0) {
            if (role == Role::kSink) {
                add_edge(stream_end, v);
            } else {
                n.edges[outs[0]].from = stream_end;
            }
        }
        if (role == Role::kInterior) {
            std::erase_if(n.interior, [&](const InteriorVertex& x) { return x.id == v; });
        }
        for (auto i : ins) trim(n.edges[i]);
        for (auto i : outs) trim(n.edges[i]);
    };

    const Degrees d = degrees(n);
    std::vector<std::tuple<VertexId, Role, std::optional<Rational>>> todo;
    for (const auto& v : n.sources)
        if (get(d.out, v.id) > 1) todo.emplace_back(v.id, Role::kSource, v.angle);
    for (const auto& v : n.sinks)
        if (get(d.in, v.id) > 1) todo.emplace_back(v.id, Role::kSink, v.angle);
    for (const auto& v : n.interior) {
        const auto in = get(d.in, v.id);
        const auto out = get(d.out, v.id);
        if (in + out > 3) todo.emplace_back(v.id, Role::kInterior, v.angle);
    }
    for (const auto& [id, role, angle] : todo) rebuild(id, role, angle);

    std::sort(n.interior.begin(), n.interior.end(),
              [](const InteriorVertex& a, const InteriorVertex& b) { return a.id < b.id; });
    return n;
}

Matrix boundary_measurements(const CylNetwork& n) {
    require_valid(n);
    const VertexIndex idx = build_index(n);
    const std::size_t m = n.sources.size();

    std::vector<std::pair<Rational, VertexId>> order;
    order.reserve(idx.size());
    for (const auto& [id, info] : idx) order.emplace_back(layer_via(n, idx, id), id);
    std::sort(order.begin(), order.end());

    std::unordered_map<VertexId, std::vector<std::size_t>> out_edges;
    for (std::size_t i = 0; i < n.edges.size(); ++i) out_edges[n.edges[i].from].push_back(i);

    std::unordered_map<VertexId, std::vector<Rational>> flow;
    for (std::size_t i = 0; i < m; ++i) {
        auto& f = flow[n.sources[i].id];
        f.assign(m, Rational(0));
        f[i] = 1;
    }
    for (const auto& [layer, v] : order) {
        auto it = flow.find(v);
        if (it == flow.end()) continue;
        const std::vector<Rational> here = it->second;
        auto oe = out_edges.find(v);
        if (oe == out_edges.end()) continue;
        for (auto ei : oe->second) {
            const Edge& e = n.edges[ei];
            auto& dst = flow[e.to];
            if (dst.empty()) dst.assign(m, Rational(0));
            for (std::size_t r = 0; r < m; ++r)
                if (!here[r].is_zero()) dst[r] += here[r] * e.weight;
        }
    }
    Matrix out(m, n.sinks.size());
    for (std::size_t j = 0; j < n.sinks.size(); ++j) {
        auto it = flow.find(n.sinks[j].id);
        if (it == flow.end()) continue;
        for (std::size_t r = 0; r < m; ++r) out(r, j) = it->second[r];
    }
    return out;
}

Rational edge_angle_at(const CylNetwork& n, std::size_t edge, const Rational& t) {
    if (!n.is_embedded()) throw InputError("network carries no angles");
    if (edge >= n.edges.size()) throw InputError("edge index out of range");
    const VertexIndex idx = build_index(n);
    return frac_of(lifted_angle_at(edge_track(n, idx, n.edges[edge]), t));
}

SliceResult slice(const CylNetwork& n, const Rational& t) {
    require_valid(n);
    if (!n.is_embedded()) throw InputError("slicing needs a network with vertex angles");
    if (t.sign() <= 0 || t >= Rational(1)) throw InputError("slice layer must lie in (0,1)");
    for (const auto& v : n.interior)
        if (v.layer == t) throw InputError("slice layer " + t.str() + " collides with vertex " + std::to_string(v.id));

    const VertexIndex idx = build_index(n);
    auto rescale = [&](const Rational& layer) { return layer / t; };

    SliceResult result;
    CylNetwork& out = result.network;
    out.sources = n.sources;
    VertexId next_id = 0;
    for (const auto& [id, info] : idx) next_id = std::max(next_id, id + 1);
    for (const auto& v : n.interior) {
        if (v.layer < t) out.interior.push_back({v.id, rescale(v.layer), v.angle});
    }

    struct Cut {
        Rational angle;
        Rational lifted;
        std::size_t edge;
    };
    std::vector<Cut> cuts;
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
        const Edge& e = n.edges[i];
        const Rational from = layer_via(n, idx, e.from);
        const Rational to = layer_via(n, idx, e.to);
        if (to < t) {
            Edge kept = e;
            for (auto& w : kept.via) w.layer = rescale(w.layer);
            out.edges.push_back(std::move(kept));
        } else if (from < t) {
            const Rational lifted = lifted_angle_at(edge_track(n, idx, e), t);
            cuts.push_back({frac_of(lifted), lifted, i});
        }
    }
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.angle < b.angle; });
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k].angle == cuts[k + 1].angle)
            throw InputError("edges cross layer " + t.str() + " at the same angle; crossing order undefined");
    }
    for (const auto& c : cuts) {
        const Edge& e = n.edges[c.edge];
        BoundaryVertex sink{next_id++, c.angle};
        Edge cut;
        cut.from = e.from;
        cut.to = sink.id;
        cut.weight = e.weight;
        const Rational wind = floor_of(c.lifted);
        cut.wind = wind.numerator().get_si();
        for (const auto& w : e.via)
            if (w.layer < t) cut.via.push_back({rescale(w.layer), w.angle});
        out.sinks.push_back(sink);
        out.edges.push_back(std::move(cut));
        result.cut_edges.push_back(c.edge);
    }
    return result;
}

std::vector<Rational> slice_events(const CylNetwork& n) {
    require_valid(n);
    std::vector<Rational> events;
    for (const auto& v : n.interior) events.push_back(v.layer);
    if (n.is_embedded()) {
        const VertexIndex idx = build_index(n);
        for (const auto& e : n.edges) {
            const auto track = edge_track(n, idx, e);
            for (std::size_t k = 0; k + 1 < track.size(); ++k) {
                const auto& a = track[k];
                const auto& b = track[k + 1];
                if (a.angle == b.angle) continue;
                const Rational lo = std::min(a.angle, b.angle);
                const Rational hi = std::max(a.angle, b.angle);
                for (Rational z = floor_of(lo); z <= hi; z += Rational(1)) {
                    if (z < lo) continue;
                    events.push_back(a.layer + (b.layer - a.layer) * ((z - a.angle) / (b.angle - a.angle)));
                }
            }
        }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    std::erase_if(events, [](const Rational& x) { return x.sign() <= 0 || x >= Rational(1); });
    return events;
}

}  // namespace cylpos
