#ifndef CYLPOS_NETWORK_HPP
#define CYLPOS_NETWORK_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cylpos/matrix.hpp"

namespace cylpos {

using VertexId = std::uint64_t;

// Geometry, when present, is an embedding surrogate: a vertex sits at
// (layer, angle) on S¹ × [0,1], angle measured in turns in [0,1). The
// rectangle picture glues angle 0 to angle 1 (the seam). Sources sit at
// layer 0, sinks at layer 1.

struct BoundaryVertex {
    VertexId id = 0;
    std::optional<Rational> angle;
};

struct InteriorVertex {
    VertexId id = 0;
    Rational layer;
    std::optional<Rational> angle;
};

/// Intermediate point of an edge's drawn track. `angle` is lifted to the
/// universal cover (may leave [0,1)) so that consecutive track points are
/// joined by straight segments.
struct Waypoint {
    Rational layer;
    Rational angle;
    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    Rational weight;
    /// Track ends at angle(to) + wind.
    long wind = 0;
    std::vector<Waypoint> via;
};

/// Directed acyclic weighted graph on a cylinder. Sources and sinks are
/// listed in the cyclic order of their boundary circles; that order fixes
/// the rows and columns of the boundary measurement matrix.
struct CylNetwork {
    std::vector<BoundaryVertex> sources;
    std::vector<BoundaryVertex> sinks;
    std::vector<InteriorVertex> interior;
    std::vector<Edge> edges;

    /// Layer of any vertex: 0 for sources, 1 for sinks.
    Rational layer_of(VertexId id) const;
    std::optional<Rational> angle_of(VertexId id) const;
    /// Every vertex carries an angle.
    bool is_embedded() const;
};

enum class ViolationKind {
    kNone,
    kDuplicateVertex,
    kUnknownVertex,
    kNonPositiveWeight,
    kOrientedLoop,
    kSourceCondition,
    kSinkCondition,
    kInteriorCondition,
    kLayerOrder,
    kGeometry,
};

std::string to_string(ViolationKind kind);

struct Validation {
    ViolationKind kind = ViolationKind::kNone;
    std::string detail;
    /// Offending vertices; for an oriented loop, the cycle in order.
    std::vector<VertexId> vertices;
    std::optional<std::size_t> edge;

    bool ok() const { return kind == ViolationKind::kNone; }
};

/// Checks, in order: vertex ids unique and edge endpoints known, weights
/// positive, no oriented loop, sources have in 0 / out ≥ 1, sinks have
/// in ≥ 1 / out 0, interior vertices are neither digraph sources nor
/// sinks, edges strictly increase layer (interior layers in (0,1)), and
/// geometry is either absent everywhere or consistent.
Validation validate(const CylNetwork& n);

/// Throws InputError naming the violation unless validate(n).ok().
void require_valid(const CylNetwork& n);

/// Boundary vertices have degree 1 and interior vertices degree 3.
bool is_perfect(const CylNetwork& n);

/// Equivalent perfect network: degree-2 interior vertices are contracted,
/// higher-degree vertices become combs of trivalent vertices joined by
/// weight-1 edges (in-edges merged first, then out-edges split), and
/// boundary vertices of degree > 1 feed or drain such a comb.
CylNetwork perfectize(const CylNetwork& n);

/// M_ij = sum over directed paths from source i to sink j of the product
/// of edge weights; dynamic programming in topological order.
Matrix boundary_measurements(const CylNetwork& n);

/// Angle (mod 1) of an edge's track at layer t, strictly inside its span.
/// Requires an embedded network.
Rational edge_angle_at(const CylNetwork& n, std::size_t edge, const Rational& t);

struct SliceResult {
    CylNetwork network;
    /// cut_edges[k] = index in the original edge list of the edge that
    /// became new sink k.
    std::vector<std::size_t> cut_edges;
};

/// Subnetwork on S¹ × [0,t]: edges crossing layer t are cut and end at new
/// sinks that inherit their weights, ordered by angle at t starting from
/// the seam. Layers are rescaled by 1/t. Requires an embedded network and
/// t ∈ (0,1) distinct from every interior layer; ties in the crossing
/// order are rejected.
SliceResult slice(const CylNetwork& n, const Rational& t);

/// Sorted, deduplicated layers at which a slice changes: interior vertex
/// layers and the layers where an edge track crosses the seam.
std::vector<Rational> slice_events(const CylNetwork& n);

}  // namespace cylpos

#endif  // CYLPOS_NETWORK_HPP
