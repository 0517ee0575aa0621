#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "genhyp/error.hpp"

namespace genhyp {

/// Glued triangulated surface ("genhyp-tri/1"). Edges are first-class:
/// edge k is the k-th gluing record (id "k"); side s of a triangle is the
/// edge opposite corner s. Non-simplicial complexes (multi-edges,
/// self-gluings) are supported.
class TriSurface {
public:
    struct Tri {
        std::string id;
        std::array<int, 3> corners;  // vertex indices
    };
    struct Gluing {
        int tri[2];
        int side[2];
    };

    static TriSurface parse(const std::string& json_text);
    static TriSurface load(const std::string& path);
    std::string serialize() const;

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int edge_count() const { return static_cast<int>(gluings_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    int euler() const { return vertex_count() - edge_count() + triangle_count(); }
    /// Euler characteristic of the punctured surface (vertices removed).
    int punctured_euler() const { return euler() - vertex_count(); }

    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
    const std::string& edge_id(int e) const { return edge_ids_[e]; }
    const Tri& triangle(int t) const { return triangles_[t]; }
    const Gluing& gluing(int e) const { return gluings_[e]; }
    /// Edge index of side s of triangle t.
    int edge_of(int t, int s) const { return side_edge_[t][s]; }

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<Tri> triangles_;
    std::vector<Gluing> gluings_;
    std::vector<std::string> edge_ids_;
    std::vector<std::array<int, 3>> side_edge_;

    void validate() const;
    void build_side_edges();
};

/// Cellular decomposition with dual vertices ("genhyp-cell/1"): one dual
/// vertex per face; each edge knows its two endpoints and two adjacent
/// faces (possibly equal).
class CellSurface {
public:
    struct Face {
        std::string id;
        std::vector<int> boundary;  // vertex indices, cyclic
    };
    struct Edge {
        std::string id;
        std::array<int, 2> ends;
        std::array<int, 2> faces;
    };

    static CellSurface parse(const std::string& json_text);
    static CellSurface load(const std::string& path);
    std::string serialize() const;

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int euler() const { return vertex_count() - edge_count() + face_count(); }

    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
    const Face& face(int f) const { return faces_[f]; }
    const Edge& edge(int e) const { return edges_[e]; }

    int vertex_index(const std::string& id) const;
    int face_index(const std::string& id) const;
    int edge_index(const std::string& id) const;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;

    void validate() const;
};

/// Alternating cyclic sequence of edges and triangles: edges steps[i].edge
/// and steps[i+1].edge (cyclically) are sides of triangle steps[i].tri,
/// entered and left through distinct side slots.
struct EdgeCycle {
    struct Step {
        int edge;
        int tri;
        int slot_in;   // side of tri carrying this step's edge
        int slot_out;  // side of tri carrying the next step's edge
    };
    std::vector<Step> steps;

    std::vector<int> edge_indices() const;
};

/// All edge cycles with per-edge multiplicity <= max_multiplicity, one
/// canonical representative per rotation/reversal class. Throws SizeError
/// when the number of explored partial walks exceeds `cap`.
std::vector<EdgeCycle> enumerate_edge_cycles(const TriSurface& surface, int max_multiplicity = 2,
                                             std::size_t cap = 1000000);

/// One quadrilateral (v, v', f*, f'*) per edge of a cellular surface; the
/// base corner v is the edge's first endpoint.
struct Quadrilateral {
    int edge;
    int v, v_other;
    int face, face_other;
};

std::vector<Quadrilateral> quadrilaterals(const CellSurface& surface);

// Per-id value files ({"edge_weights":{...}} etc.), returned in the
// surface's canonical index order. Every id must be present exactly once.
std::vector<double> parse_edge_values(const TriSurface&, const std::string& json_text);
std::vector<double> parse_vertex_values(const TriSurface&, const std::string& json_text);
std::vector<double> parse_edge_values(const CellSurface&, const std::string& json_text);
std::vector<double> parse_face_values(const CellSurface&, const std::string& json_text);

}  // namespace genhyp
