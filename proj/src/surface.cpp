#include "genhyp/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace genhyp {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

// Ids may be JSON strings or integers; canonicalize to strings.
std::string id_of(const Json& j)
{
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError("id must be a string or an integer");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int lookup(const std::vector<std::string>& ids, const std::string& id, const char* what)
{
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw ValidationError(std::string("unknown ") + what + " id '" + id + "'");
    return static_cast<int>(it - ids.begin());
}

void check_connected(int nodes, const std::vector<std::pair<int, int>>& links, const char* what)
{
    if (nodes == 0) throw ValidationError(std::string(what) + ": empty complex");
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : links) {
            int other = -1;
            if (a == n) other = b;
            if (b == n) other = a;
            if (other >= 0 && !seen[other]) {
                seen[other] = 1;
                stack.push_back(other);
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != nodes)
        throw ValidationError(std::string(what) + ": complex is not connected");
}

}  // namespace

// ---------------------------------------------------------------------------
// TriSurface

TriSurface TriSurface::parse(const std::string& json_text)
{
    const Json doc = parse_json(json_text);
    if (!doc.is_object() || id_of(doc.value("format", Json(""))) != "genhyp-tri/1")
        throw ParseError("expected a genhyp-tri/1 document");

    TriSurface s;
    for (const auto& v : doc.at("vertices")) s.vertex_ids_.push_back(id_of(v));
    {
        std::set<std::string> uniq(s.vertex_ids_.begin(), s.vertex_ids_.end());
        if (uniq.size() != s.vertex_ids_.size()) throw ValidationError("duplicate vertex id");
    }
    for (const auto& t : doc.at("triangles")) {
        Tri tri;
        tri.id = id_of(t.at("id"));
        const auto& corners = t.at("corners");
        if (!corners.is_array() || corners.size() != 3)
            throw ParseError("triangle '" + tri.id + "' needs exactly 3 corners");
        for (int c = 0; c < 3; ++c)
            tri.corners[c] = lookup(s.vertex_ids_, id_of(corners[c]), "vertex");
        s.triangles_.push_back(std::move(tri));
    }
    std::vector<std::string> tri_ids;
    for (const auto& t : s.triangles_) tri_ids.push_back(t.id);
    if (std::set<std::string>(tri_ids.begin(), tri_ids.end()).size() != tri_ids.size())
        throw ValidationError("duplicate triangle id");

    for (const auto& g : doc.at("gluings")) {
        Gluing gl{};
        const char* keys[2] = {"left", "right"};
        for (int half = 0; half < 2; ++half) {
            const auto& slot = g.at(keys[half]);
            if (!slot.is_array() || slot.size() != 2) throw ParseError("gluing slot must be [triangle, side]");
            gl.tri[half] = lookup(tri_ids, id_of(slot[0]), "triangle");
            const int side = slot[1].get<int>();
            if (side < 0 || side > 2) throw ParseError("gluing side must be 0, 1 or 2");
            gl.side[half] = side;
        }
        s.gluings_.push_back(gl);
    }
    for (std::size_t e = 0; e < s.gluings_.size(); ++e) s.edge_ids_.push_back(std::to_string(e));

    s.build_side_edges();
    s.validate();
    return s;
}

void TriSurface::build_side_edges()
{
    side_edge_.assign(triangles_.size(), {-1, -1, -1});
    for (std::size_t e = 0; e < gluings_.size(); ++e) {
        const Gluing& g = gluings_[e];
        if (g.tri[0] == g.tri[1] && g.side[0] == g.side[1])
            throw ValidationError("edge " + edge_ids_[e] + " glues a side to itself");
        for (int half = 0; half < 2; ++half) {
            int& slot = side_edge_[g.tri[half]][g.side[half]];
            if (slot != -1)
                throw ValidationError("side " + std::to_string(g.side[half]) + " of triangle '" +
                                      triangles_[g.tri[half]].id + "' is glued twice");
            slot = static_cast<int>(e);
        }
    }
    for (std::size_t t = 0; t < triangles_.size(); ++t)
        for (int side = 0; side < 3; ++side)
            if (side_edge_[t][side] == -1)
                throw ValidationError("side " + std::to_string(side) + " of triangle '" +
                                      triangles_[t].id + "' is unglued (surface not closed)");
}

void TriSurface::validate() const
{
    // glued sides must join the same unordered endpoint pair
    for (std::size_t e = 0; e < gluings_.size(); ++e) {
        const Gluing& g = gluings_[e];
        std::array<std::array<int, 2>, 2> ends;
        for (int half = 0; half < 2; ++half) {
            const auto& c = triangles_[g.tri[half]].corners;
            ends[half] = {c[(g.side[half] + 1) % 3], c[(g.side[half] + 2) % 3]};
            std::sort(ends[half].begin(), ends[half].end());
        }
        if (ends[0] != ends[1])
            throw ValidationError("gluing " + edge_ids_[e] +
                                  " identifies sides with different endpoint vertices");
    }
    std::vector<std::pair<int, int>> links;
    for (const Gluing& g : gluings_) links.emplace_back(g.tri[0], g.tri[1]);
    check_connected(triangle_count(), links, "triangulated surface");

    std::vector<char> used(vertex_ids_.size(), 0);
    for (const Tri& t : triangles_)
        for (int c : t.corners) used[c] = 1;
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v]) throw ValidationError("vertex '" + vertex_ids_[v] + "' is not a corner of any triangle");
}

TriSurface TriSurface::load(const std::string& path)
{
    return parse(read_file(path));
}

std::string TriSurface::serialize() const
{
    Json doc;
    doc["format"] = "genhyp-tri/1";
    doc["vertices"] = vertex_ids_;
    Json tris = Json::array();
    for (const Tri& t : triangles_) {
        Json jt;
        jt["id"] = t.id;
        jt["corners"] = {vertex_ids_[t.corners[0]], vertex_ids_[t.corners[1]], vertex_ids_[t.corners[2]]};
        tris.push_back(std::move(jt));
    }
    doc["triangles"] = std::move(tris);
    Json gl = Json::array();
    for (const Gluing& g : gluings_) {
        Json jg;
        jg["left"] = {triangles_[g.tri[0]].id, g.side[0]};
        jg["right"] = {triangles_[g.tri[1]].id, g.side[1]};
        gl.push_back(std::move(jg));
    }
    doc["gluings"] = std::move(gl);
    return doc.dump(1) + "\n";
}

int TriSurface::vertex_index(const std::string& id) const
{
    return lookup(vertex_ids_, id, "vertex");
}

int TriSurface::edge_index(const std::string& id) const
{
    return lookup(edge_ids_, id, "edge");
}

// ---------------------------------------------------------------------------
// CellSurface

CellSurface CellSurface::parse(const std::string& json_text)
{
    const Json doc = parse_json(json_text);
    if (!doc.is_object() || id_of(doc.value("format", Json(""))) != "genhyp-cell/1")
        throw ParseError("expected a genhyp-cell/1 document");

    CellSurface s;
    for (const auto& v : doc.at("vertices")) s.vertex_ids_.push_back(id_of(v));
    std::vector<std::string> face_ids;
    for (const auto& f : doc.at("faces")) {
        Face face;
        face.id = id_of(f.at("id"));
        for (const auto& b : f.at("boundary"))
            face.boundary.push_back(lookup(s.vertex_ids_, id_of(b), "vertex"));
        if (face.boundary.size() < 2)
            throw ValidationError("face '" + face.id + "' has a boundary shorter than 2");
        face_ids.push_back(face.id);
        s.faces_.push_back(std::move(face));
    }
    for (const auto& e : doc.at("edges")) {
        Edge edge;
        edge.id = id_of(e.at("id"));
        const auto& ends = e.at("ends");
        const auto& faces = e.at("faces");
        if (ends.size() != 2 || faces.size() != 2)
            throw ParseError("edge '" + edge.id + "' needs 2 ends and 2 faces");
        for (int i = 0; i < 2; ++i) {
            edge.ends[i] = lookup(s.vertex_ids_, id_of(ends[i]), "vertex");
            edge.faces[i] = lookup(face_ids, id_of(faces[i]), "face");
        }
        s.edges_.push_back(std::move(edge));
    }
    s.validate();
    return s;
}

void CellSurface::validate() const
{
    // edge endpoints must be cyclically consecutive in both adjacent faces
    std::vector<int> incidences(faces_.size(), 0);
    for (const Edge& e : edges_) {
        for (int fi : e.faces) {
            const auto& b = faces_[fi].boundary;
            const std::size_t n = b.size();
            bool found = false;
            for (std::size_t i = 0; i < n && !found; ++i) {
                const int a = b[i], c = b[(i + 1) % n];
                found = (a == e.ends[0] && c == e.ends[1]) || (a == e.ends[1] && c == e.ends[0]);
            }
            if (!found)
                throw ValidationError("edge '" + e.id + "' is not consecutive in the boundary of face '" +
                                      faces_[fi].id + "'");
            ++incidences[fi];
        }
    }
    for (std::size_t f = 0; f < faces_.size(); ++f)
        if (incidences[f] != static_cast<int>(faces_[f].boundary.size()))
            throw ValidationError("face '" + faces_[f].id + "' has " + std::to_string(incidences[f]) +
                                  " edge incidences for a boundary of length " +
                                  std::to_string(faces_[f].boundary.size()));
    std::vector<std::pair<int, int>> links;
    for (const Edge& e : edges_) links.emplace_back(e.faces[0], e.faces[1]);
    check_connected(face_count(), links, "cellular surface");
}

CellSurface CellSurface::load(const std::string& path)
{
    return parse(read_file(path));
}

std::string CellSurface::serialize() const
{
    Json doc;
    doc["format"] = "genhyp-cell/1";
    doc["vertices"] = vertex_ids_;
    Json faces = Json::array();
    for (const Face& f : faces_) {
        Json jf;
        jf["id"] = f.id;
        Json b = Json::array();
        for (int v : f.boundary) b.push_back(vertex_ids_[v]);
        jf["boundary"] = std::move(b);
        faces.push_back(std::move(jf));
    }
    doc["faces"] = std::move(faces);
    Json edges = Json::array();
    for (const Edge& e : edges_) {
        Json je;
        je["id"] = e.id;
        je["ends"] = {vertex_ids_[e.ends[0]], vertex_ids_[e.ends[1]]};
        je["faces"] = {faces_[e.faces[0]].id, faces_[e.faces[1]].id};
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(1) + "\n";
}

int CellSurface::vertex_index(const std::string& id) const
{
    return lookup(vertex_ids_, id, "vertex");
}

int CellSurface::face_index(const std::string& id) const
{
    std::vector<std::string> ids;
    for (const Face& f : faces_) ids.push_back(f.id);
    return lookup(ids, id, "face");
}

int CellSurface::edge_index(const std::string& id) const
{
    std::vector<std::string> ids;
    for (const Edge& e : edges_) ids.push_back(e.id);
    return lookup(ids, id, "edge");
}

// ---------------------------------------------------------------------------
// Edge cycles

std::vector<int> EdgeCycle::edge_indices() const
{
    std::vector<int> out;
    out.reserve(steps.size());
    for (const Step& s : steps) out.push_back(s.edge);
    return out;
}

namespace {

// Canonical key: lexicographically minimal rotation of the (edge, tri)
// sequence over both orientations.
std::vector<int> cycle_key(const EdgeCycle& cycle)
{
    const std::size_t k = cycle.steps.size();
    std::vector<int> fwd, rev;
    for (const auto& s : cycle.steps) {
        fwd.push_back(s.edge);
        fwd.push_back(s.tri);
    }
    // reversal of (e1,t1,e2,t2,...,ek,tk) is (e1,tk,ek,t(k-1),...,e2,t1)
    for (std::size_t i = 0; i < k; ++i) {
        rev.push_back(cycle.steps[(k - i) % k].edge);
        rev.push_back(cycle.steps[k - 1 - i].tri);
    }
    std::vector<int> best;
    for (const std::vector<int>* seq : {&fwd, &rev}) {
        for (std::size_t rot = 0; rot < k; ++rot) {
            std::vector<int> cand;
            cand.reserve(2 * k);
            for (std::size_t i = 0; i < 2 * k; ++i) cand.push_back((*seq)[(2 * rot + i) % (2 * k)]);
            if (best.empty() || cand < best) best = std::move(cand);
        }
    }
    return best;
}

struct Walker {
    const TriSurface& surface;
    int max_multiplicity;
    std::size_t cap;
    std::size_t visited = 0;
    std::vector<int> use;                 // per-edge usage count
    std::vector<EdgeCycle::Step> steps;
    std::set<std::vector<int>> seen;
    std::vector<EdgeCycle> out;
    int anchor_edge = 0;

    Walker(const TriSurface& s, int mult, std::size_t c)
        : surface(s), max_multiplicity(mult), cap(c), use(s.edge_count(), 0)
    {
    }

    void emit()
    {
        EdgeCycle cycle{steps};
        auto key = cycle_key(cycle);
        if (seen.insert(std::move(key)).second) out.push_back(std::move(cycle));
    }

    // Extend the walk into triangle `tri` entered through side `slot_in`
    // (carrying edge steps.back().edge == edge of that slot).
    void extend(int tri, int slot_in)
    {
        if (++visited > cap)
            throw SizeError("edge-cycle enumeration exceeded its partial-walk cap");
        for (int slot_out = 0; slot_out < 3; ++slot_out) {
            if (slot_out == slot_in) continue;
            const int edge = surface.edge_of(tri, slot_out);
            if (edge < anchor_edge) continue;  // cycles are anchored at their minimal edge
            steps.back().tri = tri;
            steps.back().slot_in = slot_in;
            steps.back().slot_out = slot_out;
            // crossing `edge` out of (tri, slot_out) lands on the other glued slot
            const auto& g = surface.gluing(edge);
            int land_tri, land_slot;
            if (g.tri[0] == tri && g.side[0] == slot_out) {
                land_tri = g.tri[1];
                land_slot = g.side[1];
            } else {
                land_tri = g.tri[0];
                land_slot = g.side[0];
            }
            // the cycle closes iff this crossing is the anchor crossing we started with
            if (edge == anchor_edge && land_tri == steps.front().tri &&
                land_slot == steps.front().slot_in)
                emit();
            if (use[edge] >= max_multiplicity) continue;
            ++use[edge];
            steps.push_back({edge, -1, -1, -1});
            extend(land_tri, land_slot);
            steps.pop_back();
            --use[edge];
        }
    }
};

}  // namespace

std::vector<EdgeCycle> enumerate_edge_cycles(const TriSurface& surface, int max_multiplicity,
                                             std::size_t cap)
{
    if (max_multiplicity < 1) throw InputError("max_multiplicity must be >= 1");
    Walker walker(surface, max_multiplicity, cap);
    for (int e = 0; e < surface.edge_count(); ++e) {
        walker.anchor_edge = e;
        const auto& g = surface.gluing(e);
        // start by crossing edge e into each of its two sides
        for (int half = 0; half < 2; ++half) {
            walker.use.assign(surface.edge_count(), 0);
            walker.use[e] = 1;
            walker.steps.assign(1, {e, -1, -1, -1});
            walker.extend(g.tri[half], g.side[half]);
        }
    }
    std::sort(walker.out.begin(), walker.out.end(), [](const EdgeCycle& a, const EdgeCycle& b) {
        if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
        return cycle_key(a) < cycle_key(b);
    });
    return walker.out;
}

std::vector<Quadrilateral> quadrilaterals(const CellSurface& surface)
{
    std::vector<Quadrilateral> out;
    out.reserve(surface.edge_count());
    for (int e = 0; e < surface.edge_count(); ++e) {
        const auto& edge = surface.edge(e);
        out.push_back({e, edge.ends[0], edge.ends[1], edge.faces[0], edge.faces[1]});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Value files

namespace {

std::vector<double> parse_value_map(const std::string& json_text, const char* key,
                                    const std::vector<std::string>& ids, const char* what)
{
    const Json doc = parse_json(json_text);
    if (!doc.is_object() || !doc.contains(key))
        throw ParseError(std::string("expected an object with a '") + key + "' map");
    const Json& map = doc.at(key);
    if (!map.is_object()) throw ParseError(std::string("'") + key + "' must be an object");
    std::vector<double> out(ids.size());
    std::vector<char> found(ids.size(), 0);
    for (const auto& [k, v] : map.items()) {
        auto it = std::find(ids.begin(), ids.end(), k);
        if (it == ids.end())
            throw ValidationError(std::string("unknown ") + what + " id '" + k + "' in value file");
        const auto idx = static_cast<std::size_t>(it - ids.begin());
        if (found[idx]) throw ValidationError(std::string("duplicate ") + what + " id '" + k + "'");
        if (!v.is_number()) throw ParseError("value for '" + k + "' is not a number");
        out[idx] = v.get<double>();
        found[idx] = 1;
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (!found[i]) throw ValidationError(std::string("missing value for ") + what + " '" + ids[i] + "'");
    return out;
}

}  // namespace

std::vector<double> parse_edge_values(const TriSurface& s, const std::string& json_text)
{
    std::vector<std::string> ids;
    for (int e = 0; e < s.edge_count(); ++e) ids.push_back(s.edge_id(e));
    return parse_value_map(json_text, "edge_weights", ids, "edge");
}

std::vector<double> parse_vertex_values(const TriSurface& s, const std::string& json_text)
{
    std::vector<std::string> ids;
    for (int v = 0; v < s.vertex_count(); ++v) ids.push_back(s.vertex_id(v));
    return parse_value_map(json_text, "vertex_values", ids, "vertex");
}

std::vector<double> parse_edge_values(const CellSurface& s, const std::string& json_text)
{
    std::vector<std::string> ids;
    for (int e = 0; e < s.edge_count(); ++e) ids.push_back(s.edge(e).id);
    return parse_value_map(json_text, "edge_weights", ids, "edge");
}

std::vector<double> parse_face_values(const CellSurface& s, const std::string& json_text)
{
    std::vector<std::string> ids;
    for (int f = 0; f < s.face_count(); ++f) ids.push_back(s.face(f).id);
    return parse_value_map(json_text, "face_values", ids, "face");
}

}  // namespace genhyp
