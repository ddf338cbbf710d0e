#include "lfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lfem/errors.hpp"

namespace lfem {

namespace {

using EdgeKey = std::uint64_t;

EdgeKey edge_key(std::int32_t a, std::int32_t b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x1 - o.x1) * (b.x2 - o.x2) - (a.x2 - o.x2) * (b.x1 - o.x1);
}

// Andrew's monotone chain; collinear points dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double max_pairwise_distance(const std::vector<Point>& pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
    return d;
}

}  // namespace

Mesh::Mesh(std::vector<Point> nodes, std::vector<Triangle> triangles,
           std::vector<BoundaryEdge> boundary_edges)
    : nodes_(std::move(nodes)),
      triangles_(std::move(triangles)),
      boundary_edges_(std::move(boundary_edges)) {
    if (triangles_.empty()) throw std::invalid_argument("mesh has no triangles");
    const auto n = static_cast<std::int64_t>(nodes_.size());
    for (const auto& p : nodes_) {
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
            throw std::invalid_argument("non-finite node coordinate");
    }

    std::unordered_map<EdgeKey, int> edge_count;
    edge_count.reserve(3 * triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& v = triangles_[t].vertex_ids;
        for (auto id : v) {
            if (id < 0 || id >= n)
                throw std::invalid_argument("triangle " + std::to_string(t) +
                                            ": vertex index out of range");
        }
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
            throw std::invalid_argument("triangle " + std::to_string(t) + ": repeated vertex");
        const auto g = geometry(t);
        if (!(signed_area(g) > 0.0))
            throw std::invalid_argument("triangle " + std::to_string(t) +
                                        ": non-positive signed area (clockwise or degenerate)");
        for (int e = 0; e < 3; ++e) {
            const double len = distance(g[e], g[(e + 1) % 3]);
            h_ = std::max(h_, len);
            ++edge_count[edge_key(v[e], v[(e + 1) % 3])];
        }
    }

    std::size_t open_edges = 0;
    for (const auto& [key, count] : edge_count) {
        if (count > 2) throw std::invalid_argument("non-conforming: edge shared by >2 triangles");
        if (count == 1) ++open_edges;
    }
    std::unordered_map<EdgeKey, int> tagged;
    tagged.reserve(boundary_edges_.size());
    std::vector<Point> boundary_points;
    boundary_points.reserve(2 * boundary_edges_.size());
    for (std::size_t i = 0; i < boundary_edges_.size(); ++i) {
        const auto& e = boundary_edges_[i].endpoint_ids;
        for (auto id : e) {
            if (id < 0 || id >= n)
                throw std::invalid_argument("boundary edge " + std::to_string(i) +
                                            ": endpoint index out of range");
        }
        const auto key = edge_key(e[0], e[1]);
        const auto it = edge_count.find(key);
        if (it == edge_count.end() || it->second != 1)
            throw std::invalid_argument("boundary edge " + std::to_string(i) +
                                        " is not an edge of exactly one triangle");
        if (++tagged[key] > 1)
            throw std::invalid_argument("boundary edge " + std::to_string(i) + " listed twice");
        boundary_points.push_back(nodes_[static_cast<std::size_t>(e[0])]);
        boundary_points.push_back(nodes_[static_cast<std::size_t>(e[1])]);
    }
    if (tagged.size() != open_edges)
        throw std::invalid_argument("boundary edges missing from the tagged list");

    d_omega_ = max_pairwise_distance(convex_hull(std::move(boundary_points)));
}

TriangleGeometry Mesh::geometry(std::size_t t) const {
    const auto& v = triangles_[t].vertex_ids;
    return {nodes_[static_cast<std::size_t>(v[0])], nodes_[static_cast<std::size_t>(v[1])],
            nodes_[static_cast<std::size_t>(v[2])]};
}

double Mesh::total_area() const {
    double a = 0.0;
    for (std::size_t t = 0; t < triangles_.size(); ++t) a += signed_area(geometry(t));
    return a;
}

Mesh generate_square_mesh(double side, int n) {
    if (!(side > 0.0)) throw std::invalid_argument("square side must be positive");
    if (n < 1) throw std::invalid_argument("square mesh needs n >= 1");
    const int m = n + 1;
    auto id = [m](int i, int j) { return static_cast<std::int32_t>(j * m + i); };

    std::vector<Point> nodes;
    nodes.reserve(static_cast<std::size_t>(m) * m);
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) nodes.push_back({side * i / n, side * j / n});

    std::vector<Triangle> tris;
    tris.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            tris.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}});
            tris.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}});
        }
    }

    std::vector<BoundaryEdge> edges;
    edges.reserve(4 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) edges.push_back({{id(i, 0), id(i + 1, 0)}, tags::dirichlet});
    for (int j = 0; j < n; ++j) edges.push_back({{id(n, j), id(n, j + 1)}, tags::dirichlet});
    for (int i = n; i > 0; --i) edges.push_back({{id(i, n), id(i - 1, n)}, tags::dirichlet});
    for (int j = n; j > 0; --j) edges.push_back({{id(0, j), id(0, j - 1)}, tags::dirichlet});

    return Mesh(std::move(nodes), std::move(tris), std::move(edges));
}

Mesh generate_cook_mesh(int n) {
    if (n < 1) throw std::invalid_argument("Cook mesh needs n >= 1");
    constexpr Point p00{0.0, 0.0}, p10{48.0, 44.0}, p11{48.0, 60.0}, p01{0.0, 44.0};
    const int m = n + 1;
    auto id = [m](int i, int j) { return static_cast<std::int32_t>(j * m + i); };

    std::vector<Point> nodes;
    nodes.reserve(static_cast<std::size_t>(m) * m);
    for (int j = 0; j <= n; ++j) {
        const double t = static_cast<double>(j) / n;
        for (int i = 0; i <= n; ++i) {
            const double s = static_cast<double>(i) / n;
            const double w00 = (1 - s) * (1 - t), w10 = s * (1 - t), w11 = s * t, w01 = (1 - s) * t;
            nodes.push_back({w00 * p00.x1 + w10 * p10.x1 + w11 * p11.x1 + w01 * p01.x1,
                             w00 * p00.x2 + w10 * p10.x2 + w11 * p11.x2 + w01 * p01.x2});
        }
    }

    std::vector<Triangle> tris;
    tris.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            tris.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}});
            tris.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}});
        }
    }

    std::vector<BoundaryEdge> edges;
    edges.reserve(4 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) edges.push_back({{id(i, 0), id(i + 1, 0)}, tags::traction_free});
    for (int j = 0; j < n; ++j) edges.push_back({{id(n, j), id(n, j + 1)}, tags::traction});
    for (int i = n; i > 0; --i) edges.push_back({{id(i, n), id(i - 1, n)}, tags::traction_free});
    for (int j = n; j > 0; --j) edges.push_back({{id(0, j), id(0, j - 1)}, tags::dirichlet});

    return Mesh(std::move(nodes), std::move(tris), std::move(edges));
}

Mesh uniform_refine(const Mesh& mesh) {
    std::vector<Point> nodes(mesh.nodes().begin(), mesh.nodes().end());
    std::unordered_map<EdgeKey, std::int32_t> mid;
    mid.reserve(3 * mesh.num_triangles());
    auto midpoint_id = [&](std::int32_t a, std::int32_t b) {
        const auto [it, inserted] = mid.try_emplace(edge_key(a, b), 0);
        if (inserted) {
            it->second = static_cast<std::int32_t>(nodes.size());
            nodes.push_back(midpoint(nodes[static_cast<std::size_t>(a)],
                                     nodes[static_cast<std::size_t>(b)]));
        }
        return it->second;
    };

    std::vector<Triangle> tris;
    tris.reserve(4 * mesh.num_triangles());
    for (const auto& t : mesh.triangles()) {
        const auto [a, b, c] = t.vertex_ids;
        const auto ab = midpoint_id(a, b);
        const auto bc = midpoint_id(b, c);
        const auto ca = midpoint_id(c, a);
        tris.push_back({{a, ab, ca}});
        tris.push_back({{ab, b, bc}});
        tris.push_back({{ca, bc, c}});
        tris.push_back({{ab, bc, ca}});
    }

    std::vector<BoundaryEdge> edges;
    edges.reserve(2 * mesh.boundary_edges().size());
    for (const auto& e : mesh.boundary_edges()) {
        const auto [a, b] = e.endpoint_ids;
        const auto m = mid.at(edge_key(a, b));
        edges.push_back({{a, m}, e.tag});
        edges.push_back({{m, b}, e.tag});
    }
    return Mesh(std::move(nodes), std::move(tris), std::move(edges));
}

PointLocation locate_point(const Mesh& mesh, const Point& p) {
    const double tol = 1e-10 * mesh.d_omega();
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto g = mesh.geometry(t);
        const double area = signed_area(g);
        std::array<double, 3> bary{};
        bool inside = true;
        for (int i = 0; i < 3; ++i) {
            const Point& a = g[(i + 1) % 3];
            const Point& b = g[(i + 2) % 3];
            // Signed distance of p from the edge opposite vertex i.
            const double sub = 0.5 * cross(a, b, p);
            const double edge_len = distance(a, b);
            if (sub * 2.0 / edge_len < -tol) {
                inside = false;
                break;
            }
            bary[static_cast<std::size_t>(i)] = sub / area;
        }
        if (inside) {
            bary[2] = 1.0 - bary[0] - bary[1];
            return {t, bary};
        }
    }
    throw NotFoundError("point (" + std::to_string(p.x1) + ", " + std::to_string(p.x2) +
                        ") is outside the mesh");
}

bool is_conforming(const Mesh& mesh) {
    std::unordered_map<EdgeKey, int> count;
    for (const auto& t : mesh.triangles()) {
        const auto& v = t.vertex_ids;
        for (int e = 0; e < 3; ++e) ++count[edge_key(v[e], v[(e + 1) % 3])];
    }
    std::unordered_map<EdgeKey, int> tagged;
    for (const auto& e : mesh.boundary_edges())
        ++tagged[edge_key(e.endpoint_ids[0], e.endpoint_ids[1])];
    for (const auto& [key, c] : count) {
        if (c > 2) return false;
        const auto it = tagged.find(key);
        const int tag_count = it == tagged.end() ? 0 : it->second;
        if ((c == 1) != (tag_count == 1) || tag_count > 1) return false;
    }
    return tagged.size() == static_cast<std::size_t>(
                                std::count_if(count.begin(), count.end(),
                                              [](const auto& kv) { return kv.second == 1; }));
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    char buf[64];
    out << "mesh2d 1\n"
        << mesh.num_nodes() << ' ' << mesh.num_triangles() << ' ' << mesh.boundary_edges().size()
        << '\n';
    for (const auto& p : mesh.nodes()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x1, p.x2);
        out << buf;
    }
    for (const auto& t : mesh.triangles())
        out << t.vertex_ids[0] << ' ' << t.vertex_ids[1] << ' ' << t.vertex_ids[2] << '\n';
    for (const auto& e : mesh.boundary_edges())
        out << e.endpoint_ids[0] << ' ' << e.endpoint_ids[1] << ' ' << e.tag << '\n';
}

void write_mesh(const Mesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_mesh(mesh, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::istringstream next(const char* what) {
        std::string line;
        if (!std::getline(in_, line)) throw ParseError(line_ + 1, std::string("missing ") + what);
        ++line_;
        if (!line.empty() && line.back() == '\r') throw ParseError(line_, "CRLF line ending");
        return std::istringstream(line);
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

    bool at_end() {
        std::string rest;
        while (std::getline(in_, rest)) {
            ++line_;
            if (rest.find_first_not_of(" \t") != std::string::npos) return false;
        }
        return true;
    }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

template <typename... T>
void parse_fields(std::istringstream& ss, std::size_t line, const char* what, T&... fields) {
    ((ss >> fields), ...);
    if (ss.fail()) throw ParseError(line, std::string("expected ") + what);
    std::string extra;
    if (ss >> extra) throw ParseError(line, std::string("trailing data after ") + what);
}

}  // namespace

Mesh read_mesh(std::istream& in) {
    LineReader reader(in);
    {
        auto ss = reader.next("header");
        std::string magic;
        int version = 0;
        parse_fields(ss, reader.line(), "header 'mesh2d 1'", magic, version);
        if (magic != "mesh2d" || version != 1)
            throw ParseError(reader.line(), "bad header, expected 'mesh2d 1'");
    }
    long long nn = 0, nt = 0, nb = 0;
    {
        auto ss = reader.next("counts");
        parse_fields(ss, reader.line(), "three counts", nn, nt, nb);
        if (nn < 0 || nt < 0 || nb < 0) throw ParseError(reader.line(), "negative count");
    }

    std::vector<Point> nodes(static_cast<std::size_t>(nn));
    for (auto& p : nodes) {
        auto ss = reader.next("node line");
        parse_fields(ss, reader.line(), "two coordinates", p.x1, p.x2);
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2))
            throw ParseError(reader.line(), "non-finite coordinate");
    }

    std::vector<Triangle> tris(static_cast<std::size_t>(nt));
    for (std::size_t t = 0; t < tris.size(); ++t) {
        auto ss = reader.next("triangle line");
        long long i = 0, j = 0, k = 0;
        parse_fields(ss, reader.line(), "three vertex indices", i, j, k);
        for (auto v : {i, j, k}) {
            if (v < 0 || v >= nn)
                throw ParseError(reader.line(), "triangle " + std::to_string(t) +
                                                    ": vertex index " + std::to_string(v) +
                                                    " out of range");
        }
        tris[t].vertex_ids = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                              static_cast<std::int32_t>(k)};
        const auto idx = [&](long long v) { return nodes[static_cast<std::size_t>(v)]; };
        if (!(signed_area({idx(i), idx(j), idx(k)}) > 0.0))
            throw ParseError(reader.line(),
                             "triangle " + std::to_string(t) + " has non-positive area");
    }

    std::vector<BoundaryEdge> edges(static_cast<std::size_t>(nb));
    for (auto& e : edges) {
        auto ss = reader.next("boundary edge line");
        long long i = 0, j = 0;
        int tag = 0;
        parse_fields(ss, reader.line(), "two endpoint indices and a tag", i, j, tag);
        if (i < 0 || i >= nn || j < 0 || j >= nn)
            throw ParseError(reader.line(), "boundary edge index out of range");
        e.endpoint_ids = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)};
        e.tag = tag;
    }
    const std::size_t last = reader.line();
    if (!reader.at_end()) throw ParseError(reader.line(), "unexpected trailing content");

    try {
        return Mesh(std::move(nodes), std::move(tris), std::move(edges));
    } catch (const std::invalid_argument& err) {
        throw ParseError(last, err.what());
    }
}

Mesh read_mesh(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_mesh(in);
}

}  // namespace lfem
