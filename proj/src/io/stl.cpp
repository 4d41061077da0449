// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/stl.hpp"

#include <bit>
#include <cstring>
#include <sstream>

#include "lrvis/core/error.hpp"
#include "lrvis/io/files.hpp"

namespace lrvis::io {
namespace {

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

float get_f32(const std::uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

bool degenerate(const Triangle& t) {
    const double e = std::max({dot(t.v[1] - t.v[0], t.v[1] - t.v[0]), dot(t.v[2] - t.v[1], t.v[2] - t.v[1]),
                               dot(t.v[0] - t.v[2], t.v[0] - t.v[2])});
    return !(norm(t.normal()) > 1e-14 * e);
}

void add(TriangleMesh& mesh, const Triangle& t) {
    if (degenerate(t))
        ++mesh.dropped_degenerate;
    else
        mesh.triangles.push_back(t);
}

bool looks_ascii(const std::vector<std::uint8_t>& bytes) {
    std::size_t i = 0;
    while (i < bytes.size() && std::isspace(bytes[i])) ++i;
    return bytes.size() - i >= 5 && std::memcmp(bytes.data() + i, "solid", 5) == 0;
}

TriangleMesh parse_ascii(const std::vector<std::uint8_t>& bytes) {
    std::istringstream in(std::string(bytes.begin(), bytes.end()));
    TriangleMesh mesh;
    std::string tok;
    Triangle tri;
    int nv = -1;  // -1: outside a facet
    while (in >> tok) {
        if (tok == "facet") {
            nv = 0;
        } else if (tok == "vertex") {
            if (nv < 0 || nv >= 3) throw FormatError("ASCII STL: vertex outside a facet or more than 3 per facet");
            Vec3 p;
            if (!(in >> p[0] >> p[1] >> p[2])) throw FormatError("ASCII STL: malformed vertex");
            tri.v[nv++] = p;
        } else if (tok == "endfacet") {
            if (nv != 3) throw FormatError("ASCII STL: facet without exactly 3 vertices");
            add(mesh, tri);
            nv = -1;
        }
    }
    if (nv != -1) throw FormatError("ASCII STL: truncated facet");
    return mesh;
}

}  // namespace

TriangleMesh parse_stl(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() >= 84) {
        const std::uint64_t count = get_u32(bytes.data() + 80);
        const std::uint64_t expected = 84 + 50 * count;
        if (bytes.size() == expected) {
            TriangleMesh mesh;
            mesh.triangles.reserve(count);
            for (std::uint64_t i = 0; i < count; ++i) {
                const std::uint8_t* rec = bytes.data() + 84 + 50 * i + 12;  // skip the normal
                Triangle t;
                for (int v = 0; v < 3; ++v)
                    for (int a = 0; a < 3; ++a) t.v[v][a] = get_f32(rec + 12 * v + 4 * a);
                add(mesh, t);
            }
            return mesh;
        }
        if (!looks_ascii(bytes)) {
            if (bytes.size() < expected) throw FormatError("binary STL truncated");
            throw FormatError("binary STL triangle count does not match file size");
        }
    }
    if (looks_ascii(bytes)) return parse_ascii(bytes);
    throw FormatError("STL file truncated");
}

TriangleMesh load_stl(const std::filesystem::path& path) { return parse_stl(read_bytes(path)); }

std::vector<std::uint8_t> stl_binary(const std::vector<Triangle>& tris) {
    std::vector<std::uint8_t> out(80, 0);
    put_u32(out, static_cast<std::uint32_t>(tris.size()));
    for (const Triangle& t : tris) {
        const Vec3 n = normalized(t.normal());
        for (int a = 0; a < 3; ++a) put_f32(out, static_cast<float>(n[a]));
        for (const Vec3& v : t.v)
            for (int a = 0; a < 3; ++a) put_f32(out, static_cast<float>(v[a]));
        out.push_back(0);
        out.push_back(0);
    }
    return out;
}

std::string stl_ascii(const std::vector<Triangle>& tris, const std::string& name) {
    std::ostringstream os;
    os.precision(9);
    os << "solid " << name << "\n";
    for (const Triangle& t : tris) {
        const Vec3 n = normalized(t.normal());
        os << "  facet normal " << n[0] << ' ' << n[1] << ' ' << n[2] << "\n    outer loop\n";
        for (const Vec3& v : t.v)
            os << "      vertex " << static_cast<float>(v[0]) << ' ' << static_cast<float>(v[1]) << ' '
               << static_cast<float>(v[2]) << "\n";
        os << "    endloop\n  endfacet\n";
    }
    os << "endsolid " << name << "\n";
    return os.str();
}

std::vector<Triangle> box_triangles(const Box3& b) {
    auto c = [&](int i) { return Vec3{i & 1 ? b.hi[0] : b.lo[0], i & 2 ? b.hi[1] : b.lo[1], i & 4 ? b.hi[2] : b.lo[2]}; };
    // Each face as two triangles, counter-clockwise seen from outside.
    static const int faces[6][4] = {{0, 4, 6, 2}, {1, 3, 7, 5}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 2, 3, 1}, {4, 5, 7, 6}};
    std::vector<Triangle> out;
    for (const auto& f : faces) {
        out.push_back({{c(f[0]), c(f[1]), c(f[2])}});
        out.push_back({{c(f[0]), c(f[2]), c(f[3])}});
    }
    return out;
}

}  // namespace lrvis::io
