#include "calabi/obj_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "calabi/error.hpp"

namespace calabi {

namespace {

struct ObjData {
    std::vector<Vec3> positions;
    std::vector<Vec2> uvs;
    std::vector<std::array<int, 3>> faces;      // 0-based position indices
    std::vector<std::array<int, 3>> face_uvs;   // 0-based uv indices, -1 if absent
};

// "i", "i/t", "i/t/n", "i//n" -> position and uv indices (1-based in file).
void parse_face_token(const std::string& token, int line_no, int& pos_idx, int& uv_idx) {
    std::size_t s1 = token.find('/');
    std::string p = token.substr(0, s1);
    std::string t;
    if (s1 != std::string::npos) {
        std::size_t s2 = token.find('/', s1 + 1);
        t = token.substr(s1 + 1, s2 == std::string::npos ? std::string::npos : s2 - s1 - 1);
    }
    try {
        pos_idx = std::stoi(p);
    } catch (const std::exception&) {
        fail("obj line ", line_no, ": bad face index '", token, "'");
    }
    uv_idx = 0;
    if (!t.empty()) {
        try {
            uv_idx = std::stoi(t);
        } catch (const std::exception&) {
            fail("obj line ", line_no, ": bad texture index '", token, "'");
        }
    }
    if (pos_idx <= 0 || uv_idx < 0)
        fail("obj line ", line_no, ": only positive 1-based indices are supported");
}

ObjData parse_obj(std::istream& is, const std::string& name) {
    ObjData d;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z))
                fail(name, " line ", line_no, ": malformed vertex record");
            d.positions.push_back(p);
        } else if (tag == "vt") {
            Vec2 t;
            if (!(ls >> t.x >> t.y)) fail(name, " line ", line_no, ": malformed vt record");
            d.uvs.push_back(t);
        } else if (tag == "f") {
            std::vector<int> poly, poly_uv;
            std::string token;
            while (ls >> token) {
                int pi = 0, ti = 0;
                parse_face_token(token, line_no, pi, ti);
                if (pi > static_cast<int>(d.positions.size()))
                    fail(name, " line ", line_no, ": vertex index ", pi, " out of range");
                if (ti > static_cast<int>(d.uvs.size()))
                    fail(name, " line ", line_no, ": texture index ", ti, " out of range");
                poly.push_back(pi - 1);
                poly_uv.push_back(ti - 1);
            }
            if (poly.size() < 3) fail(name, " line ", line_no, ": face with fewer than 3 vertices");
            for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
                d.faces.push_back({poly[0], poly[k], poly[k + 1]});
                d.face_uvs.push_back({poly_uv[0], poly_uv[k], poly_uv[k + 1]});
            }
        }
        // Other records (vn, g, o, s, usemtl, ...) are ignored.
    }
    if (d.faces.empty()) fail(name, ": no faces found");
    return d;
}

// Drop unreferenced positions, keeping the file's vertex order so that
// indices in diagnostics and --corners keep meaning.
void compact(ObjData& d) {
    std::vector<bool> used(d.positions.size(), false);
    for (const auto& f : d.faces)
        for (int v : f) used[v] = true;
    std::vector<int> remap(d.positions.size(), -1);
    std::vector<Vec3> kept;
    for (std::size_t v = 0; v < d.positions.size(); ++v) {
        if (used[v]) {
            remap[v] = static_cast<int>(kept.size());
            kept.push_back(d.positions[v]);
        }
    }
    for (auto& f : d.faces)
        for (int& v : f) v = remap[v];
    d.positions = std::move(kept);
}

ObjData parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail("cannot open '", path, "'");
    ObjData d = parse_obj(is, path);
    compact(d);
    return d;
}

} // namespace

Mesh load_mesh(const std::string& path) {
    ObjData d = parse_file(path);
    return build_mesh(std::move(d.positions), std::move(d.faces));
}

ObjWithUv load_obj_with_uv(const std::string& path) {
    ObjData d = parse_file(path);
    ObjWithUv out;
    out.has_uv = true;
    out.corner_uv.reserve(d.faces.size());
    for (const auto& fu : d.face_uvs) {
        std::array<Vec2, 3> cu{};
        for (int c = 0; c < 3; ++c) {
            if (fu[c] < 0) {
                out.has_uv = false;
            } else {
                cu[c] = d.uvs[fu[c]];
            }
        }
        out.corner_uv.push_back(cu);
    }
    out.mesh = build_mesh(std::move(d.positions), std::move(d.faces));
    return out;
}

void write_obj(std::ostream& os, const Mesh& mesh, const std::vector<Vec2>* uv) {
    char buf[128];
    for (const auto& p : mesh.positions) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
        os << buf;
    }
    if (uv) {
        for (const auto& t : *uv) {
            std::snprintf(buf, sizeof buf, "vt %.17g %.17g\n", t.x, t.y);
            os << buf;
        }
        for (const auto& f : mesh.faces) {
            os << "f " << f[0] + 1 << '/' << f[0] + 1 << ' ' << f[1] + 1 << '/' << f[1] + 1 << ' '
               << f[2] + 1 << '/' << f[2] + 1 << '\n';
        }
    } else {
        for (const auto& f : mesh.faces) {
            os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
        }
    }
}

void write_obj_file(const std::string& path, const Mesh& mesh, const std::vector<Vec2>* uv) {
    std::ofstream os(path);
    if (!os) fail("cannot write '", path, "'");
    write_obj(os, mesh, uv);
}

} // namespace calabi
