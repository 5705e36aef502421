#pragma once
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "calabi/mesh.hpp"
#include "calabi/vec.hpp"

namespace calabi {

// Reads `v`/`f` records; polygons are fan-triangulated; `i/t/n` index forms
// accepted; unreferenced vertices are dropped. Throws Error on parse failures
// and on anything build_mesh rejects.
Mesh load_mesh(const std::string& path);

struct ObjWithUv {
    Mesh mesh;
    bool has_uv = false;                        // every corner carried a vt index
    std::vector<std::array<Vec2, 3>> corner_uv; // aligned with mesh.faces
};

ObjWithUv load_obj_with_uv(const std::string& path);

// Vertex positions at 17 significant digits. With uv: one `vt` per vertex and
// faces as `f i/i j/j k/k`.
void write_obj(std::ostream& os, const Mesh& mesh, const std::vector<Vec2>* uv = nullptr);
void write_obj_file(const std::string& path, const Mesh& mesh,
                    const std::vector<Vec2>* uv = nullptr);

} // namespace calabi
