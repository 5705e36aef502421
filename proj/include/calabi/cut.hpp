#pragma once
#include <vector>

#include "calabi/mesh.hpp"
#include "calabi/packing_metric.hpp"

namespace calabi {

// Cut-open copy of a closed mesh. source_vertex maps each vertex to the
// vertex of the original mesh it was duplicated from (identity for vertices
// that were not duplicated).
struct CutMesh {
    Mesh mesh;
    std::vector<int> source_vertex;
};

// Slices a closed genus >= 1 mesh into a topological disk. The cut graph is
// the tree-cotree construction: edges left over by a primal spanning tree and
// a dual spanning tree (both BFS, rooted at index 0), joined through the
// primal tree and pruned of dangling branches. Faces are preserved; vertices
// along the cut are duplicated once per fan sector.
CutMesh cut_to_disk(const Mesh&);

// Metric for the cut mesh: u copied through source_vertex, per-edge data
// copied from the corresponding original edge.
PackingMetric metric_for_cut(const CutMesh&, const Mesh& original, const PackingMetric&);

} // namespace calabi
