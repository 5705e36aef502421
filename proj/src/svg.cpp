#include "calabi/svg.hpp"

#include <cmath>
#include <cstdio>

#include "calabi/error.hpp"

namespace calabi {

std::string checkerboard_svg(const Parameterization& param,
                             const std::vector<std::array<int, 3>>& faces, int cells) {
    if (cells < 1) fail("checkerboard_svg: cells must be >= 1");
    for (std::size_t v = 0; v < param.embedded.size(); ++v)
        if (!param.embedded[v]) fail("checkerboard_svg: vertex ", v, " is not embedded");

    std::vector<Vec2> uv = param.uv;
    normalize_uv(uv);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" "
           "width=\"1024\" height=\"1024\" shape-rendering=\"crispEdges\">\n";
    char buf[192];
    for (const auto& f : faces) {
        Vec2 a = uv[f[0]], b = uv[f[1]], c = uv[f[2]];
        double cu = (a.x + b.x + c.x) / 3.0;
        double cv = (a.y + b.y + c.y) / 3.0;
        long parity = (static_cast<long>(std::floor(cu * cells)) +
                       static_cast<long>(std::floor(cv * cells))) & 1;
        const char* fill = parity == 0 ? "#ffffff" : "#333333";
        // SVG y runs downward; flip v.
        std::snprintf(buf, sizeof buf,
                      "<polygon points=\"%.6f,%.6f %.6f,%.6f %.6f,%.6f\" fill=\"%s\"/>\n", a.x,
                      1.0 - a.y, b.x, 1.0 - b.y, c.x, 1.0 - c.y, fill);
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace calabi
