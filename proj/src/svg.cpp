#include "carver/svg.h"

#include "carver/errors.h"

#include <charconv>

namespace carver {

namespace {

constexpr double kCanvas = 1024.0;

// Fixed six decimals, independent of the global locale.
std::string num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

double sx(double u) { return u * kCanvas; }
double sy(double u) { return (1.0 - u) * kCanvas; }

}  // namespace

std::string render_svg(const DiscreteContinuum& K, const SvgOverlays& overlays) {
    if (K.dim() != 2) fail(ErrorKind::UnsupportedDimension, "SVG rendering needs d = 2, got d = " + std::to_string(K.dim()));
    if (overlays.curve && overlays.curve->d != 2) fail(ErrorKind::UnsupportedDimension, "curve overlay must be planar");
    const double R = K.resolution();
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" viewBox=\"0 0 1024 1024\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"1024\" height=\"1024\" fill=\"white\"/>\n";
    out += "<g fill=\"#3b6ea5\" stroke=\"none\">\n";
    // Cells are sorted by (x, y); emit runs along y for each column.
    const auto& cells = K.cells().cells();
    for (std::size_t i = 0; i < cells.size();) {
        std::size_t j = i + 1;
        while (j < cells.size() && cells[j][0] == cells[i][0] && cells[j][1] == cells[j - 1][1] + 1) ++j;
        const double x0 = cells[i][0] / R;
        const double y0 = cells[i][1] / R;
        const double y1 = (cells[j - 1][1] + 1) / R;
        out += "<rect x=\"" + num(sx(x0)) + "\" y=\"" + num(sy(y1)) + "\" width=\"" + num(sx(1.0 / R)) +
               "\" height=\"" + num(sx(y1 - y0)) + "\"/>\n";
        i = j;
    }
    out += "</g>\n";
    if (!overlays.cubes.empty()) {
        out += "<g fill=\"none\" stroke=\"#d1495b\" stroke-width=\"1.5\">\n";
        for (const auto& cube : overlays.cubes) {
            const double x0 = cube.origin[0] / R;
            const double y1 = (cube.origin[1] + cube.edge_cells) / R;
            const double e = cube.edge_cells / R;
            out += "<rect x=\"" + num(sx(x0)) + "\" y=\"" + num(sy(y1)) + "\" width=\"" + num(sx(e)) + "\" height=\"" +
                   num(sx(e)) + "\"/>\n";
        }
        out += "</g>\n";
    }
    if (overlays.curve && !overlays.curve->points.empty()) {
        out += "<path fill=\"none\" stroke=\"#edae49\" stroke-width=\"2\" d=\"";
        bool first = true;
        for (const auto& p : overlays.curve->points) {
            out += first ? "M" : " L";
            out += num(sx(p[0])) + " " + num(sy(p[1]));
            first = false;
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace carver
