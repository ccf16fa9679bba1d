#include "skewrot/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "skewrot/errors.hpp"

namespace skewrot::svg {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Transform {
    double scale, x0, y0;  // px = (x - x0) * scale, py = (y0 - y) * scale
    double px(double x) const { return (x - x0) * scale; }
    double py(double y) const { return (y0 - y) * scale; }
};

}  // namespace

void write_figure(const std::string& path, const Figure& fig) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    auto extend = [&](const Point& p) {
        if (!any) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            any = true;
        } else {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    };
    for (const auto& pl : fig.polylines)
        for (const auto& p : pl.points) extend(p);
    for (const auto& d : fig.dots)
        for (const auto& p : d.points) extend(p);
    if (!any) throw InsufficientDataError("figure has no points to draw");

    double spanx = xmax - xmin, spany = ymax - ymin;
    if (spanx <= 0) { xmin -= 1; xmax += 1; spanx = 2; }
    if (spany <= 0) { ymin -= 1; ymax += 1; spany = 2; }
    const double mx = 0.05 * spanx, my = 0.05 * spany;
    xmin -= mx; xmax += mx; ymin -= my; ymax += my;

    // equal-aspect: one scale for both axes, view centered on the data
    Transform t;
    t.scale = std::min(fig.width_px / (xmax - xmin), fig.height_px / (ymax - ymin));
    t.x0 = 0.5 * (xmin + xmax) - 0.5 * fig.width_px / t.scale;
    t.y0 = 0.5 * (ymin + ymax) + 0.5 * fig.height_px / t.scale;

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %d %d\" "
                 "width=\"%d\" height=\"%d\">\n",
                 fig.width_px, fig.height_px, fig.width_px, fig.height_px);
    std::fprintf(f, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", fig.width_px,
                 fig.height_px);

    if (fig.axes) {
        if (t.px(0) >= 0 && t.px(0) <= fig.width_px)
            std::fprintf(f,
                         "<line x1=\"%s\" y1=\"0\" x2=\"%s\" y2=\"%d\" stroke=\"#cccccc\" "
                         "stroke-width=\"1\"/>\n",
                         fmt(t.px(0)).c_str(), fmt(t.px(0)).c_str(), fig.height_px);
        if (t.py(0) >= 0 && t.py(0) <= fig.height_px)
            std::fprintf(f,
                         "<line x1=\"0\" y1=\"%s\" x2=\"%d\" y2=\"%s\" stroke=\"#cccccc\" "
                         "stroke-width=\"1\"/>\n",
                         fmt(t.py(0)).c_str(), fig.width_px, fmt(t.py(0)).c_str());
    }

    for (const auto& pl : fig.polylines) {
        if (pl.points.empty()) continue;
        std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"%s\" points=\"",
                     pl.color.c_str(), fmt(pl.width).c_str());
        for (std::size_t i = 0; i < pl.points.size(); ++i) {
            if (i) std::fputc(' ', f);
            std::fprintf(f, "%s,%s", fmt(t.px(pl.points[i].x)).c_str(),
                         fmt(t.py(pl.points[i].y)).c_str());
        }
        std::fputs("\"/>\n", f);
    }
    for (const auto& d : fig.dots)
        for (const auto& p : d.points)
            std::fprintf(f, "<circle cx=\"%s\" cy=\"%s\" r=\"%s\" fill=\"%s\"/>\n",
                         fmt(t.px(p.x)).c_str(), fmt(t.py(p.y)).c_str(), fmt(d.radius).c_str(),
                         d.color.c_str());

    std::fputs("</svg>\n", f);
    if (std::ferror(f)) {
        std::fclose(f);
        throw std::runtime_error("write failure on " + path);
    }
    if (std::fclose(f) != 0) throw std::runtime_error("close failure on " + path);
}

}  // namespace skewrot::svg
