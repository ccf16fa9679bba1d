#pragma once

#include <string>
#include <vector>

#include "skewrot/geometry.hpp"

namespace skewrot::svg {

// Minimal self-contained SVG plotting for plane trajectories and curves:
// polylines and dot clouds in data coordinates, equal-aspect mapping, light
// axes through the origin when it is in view.

struct Polyline {
    std::vector<Point> points;
    std::string color = "#1f77b4";
    double width = 1.0;  // stroke width in pixels
};

struct Dots {
    std::vector<Point> points;
    std::string color = "#d62728";
    double radius = 1.5;  // pixels
};

struct Figure {
    std::vector<Polyline> polylines;
    std::vector<Dots> dots;
    int width_px = 640;
    int height_px = 640;
    bool axes = true;
};

// Writes the figure with a 5% margin around the data extents.  Throws
// InsufficientDataError when there is nothing to draw.
void write_figure(const std::string& path, const Figure& fig);

}  // namespace skewrot::svg
