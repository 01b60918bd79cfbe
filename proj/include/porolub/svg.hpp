/// @file svg.hpp
/// @brief Minimal deterministic SVG line/log-log plot writer.
#pragma once

#include <string>
#include <vector>

namespace porolub {

struct SvgSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
};

struct SvgOptions {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    int width = 720;
    int height = 480;
    bool markers = false;
};

std::string svg_plot(const std::vector<SvgSeries>& series, const SvgOptions& opt);

} // namespace porolub
