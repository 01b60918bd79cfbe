/// @file svg.cpp
#include "porolub/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "porolub/error.hpp"

namespace porolub {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string svg_plot(const std::vector<SvgSeries>& series, const SvgOptions& opt) {
    const int W = opt.width, H = opt.height;
    const int ml = 70, mr = 20, mt = 36, mb = 52;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            double xv = s.x[k], yv = s.y[k];
            if (opt.logx) {
                if (!(xv > 0.0)) throw Error(ErrorCategory::contract, "log axis needs positive x");
                xv = std::log10(xv);
            }
            if (opt.logy) {
                if (!(yv > 0.0)) throw Error(ErrorCategory::contract, "log axis needs positive y");
                yv = std::log10(yv);
            }
            xmin = std::min(xmin, xv); xmax = std::max(xmax, xv);
            ymin = std::min(ymin, yv); ymax = std::max(ymax, yv);
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax - xmin < 1e-300) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-300) { ymin -= 0.5; ymax += 0.5; }
    const double xpad = 0.03 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    const auto X = [&](double v) {
        if (opt.logx) v = std::log10(v);
        return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr);
    };
    const auto Y = [&](double v) {
        if (opt.logy) v = std::log10(v);
        return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
       << opt.title << "</text>\n";

    // frame
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
       << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks: 5 per axis in plot coordinates
    for (int t = 0; t <= 5; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 5.0;
        const double fy = ymin + (ymax - ymin) * t / 5.0;
        const double px = ml + (W - ml - mr) * t / 5.0;
        const double py = H - mb - (H - mt - mb) * t / 5.0;
        const double lx = opt.logx ? std::pow(10.0, fx) : fx;
        const double ly = opt.logy ? std::pow(10.0, fy) : fy;
        os << "<line x1=\"" << px << "\" y1=\"" << H - mb << "\" x2=\"" << px << "\" y2=\""
           << H - mb + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << H - mb + 18
           << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(lx) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(ly) << "</text>\n";
    }
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 14
       << "\" text-anchor=\"middle\" font-size=\"13\">" << opt.xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << opt.ylabel << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k)
            os << fmt(X(s.x[k])) << "," << fmt(Y(s.y[k])) << " ";
        os << "\"/>\n";
        if (opt.markers)
            for (std::size_t k = 0; k < s.x.size(); ++k)
                os << "<circle cx=\"" << fmt(X(s.x[k])) << "\" cy=\"" << fmt(Y(s.y[k]))
                   << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        if (!s.label.empty())
            os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * si
               << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.label
               << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace porolub
