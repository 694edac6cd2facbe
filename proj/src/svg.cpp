#include "pmatch/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pmatch {

std::string survival_svg(const TailEstimate& tail, PlotAxes axes, const std::string& title) {
    constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 50;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < tail.radii.size(); ++i) {
        const double r = tail.radii[i];
        const double s = tail.survival[i];
        if (s <= 0.0 || (axes == PlotAxes::LogLog && r <= 0.0)) continue;
        pts.emplace_back(axes == PlotAxes::LogLog ? std::log10(r) : r, std::log10(s));
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << title << "</text>\n";
    if (pts.size() < 2) {
        out << "</svg>\n";
        return out.str();
    }
    auto [xmin_it, xmax_it] = std::minmax_element(pts.begin(), pts.end());
    double xmin = xmin_it->first, xmax = xmax_it->first;
    double ymin = pts.front().second, ymax = ymin;
    for (auto& p : pts) {
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    }
    if (axes == PlotAxes::LogLog) {
        xmin = std::floor(xmin);
        xmax = std::ceil(xmax);
    }
    ymin = std::floor(ymin);
    ymax = std::max(0.0, std::ceil(ymax));
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double pw = width - left - right, ph = height - top - bottom;
    auto X = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    out << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"#999\" stroke-width=\"0.5\">\n";
    for (double y = ymin; y <= ymax + 1e-9; y += 1) {
        out << "<line x1=\"" << left << "\" y1=\"" << Y(y) << "\" x2=\"" << width - right << "\" y2=\"" << Y(y)
            << "\"/>\n";
        out << "<text stroke=\"none\" x=\"" << left - 6 << "\" y=\"" << Y(y) + 4 << "\" text-anchor=\"end\">1e"
            << static_cast<int>(y) << "</text>\n";
    }
    const int xticks = axes == PlotAxes::LogLog ? static_cast<int>(xmax - xmin) : 5;
    for (int k = 0; k <= xticks; ++k) {
        const double x = xmin + (xmax - xmin) * k / xticks;
        out << "<line x1=\"" << X(x) << "\" y1=\"" << top << "\" x2=\"" << X(x) << "\" y2=\"" << height - bottom
            << "\"/>\n";
        out << "<text stroke=\"none\" x=\"" << X(x) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">";
        if (axes == PlotAxes::LogLog) out << "1e" << static_cast<int>(std::lround(x));
        else out << x;
        out << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"12\">r</text>\n";
    out << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\" transform=\"rotate(-90 16 " << top + ph / 2 << ")\">P(X &gt; r)</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.6\" points=\"";
    for (auto& p : pts) out << X(p.first) << "," << Y(p.second) << " ";
    out << "\"/>\n</svg>\n";
    return out.str();
}

}  // namespace pmatch
