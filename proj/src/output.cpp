#include "tbvp/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace tbvp {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.precision(17);
    return out;
}

} // namespace

void write_grid_csv(const std::string& path, const GridFunction& u,
                    const std::string& header) {
    auto out = open_out(path);
    out << header << "\n";
    const auto& x = u.mesh().nodes();
    for (std::size_t i = 0; i < x.size(); ++i)
        out << x[i] << "," << u.values()[i] << "\n";
}

void write_branch_csv(const std::string& path, const std::vector<SolveResult>& results) {
    auto out = open_out(path);
    out << "rho,lambda,residual,iterations,converged\n";
    for (const auto& r : results)
        out << r.rho << "," << r.lambda << "," << r.fixed_point_residual << ","
            << r.iterations << "," << (r.converged ? 1 : 0) << "\n";
}

void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("write_svg_plot: bad curve data");
    const double W = 800, H = 600, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = *std::min_element(ys.begin(), ys.end());
    double ymax = *std::max_element(ys.begin(), ys.end());
    if (xmax - xmin < 1e-300) { xmax += 1.0; xmin -= 1.0; }
    if (ymax - ymin < 1e-300) { ymax += 1.0; ymin -= 1.0; }
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n"
        << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
        << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << std::setprecision(6);
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n"
        << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (mt + H - mb) / 2 << ")\">" << ylabel << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << xv << "</text>\n"
            << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << yv << "</text>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    out << std::setprecision(8);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << " ";
        out << px(xs[i]) << "," << py(ys[i]);
    }
    out << "\"/>\n</svg>\n";
}

} // namespace tbvp
