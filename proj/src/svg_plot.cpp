#include "pitfdtd/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace pit {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(target_ticks, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10 * mag;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

void plot_spectra(const std::string& svg_path, const std::string& title, const std::string& y_label,
                  const std::vector<LineSeries>& series) {
    if (series.empty()) throw analysis_error("nothing to plot");
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const LineSeries& s : series) {
        s.spectrum.validate();
        x_lo = std::min(x_lo, s.spectrum.wavelengths_nm.front());
        x_hi = std::max(x_hi, s.spectrum.wavelengths_nm.back());
        for (double v : s.spectrum.values) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (y_hi == y_lo) {
        y_hi += 1;
        y_lo -= 1;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const double W = 800, H = 500, ml = 80, mr = 24, mt = 40, mb = 60;
    const double pw = W - ml - mr, ph = H - mt - mb;
    const auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
    const auto py = [&](double y) { return mt + (y_hi - y) / (y_hi - y_lo) * ph; };

    std::ofstream out(svg_path);
    if (!out) throw analysis_error("cannot write file: " + svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << title << "</text>\n";

    const double xs = nice_step(x_hi - x_lo, 8), ys = nice_step(y_hi - y_lo, 6);
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9 * xs; x += xs) {
        out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << mt << "\" x2=\"" << num(px(x))
            << "\" y2=\"" << mt + ph << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << num(px(x)) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    }
    for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9 * ys; y += ys) {
        out << "<line x1=\"" << ml << "\" y1=\"" << num(py(y)) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << num(py(y)) << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << num(py(y) + 4)
            << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\">wavelength (nm)</text>\n"
        << "<text x=\"20\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << mt + ph / 2 << ")\">" << y_label << "</text>\n</g>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (size_t k = 0; k < series.size(); ++k) {
        const LineSeries& s = series[k];
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[k % 6] << "\" stroke-width=\"1.8\"";
        if (s.dashed) out << " stroke-dasharray=\"8 5\"";
        out << " points=\"";
        for (size_t i = 0; i < s.spectrum.values.size(); ++i)
            out << num(px(s.spectrum.wavelengths_nm[i])) << ',' << num(py(s.spectrum.values[i])) << ' ';
        out << "\"/>\n";
    }
    for (size_t k = 0; k < series.size(); ++k) {
        const double ly = mt + 16 + 18 * static_cast<double>(k);
        out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 120
            << "\" y2=\"" << ly << "\" stroke=\"" << kPalette[k % 6] << "\" stroke-width=\"1.8\""
            << (series[k].dashed ? " stroke-dasharray=\"8 5\"" : "") << "/>\n"
            << "<text x=\"" << ml + pw - 114 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[k].label << "</text>\n";
    }
    out << "</svg>\n";
}

void plot_field_map(const std::string& svg_path, const std::string& title, const FieldMapData& map,
                    const std::vector<MapOutline>& outlines) {
    if (map.nx < 1 || map.ny < 1 || map.values.empty()) throw analysis_error("empty field map");

    // Global phase rotation maximizing the power of the plotted real part.
    double m00 = 0, m01 = 0, m11 = 0;
    for (const std::complex<double>& z : map.values) {
        m00 += z.real() * z.real();
        m01 += z.real() * -z.imag();
        m11 += z.imag() * z.imag();
    }
    const double th = 0.5 * std::atan2(2 * m01, m00 - m11);
    const double c = std::cos(th), s = std::sin(th);
    std::vector<double> re(map.values.size());
    double vmax = 0;
    for (size_t i = 0; i < re.size(); ++i) {
        re[i] = c * map.values[i].real() - s * map.values[i].imag();
        vmax = std::max(vmax, std::abs(re[i]));
    }
    if (vmax == 0) vmax = 1;

    const double scale = 640.0 / std::max(map.nx * map.dx_nm, map.ny * map.dy_nm);
    const double pw = map.nx * map.dx_nm * scale, ph = map.ny * map.dy_nm * scale;
    const double ml = 60, mt = 48, W = ml + pw + 90, H = mt + ph + 50;
    // Sample (i, j) covers a dx-by-dy cell centered on its position; y up.
    const auto px = [&](double x_nm) { return ml + (x_nm - (map.x0_nm - map.dx_nm / 2)) * scale; };
    const auto py = [&](double y_nm) { return mt + ph - (y_nm - (map.y0_nm - map.dy_nm / 2)) * scale; };

    std::ofstream out(svg_path);
    if (!out) throw analysis_error("cannot write file: " + svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\"" << num(H)
        << "\" viewBox=\"0 0 " << num(W) << ' ' << num(H) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(ml + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";

    const auto color = [](double v) { // v in [-1, 1], blue-white-red
        const double a = std::clamp(v, -1.0, 1.0);
        const int r = static_cast<int>(std::lround(a >= 0 ? 255 : 255 * (1 + a)));
        const int g = static_cast<int>(std::lround(255 * (1 - std::abs(a))));
        const int b = static_cast<int>(std::lround(a <= 0 ? 255 : 255 * (1 - a)));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    for (int i = 0; i < map.nx; ++i)
        for (int j = 0; j < map.ny; ++j) {
            const double v = re[static_cast<size_t>(i) * map.ny + j] / vmax;
            const double x = px(map.x0_nm + (i - 0.5) * map.dx_nm);
            const double y = py(map.y0_nm + (j + 0.5) * map.dy_nm);
            out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
                << num(map.dx_nm * scale + 0.5) << "\" height=\"" << num(map.dy_nm * scale + 0.5)
                << "\" fill=\"" << color(v) << "\"/>\n";
        }

    for (const MapOutline& o : outlines)
        out << "<rect x=\"" << num(px(std::min(o.x0_nm, o.x1_nm)) - 0.0) << "\" y=\""
            << num(py(std::max(o.y0_nm, o.y1_nm))) << "\" width=\""
            << num(std::abs(o.x1_nm - o.x0_nm) * scale) << "\" height=\""
            << num(std::abs(o.y1_nm - o.y0_nm) * scale)
            << "\" fill=\"none\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";

    out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // Color bar.
    const double bx = ml + pw + 20, bw = 16, bh = ph;
    const int steps = 64;
    for (int k = 0; k < steps; ++k) {
        const double v = 1.0 - 2.0 * k / (steps - 1);
        out << "<rect x=\"" << num(bx) << "\" y=\"" << num(mt + bh * k / steps) << "\" width=\""
            << num(bw) << "\" height=\"" << num(bh / steps + 0.5) << "\" fill=\"" << color(v)
            << "\"/>\n";
    }
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n"
        << "<text x=\"" << num(bx + bw + 4) << "\" y=\"" << num(mt + 10) << "\">+" << num(vmax)
        << "</text>\n"
        << "<text x=\"" << num(bx + bw + 4) << "\" y=\"" << num(mt + bh / 2 + 4) << "\">0</text>\n"
        << "<text x=\"" << num(bx + bw + 4) << "\" y=\"" << num(mt + bh) << "\">-" << num(vmax)
        << "</text>\n"
        << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(H - 12)
        << "\" text-anchor=\"middle\">x (nm)</text>\n"
        << "<text x=\"22\" y=\"" << num(mt + ph / 2) << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 22 " << num(mt + ph / 2) << ")\">y (nm)</text>\n</g>\n"
        << "</svg>\n";
}

} // namespace pit
