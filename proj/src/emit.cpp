#include "hdecay/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hdecay {

namespace {

constexpr double kLn10 = M_LN10;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double log10_of(double natural_log) {
    return natural_log / kLn10;
}

void append_key(std::string& out, const char* key, double v, bool last = false) {
    out += "  \"";
    out += key;
    out += "\": ";
    out += format_number(v);
    out += last ? "\n" : ",\n";
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            table.columns = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                        " cells, header has " +
                                        std::to_string(table.columns.size()));
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            char* end = nullptr;
            row[i] = std::strtod(cells[i].c_str(), &end);
            if (end == cells[i].c_str())
                throw std::invalid_argument("CSV cell '" + cells[i] + "' is not numeric");
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header || table.rows.empty())
        throw std::invalid_argument("CSV needs a header line and at least one data row");
    return table;
}

struct Series {
    std::string label;
    std::size_t x_col, y_col;
    const char* color;
    bool dashed;
};

std::string render_plot(const CsvTable& table, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<Series>& series) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series)
        for (const auto& row : table.rows) {
            const double x = row[s.x_col], y = row[s.y_col];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (!std::isfinite(x_lo) || !std::isfinite(y_lo))
        throw std::invalid_argument("CSV has no finite data points to plot");
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double x_pad = 0.05 * (x_hi - x_lo), y_pad = 0.05 * (y_hi - y_lo);
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;

    const double W = 800, H = 520, L = 70, R = 20, T = 34, B = 50;
    const auto px = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (W - L - R); };
    const auto py = [&](double y) { return H - B - (y - y_lo) / (y_hi - y_lo) * (H - T - B); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"520\" "
           "viewBox=\"0 0 800 520\">\n";
    svg += "<rect width=\"800\" height=\"520\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"400\" y=\"20\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"15\">" + title + "</text>\n";

    // frame + ticks
    svg += "<rect x=\"" + fmt("%.2f", L) + "\" y=\"" + fmt("%.2f", T) + "\" width=\"" +
           fmt("%.2f", W - L - R) + "\" height=\"" + fmt("%.2f", H - T - B) +
           "\" fill=\"none\" stroke=\"#222222\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        svg += "<line x1=\"" + fmt("%.2f", px(xv)) + "\" y1=\"" + fmt("%.2f", H - B) +
               "\" x2=\"" + fmt("%.2f", px(xv)) + "\" y2=\"" + fmt("%.2f", H - B + 5) +
               "\" stroke=\"#222222\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", px(xv)) + "\" y=\"" + fmt("%.2f", H - B + 18) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
               fmt("%.4g", xv) + "</text>\n";
        svg += "<line x1=\"" + fmt("%.2f", L - 5) + "\" y1=\"" + fmt("%.2f", py(yv)) +
               "\" x2=\"" + fmt("%.2f", L) + "\" y2=\"" + fmt("%.2f", py(yv)) +
               "\" stroke=\"#222222\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", L - 8) + "\" y=\"" + fmt("%.2f", py(yv) + 4) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
               fmt("%.4g", yv) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.2f", (L + W - R) / 2) + "\" y=\"" + fmt("%.2f", H - 12) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" +
           x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt("%.2f", (T + H - B) / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " + fmt("%.2f", (T + H - B) / 2) + ")\">" +
           y_label + "</text>\n";

    double legend_y = T + 16;
    for (const auto& s : series) {
        std::string pts;
        bool pen_down = false;
        for (const auto& row : table.rows) {
            const double x = row[s.x_col], y = row[s.y_col];
            if (!std::isfinite(x) || !std::isfinite(y)) {
                if (pen_down && !pts.empty()) {
                    svg += "<polyline fill=\"none\" stroke=\"" + std::string(s.color) +
                           "\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
                           " stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
                    pts.clear();
                }
                pen_down = false;
                continue;
            }
            pts += fmt("%.2f", px(x)) + "," + fmt("%.2f", py(y)) + " ";
            pen_down = true;
        }
        if (!pts.empty())
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(s.color) + "\"" +
                   (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
                   " stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        svg += "<line x1=\"" + fmt("%.2f", W - R - 170) + "\" y1=\"" +
               fmt("%.2f", legend_y - 4) + "\" x2=\"" + fmt("%.2f", W - R - 140) +
               "\" y2=\"" + fmt("%.2f", legend_y - 4) + "\" stroke=\"" +
               std::string(s.color) + "\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
               " stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", W - R - 134) + "\" y=\"" + fmt("%.2f", legend_y) +
               "\" font-family=\"monospace\" font-size=\"11\">" + s.label + "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt("%.16e", v);
}

std::string constants_json(const DecayConstants& dc, const IdentityResiduals& res) {
    std::string out = "{\n";
    append_key(out, "a", dc.a);
    append_key(out, "b", dc.b);
    append_key(out, "mu", dc.mu);
    append_key(out, "nu", dc.nu);
    append_key(out, "A", dc.A);
    append_key(out, "tau", dc.tau);
    append_key(out, "theta0", dc.theta0);
    append_key(out, "theta1", dc.theta1);
    append_key(out, "m", dc.m);
    if (dc.near_degenerate) out += "  \"near_degenerate\": true,\n";
    append_key(out, "rate_ab", res.rate_ab);
    append_key(out, "rate_munu", res.rate_munu);
    append_key(out, "angle0_sin", res.angle0_sin);
    append_key(out, "angle0_cos", res.angle0_cos);
    append_key(out, "angle1_sin", res.angle1_sin);
    append_key(out, "angle1_cos", res.angle1_cos, true);
    out += "}\n";
    return out;
}

std::string coeffs_csv(const CoefficientSequence& seq, const DecayConstants& dc) {
    const double log_a = std::log(dc.A);
    std::string out = "n,log10_abs,phase_rad,log10_envelope\n";
    for (std::size_t n = 0; n < seq.entries.size(); ++n) {
        out += std::to_string(n);
        out += ",";
        if (seq.is_zero(n)) {
            out += "-inf,";
            out += format_number(0.0);
        } else {
            out += format_number(log10_of(seq.entries[n].log_mag));
            out += ",";
            out += format_number(seq.entries[n].phase);
        }
        out += ",";
        const double env =
            n == 0 ? 0.0
                   : log10_of(-0.25 * std::log(static_cast<double>(n)) + 0.5 * n * log_a);
        out += format_number(env);
        out += "\n";
    }
    return out;
}

std::string ray_csv(const RayBoundReport& report) {
    std::string out = "r,log10_abs_Bf,log10_bound,excess\n";
    for (std::size_t i = 0; i < report.r_samples.size(); ++i) {
        out += format_number(report.r_samples[i]);
        out += ",";
        out += format_number(log10_of(report.log_transform[i]));
        out += ",";
        out += format_number(log10_of(report.log_bound[i]));
        out += ",";
        out += format_number(log10_of(report.log_transform[i] - report.log_bound[i]));
        out += "\n";
    }
    out += "# max_excess = " + format_number(log10_of(report.max_excess)) + "\n";
    return out;
}

std::string svg_from_csv(const std::string& csv_text) {
    const CsvTable table = parse_csv(csv_text);
    const auto& cols = table.columns;
    if (cols.size() == 4 && cols[0] == "n" && cols[1] == "log10_abs" &&
        cols[2] == "phase_rad" && cols[3] == "log10_envelope") {
        return render_plot(table, "coefficient decay", "n", "log10 magnitude",
                           {{"log10_abs", 0, 1, "#1f77b4", false},
                            {"log10_envelope", 0, 3, "#ff7f0e", true}});
    }
    if (cols.size() == 4 && cols[0] == "r" && cols[1] == "log10_abs_Bf" &&
        cols[2] == "log10_bound" && cols[3] == "excess") {
        return render_plot(table, "ray bound", "r", "log10 magnitude",
                           {{"log10_abs_Bf", 0, 1, "#1f77b4", false},
                            {"log10_bound", 0, 2, "#ff7f0e", true}});
    }
    throw std::invalid_argument("unrecognized CSV header for plotting");
}

}  // namespace hdecay
