#pragma once

// Minimal static SVG charts. Numbers shown here are always also written to a
// companion CSV by the caller.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace effidx::svg {

namespace detail {

inline std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct Frame {
    double width = 900;
    double height = 480;
    double left = 70;
    double right = 20;
    double top = 40;
    double bottom = 130;

    double plot_w() const { return width - left - right; }
    double plot_h() const { return height - top - bottom; }
};

inline std::string open(const Frame& f, std::string_view title) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"11\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{3}</text>\n",
        f.width, f.height, f.width / 2, escape(title));
}

inline std::string axes(const Frame& f, double y_max, std::string_view y_label) {
    std::string out = fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n"
        "<line x1=\"{0}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\" stroke=\"black\"/>\n",
        f.left, f.top, f.top + f.plot_h(), f.left + f.plot_w());
    for (int i = 0; i <= 5; ++i) {
        const double v = y_max * i / 5.0;
        const double y = f.top + f.plot_h() * (1.0 - i / 5.0);
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3f}</text>\n", f.left - 6, y + 4, v);
    }
    out += fmt::format("<text x=\"16\" y=\"{0}\" transform=\"rotate(-90 16 {0})\" text-anchor=\"middle\">{1}</text>\n",
                       f.top + f.plot_h() / 2, escape(y_label));
    return out;
}

inline double nice_max(double v) {
    if (!(v > 0.0)) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (step * mag >= v) return step * mag;
    }
    return 10.0 * mag;
}

inline std::string category_label(const Frame& f, double x, std::string_view label) {
    const double y = f.top + f.plot_h() + 12;
    return fmt::format("<text x=\"{0}\" y=\"{1}\" transform=\"rotate(-60 {0} {1})\" text-anchor=\"end\">{2}</text>\n",
                       x, y, escape(label));
}

}  // namespace detail

inline std::string bar_chart(std::string_view title, std::span<const std::string> labels,
                             std::span<const double> values, std::string_view y_label) {
    const detail::Frame f;
    const double y_max = detail::nice_max(values.empty() ? 1.0 : *std::max_element(values.begin(), values.end()));
    std::string out = detail::open(f, title) + detail::axes(f, y_max, y_label);
    const double slot = values.empty() ? 0.0 : f.plot_w() / static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double h = f.plot_h() * std::max(0.0, values[i]) / y_max;
        const double x = f.left + slot * static_cast<double>(i);
        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"#4a78b5\"/>\n",
                           x + slot * 0.15, f.top + f.plot_h() - h, slot * 0.7, h);
        out += detail::category_label(f, x + slot / 2, labels[i]);
    }
    return out + "</svg>\n";
}

/// One stacked bar per label; series[k][i] is the k-th segment of bar i.
inline std::string stacked_bar_chart(std::string_view title, std::span<const std::string> labels,
                                     std::span<const std::string> series_names,
                                     std::span<const std::vector<double>> series, std::string_view y_label) {
    static constexpr std::array<std::string_view, 4> colors = {"#4a78b5", "#e08a2c", "#5aa55a", "#b54a4a"};
    const detail::Frame f;
    double top = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        double sum = 0.0;
        for (const auto& s : series) sum += std::max(0.0, s[i]);
        top = std::max(top, sum);
    }
    const double y_max = detail::nice_max(top);
    std::string out = detail::open(f, title) + detail::axes(f, y_max, y_label);
    const double slot = labels.empty() ? 0.0 : f.plot_w() / static_cast<double>(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double x = f.left + slot * static_cast<double>(i);
        double base = f.top + f.plot_h();
        for (std::size_t k = 0; k < series.size(); ++k) {
            const double h = f.plot_h() * std::max(0.0, series[k][i]) / y_max;
            base -= h;
            out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                               x + slot * 0.15, base, slot * 0.7, h, colors[k % colors.size()]);
        }
        out += detail::category_label(f, x + slot / 2, labels[i]);
    }
    for (std::size_t k = 0; k < series_names.size(); ++k) {
        const double lx = f.left + f.plot_w() - 150;
        const double ly = f.top + 10 + 16 * static_cast<double>(k);
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>"
                           "<text x=\"{}\" y=\"{}\">{}</text>\n",
                           lx, ly, colors[k % colors.size()], lx + 16, ly + 9, detail::escape(series_names[k]));
    }
    return out + "</svg>\n";
}

/// Scatter with a fitted line y = intercept + slope * x.
inline std::string scatter_chart(std::string_view title, std::span<const double> xs, std::span<const double> ys,
                                 double slope, double intercept, std::string_view x_label,
                                 std::string_view y_label) {
    detail::Frame f;
    f.width = 640;
    f.height = 480;
    f.bottom = 60;
    const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    double x0 = *xmin_it, x1 = *xmax_it, y0 = *ymin_it, y1 = *ymax_it;
    const double px = std::max(1e-3, (x1 - x0) * 0.1);
    const double py = std::max(1e-3, (y1 - y0) * 0.1);
    x0 -= px; x1 += px; y0 -= py; y1 += py;
    const auto sx = [&](double x) { return f.left + f.plot_w() * (x - x0) / (x1 - x0); };
    const auto sy = [&](double y) { return f.top + f.plot_h() * (1.0 - (y - y0) / (y1 - y0)); };

    std::string out = detail::open(f, title);
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                       f.left, f.top, f.plot_w(), f.plot_h());
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0;
        const double yv = y0 + (y1 - y0) * i / 4.0;
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.3f}</text>\n", sx(xv),
                           f.top + f.plot_h() + 16, xv);
        out += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3f}</text>\n", f.left - 6,
                           sy(yv) + 4, yv);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", f.left + f.plot_w() / 2,
                       f.height - 16, detail::escape(x_label));
    out += fmt::format("<text x=\"16\" y=\"{0}\" transform=\"rotate(-90 16 {0})\" text-anchor=\"middle\">{1}</text>\n",
                       f.top + f.plot_h() / 2, detail::escape(y_label));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3.5\" fill=\"#4a78b5\"/>\n", sx(xs[i]), sy(ys[i]));
    }
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#b54a4a\" "
                       "stroke-width=\"1.5\"/>\n",
                       sx(x0), sy(intercept + slope * x0), sx(x1), sy(intercept + slope * x1));
    out += fmt::format("<text x=\"{}\" y=\"{}\">slope {:.4f}, intercept {:.4f}</text>\n", f.left + 8, f.top + 16,
                       slope, intercept);
    return out + "</svg>\n";
}

}  // namespace effidx::svg
