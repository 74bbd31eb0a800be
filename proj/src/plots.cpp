#include "lmcf/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "lmcf/io.hpp"

namespace lmcf {

namespace {

struct Box {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void add(Vec2 p) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    bool empty() const { return !(hi.x >= lo.x); }
};

std::string fmt(double v, const char* f = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Maps a world box (y up) onto a square-ish pixel area, keeping aspect.
class Canvas {
public:
    Canvas(Box box, double width, double height, double margin = 40.0) : w_(width), h_(height), m_(margin) {
        if (box.empty()) box = {{-1, -1}, {1, 1}};
        Vec2 span = box.hi - box.lo;
        const double pad = 0.05 * std::max({span.x, span.y, 1e-300});
        box.lo -= Vec2{pad, pad};
        box.hi += Vec2{pad, pad};
        span = box.hi - box.lo;
        scale_ = std::min((w_ - 2 * m_) / span.x, (h_ - 2 * m_ - 30) / span.y);
        centre_ = 0.5 * (box.lo + box.hi);
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
             << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    Vec2 map(Vec2 p) const {
        return {0.5 * w_ + scale_ * (p.x - centre_.x), 0.5 * (h_ + 30) - scale_ * (p.y - centre_.y)};
    }

    void polyline(const Polyline& l, const std::string& colour, double width = 1.2, bool dashed = false) {
        if (l.size() < 2) return;
        out_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width << '"';
        if (dashed) out_ << " stroke-dasharray=\"4 3\"";
        out_ << " points=\"";
        for (const Vec2 p : l) {
            const Vec2 q = map(p);
            out_ << fmt(q.x, "%.2f") << ',' << fmt(q.y, "%.2f") << ' ';
        }
        out_ << "\"/>\n";
    }

    void axes_cross(Vec2 at) {
        const Vec2 q = map(at);
        out_ << "<path d=\"M" << q.x - 5 << ' ' << q.y << "h10M" << q.x << ' ' << q.y - 5
             << "v10\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    void circle(Vec2 c, double r, const std::string& colour) {
        const Vec2 q = map(c);
        out_ << "<circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"" << scale_ * r
             << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-dasharray=\"2 4\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 13) {
        out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"" << size
             << "\">" << s << "</text>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    double w_, h_, m_;
    double scale_ = 1.0;
    Vec2 centre_;
    std::ostringstream out_;
};

std::string frame_colour(std::size_t k, std::size_t n) {
    const double f = n > 1 ? static_cast<double>(k) / (n - 1) : 0.0;
    const int r = static_cast<int>(40 + 200 * f), b = static_cast<int>(220 - 180 * f);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x30%02x", r, b);
    return buf;
}

std::vector<std::size_t> frame_indices(std::size_t count, std::size_t frames) {
    std::vector<std::size_t> idx;
    if (count == 0) return idx;
    frames = std::max<std::size_t>(2, std::min(frames, count));
    for (std::size_t k = 0; k < frames; ++k) idx.push_back(k * (count - 1) / (frames - 1));
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

}  // namespace

std::string montage_svg(const Trajectory& traj, const MontageOptions& options) {
    const auto idx = frame_indices(traj.snapshots.size(), options.frames);
    std::vector<std::vector<Polyline>> lines;
    Box box;
    for (std::size_t i : idx) {
        ProfileCurve c = traj.snapshots[i].curve;
        if (options.normalize) {
            const Vec2 m = centroid(c);
            c = c.translated(-m).scaled(1.0 / extent(c));
        }
        lines.push_back(as_polylines(c, options.mirror));
        for (const auto& l : lines.back())
            for (const Vec2 p : l) box.add(p);
    }
    Canvas cv(box, 640, 640 + 16.0 * idx.size());
    for (std::size_t k = 0; k < lines.size(); ++k)
        for (std::size_t b = 0; b < lines[k].size(); ++b) cv.polyline(lines[k][b], frame_colour(k, lines.size()), 1.2, b > 0);
    cv.axes_cross({});
    cv.text(10, 20, options.normalize ? "curves (each scaled to unit extent)" : "curves along the flow");
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto& s = traj.snapshots[idx[k]];
        std::string label = "t = " + fmt(s.time, "%.8g");
        if (options.annotate_aspect) {
            try {
                label += "   height/width = " + fmt(aspect_ratio(s.curve));
            } catch (const GeometryError&) {
            }
        }
        std::ostringstream sw;
        sw << "<tspan fill=\"" << frame_colour(k, idx.size()) << "\">" << label << "</tspan>";
        cv.text(10, 40 + 16.0 * k, sw.str(), 12);
    }
    return cv.finish();
}

std::string monitor_svg(const Classification& c) {
    Polyline l;
    for (const auto& m : c.monitor)
        if (m.tau > 0.0 && m.value > 0.0) l.push_back({std::log10(m.tau), std::log10(m.value)});
    // Plotted with tau decreasing to the right.
    for (Vec2& p : l) p.x = -p.x;
    Box flipped;
    for (const Vec2 p : l) flipped.add(p);
    const double W = 720, H = 480, M = 60;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!flipped.empty()) {
        const double dx = std::max(flipped.hi.x - flipped.lo.x, 1e-9), dy = std::max(flipped.hi.y - flipped.lo.y, 0.2);
        const double ylo = flipped.lo.y - 0.1 * dy, yhi = flipped.hi.y + 0.1 * dy;
        auto X = [&](double x) { return M + (W - 2 * M) * (x - flipped.lo.x) / dx; };
        auto Y = [&](double y) { return H - M - (H - 2 * M) * (y - ylo) / (yhi - ylo); };
        o << "<polyline fill=\"none\" stroke=\"#1f4fbf\" stroke-width=\"1.5\" points=\"";
        for (const Vec2 p : l) o << fmt(X(p.x), "%.2f") << ',' << fmt(Y(p.y), "%.2f") << ' ';
        o << "\"/>\n";
        for (const Vec2 p : l)
            o << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"2\" fill=\"#1f4fbf\"/>\n";
        o << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
          << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int k = static_cast<int>(std::ceil(flipped.lo.x)); k <= flipped.hi.x; ++k)
            o << "<text x=\"" << X(k) - 10 << "\" y=\"" << H - M + 18 << "\" font-size=\"11\" font-family=\"sans-serif\">"
              << "1e" << -k << "</text>\n";
        for (int k = 0; k <= 4; ++k) {
            const double y = ylo + (yhi - ylo) * k / 4.0;
            o << "<text x=\"4\" y=\"" << Y(y) + 4 << "\" font-size=\"11\" font-family=\"sans-serif\">"
              << fmt(std::pow(10.0, y), "%.3g") << "</text>\n";
        }
    }
    o << "<text x=\"" << M << "\" y=\"24\" font-size=\"14\" font-family=\"sans-serif\">K^2 (T_hat - t) against T_hat - t"
      << " (verdict " << to_string(c.verdict) << ", final ratio " << fmt(c.final_ratio) << ", drift "
      << fmt(c.drift_exponent) << ")</text>\n";
    o << "</svg>\n";
    return o.str();
}

std::string overlay_svg(const RescaledCurve& curve, const ModelFit& fit, double window_radius,
                        const std::string& title) {
    const Box box{{-window_radius, -window_radius}, {window_radius, window_radius}};
    Canvas cv(box, 600, 630);
    cv.circle({}, window_radius, "#888888");
    // Clip the curve to a slightly larger box so far-away parts do not dominate the file.
    const double clip = 1.3 * window_radius;
    auto clipped = [&](const Polyline& l) {
        std::vector<Polyline> parts(1);
        for (const Vec2 p : l) {
            if (std::abs(p.x) <= clip && std::abs(p.y) <= clip)
                parts.back().push_back(p);
            else if (!parts.back().empty())
                parts.emplace_back();
        }
        return parts;
    };
    const auto lines = as_polylines(curve.curve, false);
    for (const auto& l : lines)
        for (const auto& part : clipped(l)) cv.polyline(part, "#1f4fbf", 1.6);
    Polyline m(lines.front());
    for (Vec2& p : m) p = 2.0 * curve.origin - p;
    for (const auto& part : clipped(m)) cv.polyline(part, "#1f4fbf", 1.2, true);
    const std::string name = fit.model == "unmatched" ? fit.runner_up : fit.model;
    ModelFit drawn = fit;
    drawn.model = name;
    try {
        for (const auto& l : model_polylines(drawn, curve.origin, window_radius))
            for (const auto& part : clipped(l)) cv.polyline(part, "#d0402a", 1.0, true);
    } catch (const AnalysisError&) {
    }
    cv.axes_cross({});
    cv.text(10, 20, title);
    cv.text(10, 38,
            "model " + fit.model + (fit.model == "unmatched" ? " (closest " + name + ")" : "") + ", distance " +
                fmt(fit.distance),
            12);
    return cv.finish();
}

std::vector<std::filesystem::path> emit_plots(const Trajectory& traj, const SingularityReport& report,
                                              const std::filesystem::path& directory, const PlotOptions& options) {
    std::vector<std::filesystem::path> out;
    auto put = [&](const std::string& name, const std::string& svg) {
        const auto p = directory / name;
        write_text(p, svg);
        out.push_back(p);
    };
    put("montage.svg", montage_svg(traj, options.montage));
    if (report.classification) put("monitor.svg", monitor_svg(*report.classification));
    if (report.type1_curve && report.blowup_match)
        put("type1_overlay.svg", overlay_svg(*report.type1_curve, *report.blowup_match, options.type1_window,
                                             "Type I rescale, sigma = " + fmt(report.type1_curve->sigma)));
    return out;
}

}  // namespace lmcf
