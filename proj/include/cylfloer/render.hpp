#pragma once

#include "cylfloer/persistence.hpp"
#include "cylfloer/surgery.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace cylfloer {

namespace svg {

// All coordinates pass through here: fixed 1e-6 quantization, trailing zeros
// stripped. Presentation only; nothing downstream consumes these numbers.
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

inline double approx(const Rational& r) {
    return static_cast<double>(r.num()) / static_cast<double>(r.den());
}

struct Writer {
    std::ostringstream out;
    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
            << "\" y2=\"" << num(y2) << "\" " << style << "/>\n";
    }
    void circle(double cx, double cy, double r, const std::string& style) {
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" "
            << style << "/>\n";
    }
    void text(double x, double y, const std::string& s, const std::string& style) {
        out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" " << style << ">" << s
            << "</text>\n";
    }
    void path(const std::string& d, const std::string& style) {
        out << "<path d=\"" << d << "\" " << style << "/>\n";
    }
};

} // namespace svg

// Curve schematic: the base circle as a horizontal line with identified ends,
// arcs as nested half-ellipses, leaves shaded.
inline void render_curve_panel(svg::Writer& w, const Model& model, double yoff) {
    const Arrangement& arr = model.arr;
    const double spacing = 56, margin = 46, y0 = yoff + 120;
    const double xl = margin, xr = margin + arr.m * spacing;
    auto px = [&](int p) { return margin + spacing * (p + 0.5); };

    const std::string base_style = "stroke=\"#222222\" stroke-width=\"1.4\"";
    const std::string edge_style = "stroke=\"#999999\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"";
    const std::string arc_style = "stroke=\"#2457a6\" stroke-width=\"1.4\" fill=\"none\"";
    w.line(xl, y0 - 100, xl, y0 + 100, edge_style);
    w.line(xr, y0 - 100, xr, y0 + 100, edge_style);
    w.line(xl, y0, xr, y0, base_style);

    std::vector<bool> leaf_seg(arr.m, false);
    for (const auto& leaf : find_leaves(model)) leaf_seg[leaf.seg] = true;

    for (const Arc& arc : arr.arcs) {
        bool upper = arc.upper;
        double dir = upper ? -1.0 : 1.0;
        int lo = arc.block_lo;
        bool wraps = lo + arc.block_count > arr.m;
        double h = 12 + 9.0 * arc.block_count;
        std::string style = arc_style;
        if (arc.block_count == 1 && leaf_seg[lo])
            style = "stroke=\"#2457a6\" stroke-width=\"1.4\" fill=\"#e05555\" fill-opacity=\"0.25\"";
        if (!wraps) {
            double xa = px(lo), xb = px(lo) + arc.block_count * spacing;
            double rx = (xb - xa) / 2;
            std::string d = "M" + svg::num(xa) + " " + svg::num(y0) + " A" + svg::num(rx) + " " +
                            svg::num(h) + " 0 0 " + (upper ? "1" : "0") + " " + svg::num(xb) + " " +
                            svg::num(y0);
            if (style != arc_style) d += " Z";
            w.path(d, style);
        } else {
            double xa = px(lo), xb = px((lo + arc.block_count) % arr.m);
            double yh = y0 + dir * h;
            w.path("M" + svg::num(xa) + " " + svg::num(y0) + " C" + svg::num(xa) + " " +
                       svg::num(yh) + " " + svg::num(xr - 8) + " " + svg::num(yh) + " " +
                       svg::num(xr) + " " + svg::num(yh),
                   arc_style);
            w.path("M" + svg::num(xl) + " " + svg::num(yh) + " C" + svg::num(xl + 8) + " " +
                       svg::num(yh) + " " + svg::num(xb) + " " + svg::num(yh) + " " + svg::num(xb) +
                       " " + svg::num(y0),
                   arc_style);
        }
    }
    for (int p = 0; p < arr.m; ++p) {
        w.circle(px(p), y0, 2.4, "fill=\"#2457a6\"");
        w.text(px(p) - 7, y0 + 16, "s" + std::to_string(p + 1),
               "font-family=\"monospace\" font-size=\"11\" fill=\"#222222\"");
    }
}

// The two weighted trees with labeled, oriented edges; leaves highlighted.
inline void render_tree_panel(svg::Writer& w, const Model& model, double yoff) {
    const Arrangement& arr = model.arr;
    std::vector<bool> is_leaf(arr.faces.size(), false);
    for (const auto& leaf : find_leaves(model)) is_leaf[arr.face_of(leaf.face)] = true;

    double block_y = yoff + 30;
    for (int tree = 0; tree < 2; ++tree) {
        int root = tree == 0 ? arr.top_root : arr.bottom_root;
        const char* color = tree == 0 ? "#2c7a2c" : "#d07a00";
        std::vector<std::vector<std::pair<int, int>>> kids(arr.faces.size()); // (child, seg)
        for (int j = 0; j < arr.m; ++j) {
            if (arr.seg_tree[j] != tree) continue;
            int c = model.tv.child_face[j];
            kids[model.tv.parent[c]].push_back({c, j});
        }
        for (auto& k : kids)
            std::sort(k.begin(), k.end(),
                      [](const auto& a, const auto& b) { return a.second < b.second; });
        std::vector<double> xpos(arr.faces.size()), ypos(arr.faces.size());
        double next_row = 0;
        std::function<void(int)> place = [&](int f) {
            xpos[f] = 60 + model.tv.depth[f] * 130.0;
            if (kids[f].empty()) {
                ypos[f] = block_y + next_row * 44.0;
                next_row += 1;
                return;
            }
            double sum = 0;
            for (auto [c, j] : kids[f]) {
                (void)j;
                place(c);
                sum += ypos[c];
            }
            ypos[f] = sum / kids[f].size();
        };
        place(root);

        for (int j = 0; j < arr.m; ++j) {
            if (arr.seg_tree[j] != tree) continue;
            int u = arr.seg_up[j], d = arr.seg_down[j];
            w.line(xpos[u], ypos[u], xpos[d], ypos[d],
                   "stroke=\"" + std::string(color) + "\" stroke-width=\"1.3\" marker-end=\"\"");
            // Orientation tick: a small arrowhead two thirds of the way up -> down.
            double mx = xpos[u] + (xpos[d] - xpos[u]) * 2 / 3;
            double my = ypos[u] + (ypos[d] - ypos[u]) * 2 / 3;
            double dx = xpos[d] - xpos[u], dy = ypos[d] - ypos[u];
            double len = std::sqrt(dx * dx + dy * dy);
            if (len < 1) len = 1;
            dx /= len;
            dy /= len;
            std::string d1 = "M" + svg::num(mx) + " " + svg::num(my) + " L" +
                             svg::num(mx - 7 * dx + 3.5 * dy) + " " + svg::num(my - 7 * dy - 3.5 * dx) +
                             " L" + svg::num(mx - 7 * dx - 3.5 * dy) + " " +
                             svg::num(my - 7 * dy + 3.5 * dx) + " Z";
            w.path(d1, "fill=\"" + std::string(color) + "\"");
            w.text((xpos[u] + xpos[d]) / 2 - 4, (ypos[u] + ypos[d]) / 2 - 5, std::to_string(j + 1),
                   "font-family=\"monospace\" font-size=\"11\" fill=\"#2457a6\"");
        }
        for (std::size_t f = 0; f < arr.faces.size(); ++f) {
            if (arr.faces[f].tree != tree) continue;
            std::string fill = is_leaf[f] ? "#e05555" : color;
            w.circle(xpos[f], ypos[f], 4.5, "fill=\"" + fill + "\"");
            if (arr.faces[f].is_root) w.circle(xpos[f], ypos[f], 8, "fill=\"none\" stroke=\"" +
                                                                        std::string(color) + "\"");
            std::string label = arr.faces[f].id + " (" +
                                (arr.faces[f].area.is_unbounded() ? std::string("inf")
                                                                  : arr.faces[f].area.value().str()) +
                                ")";
            w.text(xpos[f] + 10, ypos[f] + 4, label,
                   "font-family=\"monospace\" font-size=\"11\" fill=\"#222222\"");
        }
        block_y += (next_row + 1.2) * 44.0;
    }
}

// Barcode diagram on the action axis; infinite bars run off the right edge.
inline void render_barcode_panel(svg::Writer& w, const Barcode& bc, double yoff) {
    std::vector<Rational> values;
    for (const auto& b : bc.infinite) values.push_back(b.birth);
    for (const auto& b : bc.finite) {
        values.push_back(b.birth);
        values.push_back(*b.death);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    double lo = svg::approx(values.front()), hi = svg::approx(values.back());
    if (hi - lo < 1e-9) hi = lo + 1;
    const double x0 = 70, x1 = 560, row = 26;
    auto sx = [&](const Rational& v) { return x0 + (svg::approx(v) - lo) / (hi - lo) * (x1 - x0 - 60); };

    double y = yoff + 24;
    auto bar_rows = bc.infinite;
    bar_rows.insert(bar_rows.end(), bc.finite.begin(), bc.finite.end());
    for (const auto& bar : bar_rows) {
        std::string label = "[" + bar.birth.str() + ", " + (bar.infinite() ? "inf" : (*bar.death).str()) +
                            ")";
        w.text(6, y + 4, label, "font-family=\"monospace\" font-size=\"11\" fill=\"#222222\"");
        double xb = sx(bar.birth);
        if (bar.infinite()) {
            w.line(xb, y, x1, y, "stroke=\"#2457a6\" stroke-width=\"3\"");
            w.path("M" + svg::num(x1) + " " + svg::num(y) + " l-8 -4 l0 8 Z", "fill=\"#2457a6\"");
        } else {
            double xd = sx(*bar.death);
            w.line(xb, y, xd, y, "stroke=\"#2c7a2c\" stroke-width=\"3\"");
            w.circle(xd, y, 3, "fill=\"#ffffff\" stroke=\"#2c7a2c\"");
        }
        w.circle(xb, y, 3, bar.infinite() ? "fill=\"#2457a6\"" : "fill=\"#2c7a2c\"");
        y += row;
    }
    double axis_y = y + 6;
    w.line(x0, axis_y, x1, axis_y, "stroke=\"#222222\" stroke-width=\"1\"");
    for (const auto& v : values) {
        double x = sx(v);
        w.line(x, axis_y - 3, x, axis_y + 3, "stroke=\"#222222\" stroke-width=\"1\"");
        w.text(x - 8, axis_y + 16, v.str(),
               "font-family=\"monospace\" font-size=\"10\" fill=\"#222222\"");
    }
}

// what: "curve", "trees", "barcode" or "all". Byte-stable for fixed input.
inline std::string render_svg(const Model& model, const Barcode& bc, const std::string& what) {
    svg::Writer w;
    double height = 0;
    const double width = std::max(660.0, 100.0 + model.arr.m * 56.0);
    if (what == "curve" || what == "all") {
        render_curve_panel(w, model, height);
        height += 260;
    }
    if (what == "trees" || what == "all") {
        render_tree_panel(w, model, height);
        height += 44.0 * (model.arr.faces.size() + 2.5);
    }
    if (what == "barcode" || what == "all") {
        render_barcode_panel(w, bc, height);
        height += 26.0 * (model.arr.m / 2 + 1) + 60;
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(width) << "\" height=\""
        << svg::num(height) << "\" viewBox=\"0 0 " << svg::num(width) << " " << svg::num(height)
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
        << w.out.str() << "</svg>\n";
    return out.str();
}

// Aligned text diagram for `barcode --format text`.
inline std::string render_barcode_text(const Barcode& bc) {
    std::vector<Rational> values;
    for (const auto& b : bc.infinite) values.push_back(b.birth);
    for (const auto& b : bc.finite) {
        values.push_back(b.birth);
        values.push_back(*b.death);
    }
    std::sort(values.begin(), values.end());
    Rational lo = values.front(), hi = values.back();
    Rational span = hi - lo;
    if (span.is_zero()) span = Rational(1);
    const int cols = 48;
    auto col = [&](const Rational& v) {
        Rational t = (v - lo) / span * Rational(cols);
        return static_cast<int>(t.num() / t.den());
    };
    std::ostringstream out;
    std::vector<Bar> rows = bc.infinite;
    rows.insert(rows.end(), bc.finite.begin(), bc.finite.end());
    std::size_t label_width = 0;
    std::vector<std::string> labels;
    for (const auto& bar : rows) {
        labels.push_back("[" + bar.birth.str() + ", " + (bar.infinite() ? "inf" : (*bar.death).str()) +
                         ")");
        label_width = std::max(label_width, labels.back().size());
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Bar& bar = rows[i];
        std::string line(cols + 2, ' ');
        int a = col(bar.birth);
        int b = bar.infinite() ? cols : col(*bar.death);
        for (int c = a; c <= b && c < cols + 1; ++c) line[c] = '=';
        if (bar.infinite()) line[cols + 1] = '>';
        out << labels[i] << std::string(label_width - labels[i].size() + 2, ' ') << line << "\n";
    }
    return out.str();
}

} // namespace cylfloer
