#ifndef JFCELL_RENDER_HPP
#define JFCELL_RENDER_HPP

#include <jfcell/cells.hpp>

#include <sstream>

namespace jfcell {

// Renderable form of a cell diagram: dots with (column, degree) positions and
// styled attachment lines. Layout is a fixed deterministic algorithm: the
// connected components are laid out left to right in simplify order, cells
// stack by degree ascending upward, and cells sharing a (component, degree)
// slot fan out to fresh columns.
struct ChartSpec {
    struct Dot {
        Int cell;
        Int column;
        Int degree;
    };
    struct Line {
        Int from; // source cell (higher degree)
        Int to;   // target cell
        Label label;
    };
    std::vector<Dot> dots;
    std::vector<Line> lines;
    Int min_degree = 0, max_degree = 0, columns = 1;
};

inline ChartSpec chart_layout(const CellComplex& x)
{
    ChartSpec spec;
    if (x.cells().empty())
        return spec;
    spec.min_degree = x.cells().front().degree;
    spec.max_degree = x.cells().back().degree;
    Int col = 0;
    for (const auto& comp : simplify(x)) {
        Int width = 1;
        std::map<Int, Int> used_at_degree;
        for (const auto& c : comp.cells()) {
            Int sub = used_at_degree[c.degree]++;
            width = std::max(width, sub + 1);
            spec.dots.push_back({c.id, col + sub, c.degree});
        }
        col += width;
    }
    spec.columns = col;
    for (const auto& a : x.attachments()) {
        if (a.label == Label::zero)
            continue;
        spec.lines.push_back({a.source, a.target, a.label});
    }
    // dots reference existing cells by construction; lines were validated by
    // the complex
    return spec;
}

inline const char* label_color(Label l)
{
    switch (l) {
    case Label::two:
        return "#1f4fd8"; // vertical blue
    case Label::eta:
        return "#d82a2a"; // red
    case Label::nu:
    case Label::alpha:
        return "#2a8f2a"; // green
    case Label::two_nu:
    case Label::two_alpha:
        return "#e08a00"; // orange
    case Label::beta:
        return "#7a2ad8";
    case Label::zero:
        return "#999999";
    }
    return "#000000";
}

// Deterministic SVG: integer coordinates only, fixed ordering.
inline std::string render_svg(const CellComplex& x)
{
    ChartSpec spec = chart_layout(x);
    const Int cell_w = 60, cell_h = 26, pad = 40;
    const Int height = (spec.max_degree - spec.min_degree) * cell_h + 2 * pad;
    const Int width = std::max<Int>(spec.columns, 1) * cell_w + 2 * pad + 60;
    auto xpos = [&](Int column) { return pad + 30 + column * cell_w; };
    auto ypos = [&](Int degree) { return height - pad - (degree - spec.min_degree) * cell_h; };
    std::map<Int, std::pair<Int, Int>> at; // cell -> (x, y)
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <style>text{font:12px monospace;}</style>\n";
    // degree axis labels
    std::set<Int> degs;
    for (const auto& d : spec.dots)
        degs.insert(d.degree);
    for (Int d : degs)
        out << "  <text x=\"4\" y=\"" << ypos(d) + 4 << "\">" << d << "</text>\n";
    for (const auto& d : spec.dots)
        at[d.cell] = {xpos(d.column), ypos(d.degree)};
    for (const auto& l : spec.lines) {
        auto [x1, y1] = at[l.from];
        auto [x2, y2] = at[l.to];
        if (l.label == Label::two_nu || l.label == Label::two_alpha) {
            // bent to the side, like the printed diagrams
            Int bend = (x1 + x2) / 2 - 18;
            out << "  <path d=\"M " << x1 << " " << y1 << " Q " << bend << " "
                << (y1 + y2) / 2 << " " << x2 << " " << y2 << "\" fill=\"none\" stroke=\""
                << label_color(l.label) << "\" stroke-width=\"2\"/>\n";
        } else {
            out << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
                << y2 << "\" stroke=\"" << label_color(l.label) << "\" stroke-width=\"2\"/>\n";
        }
        out << "  <text x=\"" << (x1 + x2) / 2 + 6 << "\" y=\"" << (y1 + y2) / 2 << "\" fill=\""
            << label_color(l.label) << "\">" << label_name(l.label) << "</text>\n";
    }
    for (const auto& d : spec.dots) {
        auto [cx, cy] = at[d.cell];
        out << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"4\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

// Deterministic ASCII: one row per degree, top down, attachments listed below.
inline std::string render_ascii(const CellComplex& x)
{
    ChartSpec spec = chart_layout(x);
    std::ostringstream out;
    if (spec.dots.empty()) {
        out << "(empty complex)\n";
        return out.str();
    }
    std::map<Int, std::map<Int, bool>> grid; // degree -> column -> dot
    for (const auto& d : spec.dots)
        grid[d.degree][d.column] = true;
    for (Int deg = spec.max_degree; deg >= spec.min_degree; --deg) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%4lld | ", static_cast<long long>(deg));
        out << buf;
        auto it = grid.find(deg);
        for (Int c = 0; c < spec.columns; ++c) {
            bool dot = it != grid.end() && it->second.count(c);
            out << (dot ? "*  " : "   ");
        }
        out << "\n";
    }
    out << "\n";
    for (const auto& l : spec.lines)
        out << label_name(l.label) << ": " << x.cell(l.from).degree << " -> "
            << x.cell(l.to).degree << "\n";
    return out.str();
}

} // namespace jfcell

#endif
