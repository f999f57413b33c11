#include "tangleforge/svg.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace tf {

namespace {

struct Pt {
    double x, y;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string color_for(Gen g) {
    static const char* hPalette[] = {"#1f77b4", "#d62728", "#9467bd", "#8c564b", "#e377c2"};
    static const char* tPalette[] = {"#2ca02c", "#ff7f0e", "#17becf", "#bcbd22"};
    if (g.fam == Family::T) return tPalette[(g.idx - 1) % 4];
    return hPalette[(g.idx - 1) % 5];
}

void chord(std::ostringstream& out, Pt a, Pt b, Pt pull, const std::string& color) {
    Pt c{(a.x + b.x) / 2 + (pull.x - (a.x + b.x) / 2) * 0.5,
         (a.y + b.y) / 2 + (pull.y - (a.y + b.y) / 2) * 0.5};
    out << "<path d=\"M " << fmt(a.x) << ' ' << fmt(a.y) << " Q " << fmt(c.x) << ' '
        << fmt(c.y) << ' ' << fmt(b.x) << ' ' << fmt(b.y) << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.2\"/>\n";
}

}  // namespace

std::string render_svg(const Diagram& d) {
    const int g = d.sig.genus, b = d.sig.bridges;
    const double cx = 360, cy = 330, R = 280;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"720\" "
           "viewBox=\"0 0 1000 720\">\n";
    out << "<rect width=\"1000\" height=\"720\" fill=\"#ffffff\"/>\n";

    // Polygon (or disk) outline.
    const int sides = g > 0 ? 4 * g : 0;
    auto vertex = [&](int k) {
        double ang = -M_PI / 2 + 2 * M_PI * k / (sides ? sides : 1);
        return Pt{cx + R * std::cos(ang), cy + R * std::sin(ang)};
    };
    if (g == 0) {
        out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(R)
            << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"2\"/>\n";
    } else {
        out << "<polygon points=\"";
        for (int k = 0; k < sides; ++k) {
            Pt v = vertex(k);
            out << fmt(v.x) << ',' << fmt(v.y) << ' ';
        }
        out << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"2\"/>\n";
    }

    // Dash ticks on the polygon boundary. Boundary block order is
    // a_i, b_i, a_i^-1, b_i^-1 per handle, matching ArcStructure.boundary.
    std::map<Gen, std::vector<int32_t>> ownerDashes;  // owner -> dash ids by pos
    std::vector<Gen> dashOwner(d.dashes.size());
    std::vector<Gen> dashLetter(d.dashes.size());
    {
        std::map<Gen, std::map<int32_t, int32_t>> byPos;
        int32_t id = 0;
        for (const auto& dash : d.dashes) {
            byPos[dash.owner][dash.pos] = id;
            dashOwner[id] = dash.owner;
            dashLetter[id] = dash.letter;
            ++id;
        }
        for (auto& [o, m] : byPos)
            for (auto& [pos, did] : m) ownerDashes[o].push_back(did);
    }

    std::vector<Pt> boundaryPt;  // per boundary position
    std::map<int32_t, std::vector<Pt>> dashPts;
    int edgeIndex = 0;
    for (int i = 1; i <= g; ++i) {
        Gen blocks[4] = {gen_a(i), gen_b(i), gen_a(i), gen_b(i)};
        for (int which = 0; which < 4; ++which, ++edgeIndex) {
            Gen o = blocks[which];
            bool mirror = which >= 2;
            Pt v0 = vertex(edgeIndex), v1 = vertex(edgeIndex + 1);
            std::string label = o.str() + (mirror ? "^-1" : "");
            Pt mid{(v0.x + v1.x) / 2, (v0.y + v1.y) / 2};
            Pt lab{mid.x + (mid.x - cx) * 0.12, mid.y + (mid.y - cy) * 0.12};
            out << "<text x=\"" << fmt(lab.x) << "\" y=\"" << fmt(lab.y)
                << "\" font-size=\"14\" fill=\"#333333\" text-anchor=\"middle\">" << label
                << "</text>\n";
            const auto& ids = ownerDashes[o];
            int L = static_cast<int>(ids.size());
            for (int k = 0; k < L; ++k) {
                int dashId = mirror ? ids[L - 1 - k] : ids[k];
                double s = (k + 1.0) / (L + 1.0);
                Pt p{v0.x + (v1.x - v0.x) * s, v0.y + (v1.y - v0.y) * s};
                boundaryPt.push_back(p);
                dashPts[dashId].push_back(p);
                Pt inward{(cx - p.x) * 0.035, (cy - p.y) * 0.035};
                out << "<line x1=\"" << fmt(p.x - inward.x) << "\" y1=\"" << fmt(p.y - inward.y)
                    << "\" x2=\"" << fmt(p.x + inward.x) << "\" y2=\"" << fmt(p.y + inward.y)
                    << "\" stroke=\"" << color_for(dashLetter[ownerDashes[o][mirror ? L - 1 - k : k]])
                    << "\" stroke-width=\"3\"/>\n";
            }
        }
    }

    // Puncture row with loop circles and their dashes.
    std::vector<Pt> punctureCenter(2 * b + 1);
    const double rowY = cy + R * 0.45, loopR = 26;
    for (int i = 1; i <= 2 * b; ++i) {
        double x = cx - R * 0.62 + (2 * b > 1 ? (R * 1.24) * (i - 1) / (2 * b - 1) : 0);
        punctureCenter[i] = {x, rowY};
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(rowY)
            << "\" r=\"3\" fill=\"#000000\"/>\n";
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(rowY) << "\" r=\"" << fmt(loopR)
            << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(rowY + loopR + 16)
            << "\" font-size=\"13\" fill=\"#333333\" text-anchor=\"middle\">p" << i
            << "</text>\n";
        const auto& ids = ownerDashes[gen_p(i)];
        int L = static_cast<int>(ids.size());
        for (int k = 0; k < L; ++k) {
            double ang = M_PI + M_PI * (k + 1.0) / (L + 1.0);
            Pt p{x + loopR * std::cos(ang), rowY + loopR * std::sin(ang)};
            dashPts[ids[k]].push_back(p);
            out << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
                << "\" r=\"2.6\" fill=\"" << color_for(dashLetter[ids[k]]) << "\"/>\n";
        }
    }

    // Stage-1 matching arcs, when recorded.
    if (d.arcs) {
        const auto& A = *d.arcs;
        auto dashPoint = [&](int32_t id) {
            const auto& ps = dashPts[id];
            if (ps.empty()) return Pt{cx, cy};
            return ps.front();
        };
        for (auto [i, j] : A.w1) {
            Pt a = dashPoint(i), bp = dashPoint(j);
            chord(out, a, bp, {(a.x + bp.x) / 2, rowY - 90}, "#999999");
        }
        for (auto [i, j] : A.w2)
            if (i < static_cast<int32_t>(boundaryPt.size()) &&
                j < static_cast<int32_t>(boundaryPt.size()))
                chord(out, boundaryPt[i], boundaryPt[j], {cx, cy}, "#999999");
        for (auto [bpos, dash] : A.iface)
            if (bpos < static_cast<int32_t>(boundaryPt.size()))
                chord(out, boundaryPt[bpos], dashPoint(dash), {cx, cy - 40}, "#cccccc");
        for (size_t i = 0; i < A.loops.size(); ++i) {
            const auto& lr = A.loops[i];
            Pt pc = punctureCenter[i + 1];
            out << "<line x1=\"" << fmt(dashPoint(lr.middle).x) << "\" y1=\""
                << fmt(dashPoint(lr.middle).y) << "\" x2=\"" << fmt(pc.x) << "\" y2=\""
                << fmt(pc.y) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
            for (auto [i1, i2] : lr.pairs)
                chord(out, dashPoint(i1), dashPoint(i2), {pc.x, pc.y + loopR + 30}, "#999999");
        }

        // Band connectors between the centroids of the banded stage-1 pieces.
        auto centroidOf = [&](int32_t prelimId) {
            double sx = 0, sy = 0;
            int n = 0;
            for (size_t id = 0; id < A.prelimComponents.size(); ++id)
                if (A.prelimComponents[id] == prelimId)
                    for (const auto& p : dashPts[static_cast<int32_t>(id)]) {
                        sx += p.x;
                        sy += p.y;
                        ++n;
                    }
            return n ? Pt{sx / n, sy / n} : Pt{cx, cy};
        };
        for (const auto& band : d.bands) {
            Pt a = centroidOf(band.from), bp = centroidOf(band.to);
            out << "<line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\""
                << fmt(bp.x) << "\" y2=\"" << fmt(bp.y)
                << "\" stroke=\"#e91e63\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
            out << "<text x=\"" << fmt((a.x + bp.x) / 2 + 6) << "\" y=\""
                << fmt((a.y + bp.y) / 2 - 6) << "\" font-size=\"12\" fill=\"#e91e63\">band "
                << band.from << "+" << band.to << (band.ocase == OrientCase::I ? " (I)" : " (II)")
                << "</text>\n";
        }
    }

    // Legend.
    double ly = 60;
    out << "<text x=\"760\" y=\"40\" font-size=\"16\" fill=\"#000000\">components</text>\n";
    for (const auto& c : d.components) {
        out << "<rect x=\"760\" y=\"" << fmt(ly - 11) << "\" width=\"14\" height=\"14\" fill=\""
            << color_for(c.letter) << "\"/>\n";
        out << "<text x=\"782\" y=\"" << fmt(ly) << "\" font-size=\"14\" fill=\"#000000\">#"
            << c.id << ' ' << (c.kind == ComponentKind::Closed ? "closed " : "arc ")
            << c.letter.str();
        if (c.endpoints)
            out << " (p" << c.endpoints->first << ",p" << c.endpoints->second << ")";
        out << "</text>\n";
        ly += 22;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tf
