#include "spdi/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spdi/error.hpp"

namespace spdi {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(const BoundingBox& bb) {
    double w = bb.xmax - bb.xmin, h = bb.ymax - bb.ymin;
    double span = std::max({w, h, 1e-9});
    pad_ = 0.05 * span;
    x0_ = bb.xmin - pad_;
    y0_ = bb.ymin - pad_;
    x1_ = bb.xmax + pad_;
    y1_ = bb.ymax + pad_;
    unit_ = span / 400.0;
  }

  double sx(double x) const { return x; }
  double sy(double y) const { return y0_ + y1_ - y; }  // mirror inside the box
  double unit() const { return unit_; }

  std::string header() const {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0_) << ' ' << num(y0_)
      << ' ' << num(x1_ - x0_) << ' ' << num(y1_ - y0_) << "\" width=\"800\" height=\""
      << num(800.0 * (y1_ - y0_) / (x1_ - x0_)) << "\">\n";
    return o.str();
  }

  std::string line(Point2 a, Point2 b, const char* stroke, double width, const char* extra = "") const {
    std::ostringstream o;
    o << "<line x1=\"" << num(sx(a.x)) << "\" y1=\"" << num(sy(a.y)) << "\" x2=\"" << num(sx(b.x))
      << "\" y2=\"" << num(sy(b.y)) << "\" stroke=\"" << stroke << "\" stroke-width=\""
      << num(width * unit_) << "\"" << extra << "/>\n";
    return o.str();
  }

 private:
  double x0_, y0_, x1_, y1_, pad_, unit_;
};

Point2 lerp(const Edge& e, double t) { return point_at(e, t); }

}  // namespace

std::string render_plot(const Spdi& spdi, const PlotLayers& layers) {
  const auto& edges = spdi.edges();
  if (layers.witness) {
    auto check = [&](EdgeId e) {
      if (e >= edges.size()) throw Error("witness references unknown edge " + std::to_string(e));
    };
    check(layers.witness->hit_edge);
    for (const WitnessItem& item : layers.witness->items) {
      if (const auto* we = std::get_if<WitnessEdge>(&item)) {
        check(we->edge);
      } else {
        for (const WitnessEdge& ce : std::get<WitnessCycle>(item).edges) check(ce.edge);
      }
    }
  }

  Canvas cv(spdi.bbox());
  std::ostringstream o;
  o << cv.header();

  o << "<g id=\"regions\" fill=\"#f4f4f4\" stroke=\"#444\" stroke-width=\"" << num(cv.unit())
    << "\">\n";
  for (const Region& r : spdi.regions()) {
    o << "<polygon data-region=\"" << r.id << "\" points=\"";
    for (std::size_t k = 0; k < r.vertices.size(); ++k) {
      if (k) o << ' ';
      o << num(cv.sx(r.vertices[k].x)) << ',' << num(cv.sy(r.vertices[k].y));
    }
    o << "\"/>\n";
  }
  o << "</g>\n";

  o << "<g id=\"cones\">\n";
  for (const Region& r : spdi.regions()) {
    Point2 c = centroid(r.vertices);
    double reach = 1e300;
    for (std::size_t k = 0; k < r.vertices.size(); ++k) {
      Point2 a = r.vertices[k], b = r.vertices[(k + 1) % r.vertices.size()];
      reach = std::min(reach, std::abs(cross(normalized(b - a), c - a)));
    }
    reach *= 0.8;
    o << "<g class=\"cone\" data-region=\"" << r.id << "\">\n";
    for (Vector2 d : {r.dyn_l, r.dyn_r}) {
      Vector2 u = normalized(d);
      Point2 tip{c.x + reach * u.dx, c.y + reach * u.dy};
      o << cv.line(c, tip, "#1f4fbf", 1.2);
    }
    o << "</g>\n";
  }
  o << "</g>\n";

  auto segment = [&](const EdgeInterval& ei, const char* color, double w, const char* extra = "") {
    const Edge& e = spdi.edge(ei.edge);
    return cv.line(lerp(e, ei.lo), lerp(e, ei.hi), color, w, extra);
  };

  if (layers.task) {
    o << "<g id=\"start\">\n";
    for (const EdgeInterval& s : layers.task->start) o << segment(s, "#1a9b2e", 4.0);
    o << "</g>\n<g id=\"final\">\n";
    for (const EdgeInterval& f : layers.task->final) o << segment(f, "#d0222b", 4.0);
    o << "</g>\n";
  }

  if (layers.witness) {
    o << "<g id=\"witness\">\n";
    std::size_t n_cycle = 0;
    for (const WitnessItem& item : layers.witness->items) {
      if (const auto* we = std::get_if<WitnessEdge>(&item)) {
        o << segment({we->edge, we->interval.lo, we->interval.hi}, "#f29b00", 3.0,
                     " stroke-opacity=\"0.85\"");
      } else {
        const auto& c = std::get<WitnessCycle>(item);
        o << "<g class=\"cycle\" data-cycle=\"" << n_cycle++ << "\" data-type=\"" << to_string(c.type)
          << "\">\n";
        for (const WitnessEdge& ce : c.edges) {
          o << segment({ce.edge, ce.interval.lo, ce.interval.hi}, "#8a2be2", 3.0,
                       " stroke-opacity=\"0.85\"");
        }
        o << "</g>\n";
      }
    }
    const Interval& h = layers.witness->hit;
    o << segment({layers.witness->hit_edge, h.lo, h.hi}, "#000", 5.0);
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace spdi
