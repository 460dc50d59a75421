#include "doorkit/geometry/voronoi.hpp"

#include <algorithm>
#include <cmath>

#include "doorkit/error.hpp"

namespace doorkit::geometry {

namespace {

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dist2(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Uniform bucket grid over the sites for exact nearest-site queries.
class SiteIndex {
 public:
  SiteIndex(const std::vector<Point2>& sites, double bucket) : sites_(sites), bucket_(bucket) {
    min_x_ = max_x_ = sites.front().x;
    min_y_ = max_y_ = sites.front().y;
    for (const auto& s : sites) {
      min_x_ = std::min(min_x_, s.x);
      max_x_ = std::max(max_x_, s.x);
      min_y_ = std::min(min_y_, s.y);
      max_y_ = std::max(max_y_, s.y);
    }
    nx_ = static_cast<int>((max_x_ - min_x_) / bucket_) + 1;
    ny_ = static_cast<int>((max_y_ - min_y_) / bucket_) + 1;
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
      buckets_[slot(bx(sites[i].x), by(sites[i].y))].push_back(i);
    }
  }

  // Lowest-index site among those at minimal distance.
  int nearest(Point2 p) const {
    const int cx = std::clamp(bx(p.x), 0, nx_ - 1);
    const int cy = std::clamp(by(p.y), 0, ny_ - 1);
    int best = -1;
    double best_d2 = 0.0;
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      // Any site outside the scanned square is farther than this bound.
      if (best >= 0) {
        const double gap = ring_gap(p, cx, cy, ring);
        if (gap > 0.0 && gap * gap > best_d2 * (1.0 + 1e-9) + 1e-12) break;
      }
      for (int y = cy - ring; y <= cy + ring; ++y) {
        if (y < 0 || y >= ny_) continue;
        const bool edge_row = (y == cy - ring || y == cy + ring);
        for (int x = cx - ring; x <= cx + ring; x += (edge_row ? 1 : 2 * ring)) {
          if (x >= 0 && x < nx_) {
            for (int i : buckets_[slot(x, y)]) {
              const double d2 = dist2(p, sites_[i]);
              if (best < 0 || d2 < best_d2 || (d2 == best_d2 && i < best)) {
                best = i;
                best_d2 = d2;
              }
            }
          }
          if (ring == 0) break;
        }
      }
    }
    return best;
  }

 private:
  int bx(double x) const { return static_cast<int>(std::floor((x - min_x_) / bucket_)); }
  int by(double y) const { return static_cast<int>(std::floor((y - min_y_) / bucket_)); }
  std::size_t slot(int x, int y) const {
    return static_cast<std::size_t>(y) * nx_ + static_cast<std::size_t>(x);
  }
  // Lower bound on the distance from p to any bucket outside the square of
  // half-width ring - 1 around (cx, cy).
  double ring_gap(Point2 p, int cx, int cy, int ring) const {
    const double x0 = min_x_ + (cx - ring + 1) * bucket_;
    const double x1 = min_x_ + (cx + ring) * bucket_;
    const double y0 = min_y_ + (cy - ring + 1) * bucket_;
    const double y1 = min_y_ + (cy + ring) * bucket_;
    return std::min({p.x - x0, x1 - p.x, p.y - y0, y1 - p.y});
  }

  const std::vector<Point2>& sites_;
  double bucket_;
  double min_x_, max_x_, min_y_, max_y_;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace

void collect_sites(const std::vector<Contour>& contours, double spacing,
                   std::vector<Point2>& sites, std::vector<int>& site_contour,
                   std::vector<int>& site_component) {
  for (int ci = 0; ci < static_cast<int>(contours.size()); ++ci) {
    const auto& v = contours[ci].vertices;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Point2 a = v[k];
      const Point2 b = v[(k + 1) % v.size()];
      int steps = 1;
      if (spacing > 0.0) {
        steps = std::max(1, static_cast<int>(std::ceil(dist(a, b) / spacing - 1e-9)));
      }
      for (int s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        sites.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        site_contour.push_back(ci);
        site_component.push_back(contours[ci].component_id);
      }
    }
  }
}

VoronoiLabeling voronoi_boundary(const GridMap& map, const std::vector<Contour>& contours,
                                 const VoronoiConfig& cfg) {
  if (cfg.site_separation < 0.0 || std::isnan(cfg.site_separation)) {
    throw Error("site_separation must be non-negative");
  }
  const CellMask free = free_mask(map);
  if (free.empty()) throw Error("no free space");
  if (contours.empty()) throw Error("no contours");

  VoronoiLabeling out;
  collect_sites(contours, cfg.site_spacing, out.sites, out.site_contour, out.site_component);
  if (out.sites.empty()) throw Error("no contour sites");

  const SiteIndex index(out.sites, 4.0 * map.resolution());
  out.nearest_site.assign(map.size(), VoronoiLabeling::kNoSite);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Cell c = map.cell_at(i);
    if (free.test(c)) out.nearest_site[i] = index.nearest(map.cell_center(c));
  }

  out.boundary_cells = CellMask(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Cell c = map.cell_at(i);
    const int sc = out.nearest_site[i];
    if (sc < 0) continue;
    const Point2 pc = map.cell_center(c);
    for (const auto& d : kNeighbors8) {
      const Cell n{c.row + d.row, c.col + d.col};
      if (!free.test(n)) continue;
      const int sn = out.nearest_site[map.index(n)];
      if (sn == sc) continue;
      const bool split = out.site_contour[sc] != out.site_contour[sn] ||
                         dist(out.sites[sc], out.sites[sn]) >= cfg.site_separation;
      if (!split) continue;
      const Point2 pn = map.cell_center(n);
      const double gap_c = dist(pc, out.sites[sn]) - dist(pc, out.sites[sc]);
      const double gap_n = dist(pn, out.sites[sc]) - dist(pn, out.sites[sn]);
      if (gap_c <= gap_n) {
        out.boundary_cells.set(c);
        break;
      }
    }
  }
  return out;
}

}  // namespace doorkit::geometry
