#include "femtosim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace femtosim {

Placement place_uniform(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("place_uniform: n must be positive");
  Placement p;
  p.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.next_double();
    const double y = rng.next_double();
    p.positions.push_back(Point{x, y});
  }
  return p;
}

double transmission_range(std::size_t n) {
  if (n < 2) throw std::invalid_argument("transmission_range: n must be at least 2");
  const double nd = static_cast<double>(n);
  return std::sqrt(std::log(nd) / nd);
}

Grid::Grid(const Placement& placement, double c1) : c1_(c1) {
  if (placement.n() < 2) throw std::invalid_argument("Grid: need at least 2 UTs");
  if (c1 <= 0.0) throw std::invalid_argument("Grid: C1 must be positive");
  range_ = transmission_range(placement.n());
  g_ = std::max(1, static_cast<int>(std::floor(1.0 / (c1 * range_))));
  cell_side_ = 1.0 / static_cast<double>(g_);
  members_.resize(static_cast<std::size_t>(g_) * g_);
  for (std::size_t i = 0; i < placement.n(); ++i) {
    const Cell c = cell_of(placement.positions[i]);
    members_[static_cast<std::size_t>(c.y) * g_ + c.x].push_back(
        static_cast<std::uint32_t>(i));
  }
  helper_cell_ = cell_of(placement.helper);
}

Cell Grid::cell_of(Point p) const {
  const auto clamp = [this](double v) {
    const int i = static_cast<int>(std::floor(v * g_));
    return std::clamp(i, 0, g_ - 1);
  };
  return Cell{clamp(p.x), clamp(p.y)};
}

std::span<const std::uint32_t> Grid::members(Cell c) const {
  if (!valid(c)) throw std::out_of_range("Grid::members: cell outside grid");
  return members_[static_cast<std::size_t>(c.y) * g_ + c.x];
}

Grid::Occupancy Grid::occupancy() const {
  Occupancy occ;
  occ.min = members_.front().size();
  std::size_t total = 0;
  for (const auto& cell : members_) {
    occ.min = std::min(occ.min, cell.size());
    occ.max = std::max(occ.max, cell.size());
    if (cell.empty()) ++occ.empty_cells;
    total += cell.size();
  }
  occ.mean = static_cast<double>(total) / static_cast<double>(members_.size());
  return occ;
}

namespace {

// Supercover traversal of the segment between the two cell centers, done in
// integer arithmetic: centers live at odd coordinates (2c+1) and cell
// boundaries at even ones, so corner crossings are detected exactly. On a
// corner crossing the horizontal step is taken first.
std::vector<Cell> supercover(Cell from, Cell to) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(std::abs(to.x - from.x) +
                                         std::abs(to.y - from.y)) + 1);
  const std::int64_t dx = 2LL * (to.x - from.x);
  const std::int64_t dy = 2LL * (to.y - from.y);
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;
  const std::int64_t x0 = 2LL * from.x + 1;
  const std::int64_t y0 = 2LL * from.y + 1;

  Cell cur = from;
  cells.push_back(cur);
  while (!(cur == to)) {
    if (dx == 0) {
      cur.y += sy;
    } else if (dy == 0) {
      cur.x += sx;
    } else {
      // Next boundary ahead of the current cell on each axis.
      const std::int64_t bx = 2LL * cur.x + (sx > 0 ? 2 : 0);
      const std::int64_t by = 2LL * cur.y + (sy > 0 ? 2 : 0);
      const std::int64_t tx = std::abs(bx - x0) * std::abs(dy);
      const std::int64_t ty = std::abs(by - y0) * std::abs(dx);
      if (tx < ty) {
        cur.x += sx;
      } else if (ty < tx) {
        cur.y += sy;
      } else {
        cur.x += sx;  // exact corner: horizontal first
        cells.push_back(cur);
        cur.y += sy;
      }
    }
    cells.push_back(cur);
  }
  return cells;
}

}  // namespace

RoutePath route(const Grid& grid, Cell from, Cell to) {
  if (!grid.valid(from) || !grid.valid(to))
    throw std::out_of_range("route: cell outside grid");
  // Canonical endpoint order keeps the corner tie-break direction-independent,
  // so route(a, b) is the reversal of route(b, a).
  const bool swapped = (from.x > to.x) || (from.x == to.x && from.y > to.y);
  RoutePath path;
  path.cells = swapped ? supercover(to, from) : supercover(from, to);
  if (swapped) std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

TdmaSchedule tdma_colors(const Grid& grid, double delta) {
  if (delta < 0.0) throw std::invalid_argument("tdma_colors: delta must be non-negative");
  TdmaSchedule s;
  s.delta = delta;
  s.c2 = std::max(1, static_cast<int>(std::ceil((2.0 + delta) / grid.c1())));
  return s;
}

namespace {
double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
}  // namespace

bool protocol_check(const Placement& placement, std::span<const TxRxPair> pairs,
                    double delta, double range) {
  const double guard = (1.0 + delta) * range;
  for (const auto& link : pairs) {
    const Point rx = placement.positions.at(link.rx);
    const Point tx = placement.positions.at(link.tx);
    if (!(dist(tx, rx) < range)) return false;
    for (const auto& other : pairs) {
      if (other.tx == link.tx) continue;
      const Point interferer = placement.positions.at(other.tx);
      if (!(dist(interferer, rx) > guard)) return false;
    }
  }
  return true;
}

}  // namespace femtosim
