#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "femtosim/rng.hpp"

namespace femtosim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// n UTs on the unit square; the helper sits at the center.
struct Placement {
  std::vector<Point> positions;
  Point helper{0.5, 0.5};

  std::size_t n() const { return positions.size(); }
};

Placement place_uniform(std::size_t n, Rng& rng);

/// Connectivity transmission range s(n) = sqrt(ln n / n).
double transmission_range(std::size_t n);

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

/// Tessellation of the unit square into g x g square-lets of side 1/g with
/// g = floor(1 / (C1 * s(n))), plus the per-cell membership lists.
class Grid {
public:
  Grid(const Placement& placement, double c1);

  int g() const { return g_; }
  double cell_side() const { return cell_side_; }
  double range() const { return range_; }
  double c1() const { return c1_; }

  /// Cell containing a point; coordinate 1.0 is clamped into the last cell.
  Cell cell_of(Point p) const;
  Cell helper_cell() const { return helper_cell_; }
  bool valid(Cell c) const {
    return c.x >= 0 && c.x < g_ && c.y >= 0 && c.y < g_;
  }

  std::span<const std::uint32_t> members(Cell c) const;

  struct Occupancy {
    std::size_t min = 0;
    std::size_t max = 0;
    std::size_t empty_cells = 0;
    double mean = 0.0;
  };
  Occupancy occupancy() const;

private:
  double c1_;
  double range_;
  double cell_side_;
  int g_;
  Cell helper_cell_;
  std::vector<std::vector<std::uint32_t>> members_;
};

/// Edge-adjacent staircase of square-lets crossing the straight segment
/// between two cell centers. hop_count is cells.size() - 1.
struct RoutePath {
  std::vector<Cell> cells;

  std::size_t hop_count() const { return cells.empty() ? 0 : cells.size() - 1; }
};

RoutePath route(const Grid& grid, Cell from, Cell to);

/// TDMA coloring: cells whose coordinates are congruent modulo
/// c2 = ceil((2 + delta) / C1) share a color and transmit together.
struct TdmaSchedule {
  int c2 = 1;
  double delta = 0.0;

  int colors() const { return c2 * c2; }
  int color_of(Cell c) const { return (c.x % c2) * c2 + (c.y % c2); }
};

TdmaSchedule tdma_colors(const Grid& grid, double delta);

struct TxRxPair {
  std::uint32_t tx = 0;
  std::uint32_t rx = 0;
};

/// Protocol-model check over a set of concurrent transmissions: every link
/// is within range and every foreign transmitter is outside the guard zone
/// (1 + delta) * range of the receiver.
bool protocol_check(const Placement& placement, std::span<const TxRxPair> pairs,
                    double delta, double range);

}  // namespace femtosim
