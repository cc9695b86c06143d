#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "femtosim/geometry.hpp"

using namespace femtosim;

TEST_CASE("place_uniform rejects n = 0 and reproduces under the seed") {
  Rng rng(3);
  CHECK_THROWS_AS(place_uniform(0, rng), std::invalid_argument);

  Rng a(17), b(17);
  const auto pa = place_uniform(1, a);
  const auto pb = place_uniform(1, b);
  CHECK(pa.positions[0].x == pb.positions[0].x);
  CHECK(pa.positions[0].y == pb.positions[0].y);
  CHECK(pa.helper.x == 0.5);
  CHECK(pa.helper.y == 0.5);
}

TEST_CASE("place_uniform n=2500: points in the unit square, mean near center") {
  Rng rng(43);
  const auto p = place_uniform(2500, rng);
  double sx = 0, sy = 0;
  for (const auto& pt : p.positions) {
    CHECK(pt.x >= 0.0);
    CHECK(pt.x <= 1.0);
    CHECK(pt.y >= 0.0);
    CHECK(pt.y <= 1.0);
    sx += pt.x;
    sy += pt.y;
  }
  CHECK(std::abs(sx / 2500 - 0.5) < 0.01);
  CHECK(std::abs(sy / 2500 - 0.5) < 0.01);
}

TEST_CASE("grid construction at n=2500, C1=1") {
  CHECK(transmission_range(2500) == doctest::Approx(0.05594).epsilon(1e-3));

  Rng rng(42);
  const auto p = place_uniform(2500, rng);
  const Grid grid(p, 1.0);
  CHECK(grid.g() == 17);

  const auto occ = grid.occupancy();
  CHECK(occ.mean == doctest::Approx(2500.0 / 289.0));
  std::size_t total = 0;
  for (int x = 0; x < grid.g(); ++x)
    for (int y = 0; y < grid.g(); ++y) total += grid.members(Cell{x, y}).size();
  CHECK(total == 2500);

  // Coordinate 1.0 clamps into the last cell.
  CHECK(grid.cell_of(Point{1.0, 1.0}) == Cell{16, 16});
  CHECK(grid.cell_of(Point{0.0, 0.0}) == Cell{0, 0});
  CHECK(grid.helper_cell() == Cell{8, 8});
}

TEST_CASE("grid rejects degenerate inputs") {
  Placement p;
  p.positions = {Point{0.1, 0.1}};
  CHECK_THROWS_AS(Grid(p, 1.0), std::invalid_argument);
  p.positions.push_back(Point{0.9, 0.9});
  CHECK_THROWS_AS(Grid(p, 0.0), std::invalid_argument);
}

namespace {

Grid make_grid_17() {
  Rng rng(42);
  static const auto p = place_uniform(2500, rng);
  return Grid(p, 1.0);
}

void check_adjacent(const RoutePath& path) {
  for (std::size_t i = 1; i < path.cells.size(); ++i) {
    const int dx = std::abs(path.cells[i].x - path.cells[i - 1].x);
    const int dy = std::abs(path.cells[i].y - path.cells[i - 1].y);
    CHECK(dx + dy == 1);
  }
}

}  // namespace

TEST_CASE("route basics") {
  const Grid grid = make_grid_17();

  const auto self = route(grid, Cell{4, 9}, Cell{4, 9});
  CHECK(self.cells.size() == 1);
  CHECK(self.hop_count() == 0);

  const auto row = route(grid, Cell{2, 5}, Cell{9, 5});
  CHECK(row.hop_count() == 7);
  check_adjacent(row);

  const auto diag = route(grid, Cell{0, 0}, Cell{8, 8});
  CHECK(diag.hop_count() == 16);
  CHECK(diag.cells.size() == 17);
  check_adjacent(diag);
  CHECK(diag.cells.front() == Cell{0, 0});
  CHECK(diag.cells.back() == Cell{8, 8});
}

TEST_CASE("route reversal symmetry and hop bounds") {
  const Grid grid = make_grid_17();
  Rng rng(555);
  for (int i = 0; i < 300; ++i) {
    const Cell a{static_cast<int>(rng.next_below(17)), static_cast<int>(rng.next_below(17))};
    const Cell b{static_cast<int>(rng.next_below(17)), static_cast<int>(rng.next_below(17))};
    const auto fwd = route(grid, a, b);
    auto rev = route(grid, b, a);
    std::reverse(rev.cells.begin(), rev.cells.end());
    CHECK(fwd.cells == rev.cells);
    check_adjacent(fwd);

    const int cheb = std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
    const int manhattan = std::abs(a.x - b.x) + std::abs(a.y - b.y);
    CHECK(fwd.hop_count() >= static_cast<std::size_t>(cheb));
    CHECK(fwd.hop_count() == static_cast<std::size_t>(manhattan));
    CHECK(fwd.hop_count() <= 2u * 17u);
  }
  CHECK_THROWS_AS(route(grid, Cell{0, 0}, Cell{17, 0}), std::out_of_range);
}

TEST_CASE("tdma coloring") {
  const Grid grid = make_grid_17();

  const auto s0 = tdma_colors(grid, 0.0);
  CHECK(s0.colors() == 4);
  CHECK(s0.color_of(Cell{0, 0}) == s0.color_of(Cell{2, 0}));
  CHECK(s0.color_of(Cell{0, 0}) != s0.color_of(Cell{1, 0}));

  const auto s1 = tdma_colors(grid, 1.0);
  CHECK(s1.colors() == 9);

  for (int x = 0; x < grid.g(); ++x) {
    for (int y = 0; y < grid.g(); ++y) {
      const int c = s1.color_of(Cell{x, y});
      CHECK(c >= 0);
      CHECK(c < s1.colors());
    }
  }
  CHECK_THROWS_AS(tdma_colors(grid, -0.5), std::invalid_argument);
}

TEST_CASE("protocol_check basics") {
  Placement p;
  p.positions = {Point{0.10, 0.10}, Point{0.12, 0.10},  // link A
                 Point{0.90, 0.90},                     // far node
                 Point{0.14, 0.10}, Point{0.16, 0.10}};  // link B
  const double range = 0.05;

  const std::vector<TxRxPair> ok{{0, 1}};
  CHECK(protocol_check(p, ok, 1.0, range));

  // Both links are in range on their own, but each transmitter sits inside
  // the other receiver's guard zone.
  const std::vector<TxRxPair> clash{{0, 1}, {3, 4}};
  CHECK_FALSE(protocol_check(p, clash, 1.0, range));

  // Out-of-range link fails on its own.
  const std::vector<TxRxPair> far{{0, 2}};
  CHECK_FALSE(protocol_check(p, far, 1.0, range));
}

TEST_CASE("same-colored cells transmit without protocol violations") {
  // Property preview at 5 placements; the acceptance suite runs 100.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(9000 + seed);
    const auto placement = place_uniform(2500, rng);
    const Grid grid(placement, 1.0);
    const auto schedule = tdma_colors(grid, 1.0);

    for (int color = 0; color < schedule.colors(); ++color) {
      std::vector<TxRxPair> pairs;
      for (int x = 0; x < grid.g(); ++x) {
        for (int y = 0; y < grid.g(); ++y) {
          const Cell cell{x, y};
          if (schedule.color_of(cell) != color) continue;
          const auto members = grid.members(cell);
          if (members.size() < 2) continue;
          // Closest in-cell pair; skip the cell if even that is out of range.
          double best = 1e9;
          TxRxPair pick{};
          for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = 0; j < members.size(); ++j) {
              if (i == j) continue;
              const auto a = placement.positions[members[i]];
              const auto b = placement.positions[members[j]];
              const double d = std::hypot(a.x - b.x, a.y - b.y);
              if (d < best) {
                best = d;
                pick = TxRxPair{members[i], members[j]};
              }
            }
          }
          if (best < grid.range()) pairs.push_back(pick);
        }
      }
      REQUIRE(!pairs.empty());
      CHECK(protocol_check(placement, pairs, schedule.delta, grid.range()));
    }
  }
}

TEST_CASE("grid occupancy report across seeds") {
  // The no-empty-cell event is reported, not asserted: at n=2500 and C1=1
  // the expected number of empty cells per placement is about 0.05.
  int placements_with_empty = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Grid grid(place_uniform(2500, rng), 1.0);
    if (grid.occupancy().empty_cells > 0) ++placements_with_empty;
  }
  MESSAGE("placements with at least one empty cell (of 100): ", placements_with_empty);
  CHECK(placements_with_empty <= 100);
}
