// Copyright 2026 The stabilab authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <ostream>
#include <utility>
#include <vector>

#include "stabilab/errors.hpp"
#include "stabilab/rational.hpp"

namespace stabilab {

/// An exact piecewise-linear cumulative distribution on [0,1]: strictly
/// increasing rational breakpoints with nondecreasing values, linearly
/// interpolated in between. F(0) = 0 and F(1) carries the total mass.
class PiecewiseCDF {
 public:
  using Point = std::pair<Rat, Rat>;

  explicit PiecewiseCDF(std::vector<Point> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) throw invalid_parameter("a CDF needs at least two breakpoints");
    if (points_.front().first != 0)
      throw invalid_parameter("CDF must start at x = 0");
    if (points_.front().second != 0)
      throw invalid_parameter("CDF must start at F = 0");
    for (std::size_t k = 1; k < points_.size(); ++k) {
      if (!(points_[k - 1].first < points_[k].first))
        throw invalid_parameter("CDF breakpoints must be strictly increasing");
      if (points_[k].second < points_[k - 1].second)
        throw invalid_parameter("CDF values must be nondecreasing");
    }
  }

  const std::vector<Point>& breakpoints() const { return points_; }
  const Rat& total_mass() const { return points_.back().second; }
  const Rat& support_right() const { return points_.back().first; }

  /// Exact evaluation by binary search and linear interpolation. Arguments
  /// left of the first breakpoint clamp to 0, right of the last to the total.
  Rat eval(const Rat& x) const {
    if (x <= points_.front().first) return points_.front().second;
    if (x >= points_.back().first) return points_.back().second;
    auto it = std::upper_bound(points_.begin(), points_.end(), x,
                               [](const Rat& v, const Point& p) { return v < p.first; });
    const Point& hi = *it;
    const Point& lo = *(it - 1);
    Rat t = (x - lo.first) / (hi.first - lo.first);
    Rat v = lo.second + t * (hi.second - lo.second);
    v.canonicalize();
    return v;
  }

  /// Mass of the closed interval [a, b]; boundary points carry no mass for
  /// the non-atomic distributions built here.
  Rat mass_of(const Rat& a, const Rat& b) const {
    if (b < a) throw invalid_parameter("interval endpoints out of order");
    Rat m = eval(b) - eval(a);
    m.canonicalize();
    return m;
  }

  /// Scales all values by a positive rational (used to normalize).
  PiecewiseCDF scaled(const Rat& factor) const {
    if (factor <= 0) throw invalid_parameter("scale factor must be positive");
    std::vector<Point> pts = points_;
    for (auto& p : pts) {
      p.second *= factor;
      p.second.canonicalize();
    }
    return PiecewiseCDF(std::move(pts));
  }

 private:
  std::vector<Point> points_;
};

/// The Kantorovich-Rubinstein distance of two equal-mass distributions on the
/// line: the exact integral of |F_a - F_b|, computed by splitting at all
/// breakpoints and at the rational roots of the linear difference.
inline Rat w1_distance(const PiecewiseCDF& a, const PiecewiseCDF& b) {
  if (a.total_mass() != b.total_mass())
    throw mass_mismatch("W1 distance requires equal total masses");
  // Merge the breakpoint grids.
  std::vector<Rat> grid;
  grid.reserve(a.breakpoints().size() + b.breakpoints().size());
  for (const auto& p : a.breakpoints()) grid.push_back(p.first);
  for (const auto& p : b.breakpoints()) grid.push_back(p.first);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Rat total(0);
  Rat d0 = a.eval(grid.front()) - b.eval(grid.front());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    Rat d1 = a.eval(grid[k]) - b.eval(grid[k]);
    Rat width = grid[k] - grid[k - 1];
    if (sgn(d0) * sgn(d1) >= 0) {
      total += width * (abs(d0) + abs(d1)) / 2;
    } else {
      // One sign change inside the cell: two triangles around the root.
      Rat denom = abs(d0) + abs(d1);
      total += width * (d0 * d0 + d1 * d1) / (2 * denom);
    }
    d0 = d1;
  }
  total.canonicalize();
  return total;
}

/// CSV dump: x_num, x_den, F_num, F_den.
inline void write_cdf_csv(std::ostream& out, const PiecewiseCDF& cdf) {
  out << "x_num,x_den,F_num,F_den\n";
  for (const auto& [x, f] : cdf.breakpoints()) {
    out << x.get_num().get_str() << ',' << x.get_den().get_str() << ','
        << f.get_num().get_str() << ',' << f.get_den().get_str() << '\n';
  }
}

}  // namespace stabilab
