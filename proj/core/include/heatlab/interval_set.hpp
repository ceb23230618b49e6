#pragma once

// Finite unions of closed intervals [lo,hi], kept sorted and merged.
// Unbounded endpoints (+-inf) are allowed for event membership tests;
// measure and mass integrals require bounded components.

#include <limits>
#include <stdexcept>
#include <vector>

namespace heatlab {

struct Interval {
  double lo;
  double hi;
};

class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);
  IntervalSet(double lo, double hi) : IntervalSet({Interval{lo, hi}}) {}

  static IntervalSet point(double x) { return IntervalSet(x, x); }

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }

  bool bounded() const;
  double length() const;  // total Lebesgue measure; requires bounded
  bool contains(double x) const;

  double min() const;
  double max() const;

 private:
  std::vector<Interval> parts_;
};

// Euclidean gap between two interval unions (0 if they intersect).
double euclidean_gap(const IntervalSet& A, const IntervalSet& B);

// Gap along the circle of circumference 1 (sets within [0,1], 0 == 1).
double circular_gap(const IntervalSet& A, const IntervalSet& B);

}  // namespace heatlab
