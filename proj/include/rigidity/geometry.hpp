#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/scalar.hpp"

namespace rigidity {

enum class Space { Line, Circle };

inline const char* space_name(Space s) {
  return s == Space::Line ? "line" : "circle";
}

/// Distance function of the ambient space. On the circle the circumference is
/// normalized to 1, so positions live in [0,1) and distances never exceed 1/2.
struct Metric {
  Space space;

  Scalar distance(const Scalar& x, const Scalar& y) const {
    Scalar diff = abs(x - y);
    if (space == Space::Line) return diff;
    Scalar wrap = Scalar(1) - diff;
    return min(diff, wrap);
  }
};

/// An injective placement of n labeled points into the line or the circle.
/// Immutable after construction; serves as ground truth for simulations.
class PointConfig {
public:
  PointConfig(Space space, std::vector<Scalar> positions)
      : space_(space), pos_(std::move(positions)) {
    if (space_ == Space::Circle) {
      for (const Scalar& p : pos_)
        if (p.sign() < 0 || p >= Scalar(1))
          throw std::invalid_argument(
              "PointConfig: circle positions must lie in [0,1)");
    }
    std::vector<Scalar> sorted = pos_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i - 1] == sorted[i])
        throw std::invalid_argument("PointConfig: positions must be distinct");
  }

  Space space() const { return space_; }
  int n() const { return int(pos_.size()); }
  const Scalar& position(int i) const { return pos_.at(std::size_t(i)); }
  const std::vector<Scalar>& positions() const { return pos_; }

  /// Metric distance between points i and j (0-based), i != j.
  Scalar distance(int i, int j) const {
    if (i < 0 || j < 0 || i >= n() || j >= n())
      throw std::out_of_range("PointConfig::distance: index out of range");
    if (i == j)
      throw std::invalid_argument("PointConfig::distance: i == j");
    return Metric{space_}.distance(pos_[std::size_t(i)], pos_[std::size_t(j)]);
  }

private:
  Space space_;
  std::vector<Scalar> pos_;
};

}  // namespace rigidity
