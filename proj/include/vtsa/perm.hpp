#pragma once

// Permutations of {0, ..., n-1} with value semantics.
// Composition is left-to-right: (a * b) maps x to b[a[x]], so x^(ab) = (x^a)^b.

#include <cstdint>
#include <sstream>
#include "vtsa/error.hpp"
#include <string>
#include <utility>
#include <vector>

namespace vtsa {

using Point = std::uint32_t;

class Perm {
public:
  Perm() = default;

  explicit Perm(std::size_t degree) : img_(degree) {
    for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<Point>(i);
  }

  explicit Perm(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Point v : img_) {
      if (v >= img_.size() || seen[v])
        throw InputError("Perm: image list is not a bijection");
      seen[v] = true;
    }
  }

  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>>& cycles) {
    Perm p(degree);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        Point from = c[i], to = c[(i + 1) % c.size()];
        if (from >= degree || to >= degree)
          throw InputError("Perm::from_cycles: point out of range");
        if (p.img_[from] != from)
          throw InputError("Perm::from_cycles: repeated point");
        p.img_[from] = to;
      }
    }
    return p;
  }

  std::size_t degree() const { return img_.size(); }

  Point operator[](Point p) const { return img_[p]; }

  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Point first_moved() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return static_cast<Point>(i);
    return static_cast<Point>(img_.size());
  }

  bool has_fixed_point() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] == i) return true;
    return false;
  }

  Perm operator*(const Perm& rhs) const {
    if (degree() != rhs.degree())
      throw InputError("Perm: degree mismatch in composition");
    std::vector<Point> r(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r[i] = rhs.img_[img_[i]];
    Perm out;
    out.img_ = std::move(r);
    return out;
  }

  Perm inverse() const {
    std::vector<Point> r(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r[img_[i]] = static_cast<Point>(i);
    Perm out;
    out.img_ = std::move(r);
    return out;
  }

  // h^-1 * this * h; transports the action along h.
  Perm conjugated_by(const Perm& h) const {
    if (degree() != h.degree())
      throw InputError("Perm: degree mismatch in conjugation");
    std::vector<Point> r(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r[h.img_[i]] = h.img_[img_[i]];
    Perm out;
    out.img_ = std::move(r);
    return out;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  // Nontrivial cycles, each rotated to start at its least point, sorted by
  // that least point.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<Point> c;
      Point p = static_cast<Point>(i);
      do {
        c.push_back(p);
        seen[p] = true;
        p = img_[p];
      } while (p != i);
      out.push_back(std::move(c));
    }
    return out;
  }

  // Disjoint-cycle rendering, 0-indexed; identity renders as "()".
  std::string cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cs) {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ' ';
        os << c[i];
      }
      os << ')';
    }
    return os.str();
  }

private:
  std::vector<Point> img_;
};

}  // namespace vtsa
