#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "aderdg/error.hpp"
#include "aderdg/models/state.hpp"

namespace aderdg {

enum class BoundaryKind { Periodic, Dirichlet, FreeSurface, Coupled };

BoundaryKind boundary_kind_from_string(const std::string& s);
const char* to_string(BoundaryKind k);

/// Axis-aligned structured grid. Element index is x-fastest.
template <int D>
class CartesianMesh {
 public:
  using Index = std::array<int, D>;

  CartesianMesh() = default;
  CartesianMesh(Vec<D> lo, Vec<D> hi, Index counts) : lo_(lo), hi_(hi), counts_(counts) {
    for (auto& b : kinds_) b.fill(BoundaryKind::Periodic);
    for (int d = 0; d < D; ++d) {
      if (counts[d] < 1) throw Error(ErrorKind::BadExtents, "cell count must be at least 1 on every axis");
      if (!(hi[d] > lo[d])) throw Error(ErrorKind::BadExtents, "upper extent must exceed lower extent");
      dx_[d] = (hi[d] - lo[d]) / counts[d];
    }
  }

  /// Boundary kind of face (axis, side), side 0 = low, 1 = high.
  void set_boundary(int axis, int side, BoundaryKind kind) { kinds_[axis][side] = kind; }
  void set_all_boundaries(BoundaryKind kind) {
    for (auto& b : kinds_) b.fill(kind);
  }
  BoundaryKind boundary(int axis, int side) const { return kinds_[axis][side]; }

  /// Throws BadExtents when a periodic face has a non-periodic partner.
  void check_boundaries() const {
    for (int d = 0; d < D; ++d)
      if ((kinds_[d][0] == BoundaryKind::Periodic) != (kinds_[d][1] == BoundaryKind::Periodic))
        throw Error(ErrorKind::BadExtents, "periodic boundaries must come in matched pairs");
  }

  const Vec<D>& lo() const { return lo_; }
  const Vec<D>& hi() const { return hi_; }
  const Index& counts() const { return counts_; }
  const Vec<D>& spacing() const { return dx_; }
  double h_min() const {
    double h = dx_[0];
    for (int d = 1; d < D; ++d) h = std::min(h, dx_[d]);
    return h;
  }
  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < D; ++d) v *= dx_[d];
    return v;
  }
  std::size_t num_elements() const {
    std::size_t n = 1;
    for (int d = 0; d < D; ++d) n *= static_cast<std::size_t>(counts_[d]);
    return n;
  }

  std::size_t linear(const Index& c) const {
    std::size_t e = 0;
    for (int d = D - 1; d >= 0; --d) e = e * counts_[d] + c[d];
    return e;
  }
  Index cell(std::size_t e) const {
    Index c{};
    for (int d = 0; d < D; ++d) {
      c[d] = static_cast<int>(e % counts_[d]);
      e /= counts_[d];
    }
    return c;
  }

  /// Neighbor across face (axis, side); nullopt at a non-periodic boundary.
  std::optional<std::size_t> neighbor(std::size_t e, int axis, int side) const {
    Index c = cell(e);
    c[axis] += side ? 1 : -1;
    if (c[axis] < 0 || c[axis] >= counts_[axis]) {
      if (kinds_[axis][side] != BoundaryKind::Periodic) return std::nullopt;
      c[axis] = (c[axis] + counts_[axis]) % counts_[axis];
    }
    return linear(c);
  }

  Vec<D> cell_lo(const Index& c) const {
    Vec<D> x{};
    for (int d = 0; d < D; ++d) x[d] = lo_[d] + c[d] * dx_[d];
    return x;
  }
  Vec<D> barycenter(const Index& c) const {
    Vec<D> x{};
    for (int d = 0; d < D; ++d) x[d] = lo_[d] + (c[d] + 0.5) * dx_[d];
    return x;
  }
  /// x = x_i - dx/2 + xi dx
  Vec<D> physical(const Index& c, const Vec<D>& xi) const {
    Vec<D> x{};
    for (int d = 0; d < D; ++d) x[d] = lo_[d] + (c[d] + xi[d]) * dx_[d];
    return x;
  }
  Vec<D> reference(const Index& c, const Vec<D>& x) const {
    Vec<D> xi{};
    for (int d = 0; d < D; ++d) xi[d] = (x[d] - lo_[d]) / dx_[d] - c[d];
    return xi;
  }

  bool contains(const Vec<D>& x) const {
    for (int d = 0; d < D; ++d)
      if (!(x[d] >= lo_[d] && x[d] <= hi_[d])) return false;
    return true;
  }

  /// Containing cell. A point on a shared face belongs to the lower-index cell.
  Index locate(const Vec<D>& x) const {
    if (!contains(x)) throw Error(ErrorKind::OutsideDomain, "point outside the mesh");
    Index c{};
    for (int d = 0; d < D; ++d) {
      const double s = (x[d] - lo_[d]) / dx_[d];
      int i = static_cast<int>(std::ceil(s)) - 1;
      c[d] = std::clamp(i, 0, counts_[d] - 1);
    }
    return c;
  }

 private:
  Vec<D> lo_{}, hi_{}, dx_{};
  Index counts_{};
  std::array<std::array<BoundaryKind, 2>, D> kinds_{};
};

}  // namespace aderdg
