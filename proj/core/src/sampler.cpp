#include "bubblescope/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bubblescope/error.hpp"

namespace bubblescope {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t bucket_key(int i, int j, int k) noexcept {
  return (static_cast<std::int64_t>(i + 1024) << 42) | (static_cast<std::int64_t>(j + 1024) << 21) |
         static_cast<std::int64_t>(k + 1024);
}
}  // namespace

MapSampler::MapSampler(const DiscreteMap& f) : f_(&f) {
  const Domain& d = f.mesh();
  if (d.kind == DomainKind::sphere && d.dim == 1) {
    angles_.reserve(d.size());
    double prev = std::atan2(d.vertices[0][1], d.vertices[0][0]);
    angles_.push_back(prev);
    for (std::size_t i = 1; i < d.size(); ++i) {
      double a = std::atan2(d.vertices[i][1], d.vertices[i][0]);
      while (a <= prev) a += kTwoPi;
      angles_.push_back(a);
      prev = a;
    }
    if (angles_.back() - angles_.front() >= kTwoPi)
      throw InvalidArgument("circle mesh vertices are not in counterclockwise order");
  } else if (d.kind == DomainKind::sphere && d.dim == 2) {
    incident_.resize(d.size());
    for (std::size_t c = 0; c < d.cell_count(); ++c)
      for (int k = 0; k < 3; ++k) incident_[d.cell(c)[k]].push_back(static_cast<std::uint32_t>(c));
    bucket_size_ = std::max(d.spacing(), 1e-3);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Point& p = d.vertices[i];
      const int a = static_cast<int>(std::floor(p[0] / bucket_size_));
      const int b = static_cast<int>(std::floor(p[1] / bucket_size_));
      const int c = static_cast<int>(std::floor(p[2] / bucket_size_));
      buckets_[bucket_key(a, b, c)].push_back(static_cast<std::uint32_t>(i));
    }
  } else if (d.kind == DomainKind::sphere) {
    throw InvalidArgument("sampling needs a circle, an S^2 mesh or a grid");
  }
}

Point MapSampler::operator()(const Point& x) const {
  const Stencil s = stencil(x);
  Point y{};
  for (int k = 0; k < s.count; ++k) y += s.weight[k] * f_->values[s.index[k]];
  if (auto r = f_->target.try_retract(y)) return *r;
  throw ResolutionError("interpolated value leaves the target tube; refine the mesh");
}

MapSampler::Stencil MapSampler::stencil(const Point& x) const {
  const Domain& d = f_->mesh();
  if (d.kind == DomainKind::sphere) return d.dim == 1 ? circle_stencil(x) : sphere2_stencil(x);
  return grid_stencil(x);
}

MapSampler::Stencil MapSampler::circle_stencil(const Point& x) const {
  double a = std::atan2(x[1], x[0]);
  while (a < angles_.front()) a += kTwoPi;
  while (a >= angles_.front() + kTwoPi) a -= kTwoPi;
  const auto it = std::upper_bound(angles_.begin(), angles_.end(), a);
  const std::size_t n = angles_.size();
  const std::size_t hi = static_cast<std::size_t>(it - angles_.begin());
  const std::size_t i = hi - 1;
  const std::size_t j = hi % n;
  const double a0 = angles_[i];
  const double a1 = hi < n ? angles_[hi] : angles_.front() + kTwoPi;
  const double t = (a - a0) / (a1 - a0);
  Stencil s;
  s.count = 2;
  s.index[0] = static_cast<std::uint32_t>(i);
  s.index[1] = static_cast<std::uint32_t>(j);
  s.weight[0] = 1.0 - t;
  s.weight[1] = t;
  return s;
}

std::size_t MapSampler::nearest_vertex(const Point& x) const {
  const Domain& d = f_->mesh();
  const int a = static_cast<int>(std::floor(x[0] / bucket_size_));
  const int b = static_cast<int>(std::floor(x[1] / bucket_size_));
  const int c = static_cast<int>(std::floor(x[2] / bucket_size_));
  std::size_t best = d.size();
  double best_d = std::numeric_limits<double>::infinity();
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj)
      for (int dk = -1; dk <= 1; ++dk) {
        const auto it = buckets_.find(bucket_key(a + di, b + dj, c + dk));
        if (it == buckets_.end()) continue;
        for (std::uint32_t v : it->second) {
          const double dd = distance2(d.vertices[v], x);
          if (dd < best_d) {
            best_d = dd;
            best = v;
          }
        }
      }
  if (best == d.size()) {
    for (std::size_t v = 0; v < d.size(); ++v) {
      const double dd = distance2(d.vertices[v], x);
      if (dd < best_d) {
        best_d = dd;
        best = v;
      }
    }
  }
  return best;
}

bool MapSampler::try_triangle(std::size_t tri, const Point& x, Stencil& out) const {
  const Domain& d = f_->mesh();
  const std::uint32_t* v = d.cell(tri);
  const Point& A = d.vertices[v[0]];
  const Point& B = d.vertices[v[1]];
  const Point& C = d.vertices[v[2]];
  // Central projection of x onto the triangle's plane, barycentric by Cramer.
  const double det = det3(A, B, C);
  if (det == 0.0) return false;
  double l0 = det3(x, B, C) / det;
  double l1 = det3(A, x, C) / det;
  double l2 = det3(A, B, x) / det;
  const double sum = l0 + l1 + l2;
  if (!(sum > 0.0)) return false;
  l0 /= sum;
  l1 /= sum;
  l2 /= sum;
  constexpr double tol = -1e-12;
  if (l0 < tol || l1 < tol || l2 < tol) return false;
  out.count = 3;
  out.index[0] = v[0];
  out.index[1] = v[1];
  out.index[2] = v[2];
  out.weight[0] = std::max(l0, 0.0);
  out.weight[1] = std::max(l1, 0.0);
  out.weight[2] = std::max(l2, 0.0);
  return true;
}

MapSampler::Stencil MapSampler::sphere2_stencil(const Point& x) const {
  Stencil s;
  const std::size_t v = nearest_vertex(x);
  for (std::uint32_t t : incident_[v])
    if (try_triangle(t, x, s)) return s;
  // Rare: the containing triangle does not touch the nearest vertex.
  const Domain& d = f_->mesh();
  for (std::uint32_t t : incident_[v])
    for (int k = 0; k < 3; ++k)
      for (std::uint32_t t2 : incident_[d.cell(t)[k]])
        if (try_triangle(t2, x, s)) return s;
  for (std::size_t t = 0; t < d.cell_count(); ++t)
    if (try_triangle(t, x, s)) return s;
  throw ResolutionError("no mesh triangle contains the query point");
}

MapSampler::Stencil MapSampler::grid_stencil(const Point& x) const {
  const Domain& d = f_->mesh();
  const int n = d.grid_n;
  const bool torus = d.kind == DomainKind::torus;
  auto locate = [&](double c, int& i0, int& i1, double& t) {
    if (torus) {
      double u = (c - std::floor(c)) * n;
      i0 = static_cast<int>(std::floor(u));
      t = u - i0;
      i0 %= n;
      i1 = (i0 + 1) % n;
    } else {
      const double u = std::clamp(c, 0.0, 1.0) * (n - 1);
      i0 = std::min(static_cast<int>(std::floor(u)), n - 2);
      t = u - i0;
      i1 = i0 + 1;
    }
  };
  Stencil s;
  int i0, i1;
  double tx;
  locate(x[0], i0, i1, tx);
  if (d.dim == 1) {
    s.count = 2;
    s.index[0] = static_cast<std::uint32_t>(i0);
    s.index[1] = static_cast<std::uint32_t>(i1);
    s.weight[0] = 1.0 - tx;
    s.weight[1] = tx;
    return s;
  }
  int j0, j1;
  double ty;
  locate(x[1], j0, j1, ty);
  s.count = 4;
  const int ids[4][2] = {{i0, j0}, {i1, j0}, {i1, j1}, {i0, j1}};
  const double ws[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), tx * ty, (1 - tx) * ty};
  for (int k = 0; k < 4; ++k) {
    s.index[k] = static_cast<std::uint32_t>(ids[k][1] * n + ids[k][0]);
    s.weight[k] = ws[k];
  }
  return s;
}

}  // namespace bubblescope
