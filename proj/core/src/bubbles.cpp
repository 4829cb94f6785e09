#include "bubblescope/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "bubblescope/error.hpp"
#include "bubblescope/parallel.hpp"

namespace bubblescope {

namespace {

MStarPoint as_mstar(const Ball& b) { return MStarPoint{b.center, b.height}; }

Point wrap_base(Point x, int m) {
  for (int i = 0; i < m; ++i) x[i] -= std::floor(x[i]);
  return x;
}

// Lift b's base to the copy nearest to a's base.
Point lift_near(const Point& b, const Point& a, int m) {
  Point out = b;
  for (int i = 0; i < m; ++i) out[i] = a[i] + (b[i] - a[i] - std::round(b[i] - a[i]));
  return out;
}

std::int64_t cell_key(const Point& p, double size, int dims) {
  std::int64_t key = 0;
  for (int i = 0; i < dims; ++i) {
    const auto c = static_cast<std::int64_t>(std::floor(p[i] / size)) + (1 << 20);
    key = (key << 21) | (c & ((1 << 21) - 1));
  }
  return key;
}

int poincare_level(const Point& z) {
  return static_cast<int>(std::floor(-std::log2(std::max(1.0 - norm2(z), 1e-300))));
}

}  // namespace

double space_distance(Space space, const Ball& a, const Ball& b, int m) {
  switch (space) {
    case Space::euclidean: return distance(a.center, b.center);
    case Space::poincare: return poincare_distance(a.center, b.center);
    case Space::mstar: return mstar_distance(as_mstar(a), as_mstar(b), m);
  }
  return 0.0;
}

std::vector<std::size_t> separated_net(const std::vector<Point>& points, double separation,
                                       Space space) {
  if (!(separation > 0.0)) throw InvalidArgument("separation must be positive");
  if (space == Space::mstar) throw InvalidArgument("use separated_net_mstar for M* points");
  std::vector<std::size_t> selected;
  if (points.empty()) return selected;
  int dims = 1;
  for (const Point& p : points)
    for (int i = 0; i < kMaxDim; ++i)
      if (p[i] != 0.0) dims = std::max(dims, i + 1);
  if (dims > 3) throw InvalidArgument("separated_net supports up to three coordinates");

  if (space == Space::euclidean) {
    std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Point& p = points[i];
      bool covered = false;
      Point q = p;
      for (int dz = (dims > 2 ? -1 : 0); dz <= (dims > 2 ? 1 : 0) && !covered; ++dz)
        for (int dy = (dims > 1 ? -1 : 0); dy <= (dims > 1 ? 1 : 0) && !covered; ++dy)
          for (int dx = -1; dx <= 1 && !covered; ++dx) {
            q[0] = p[0] + dx * separation;
            q[1] = p[1] + dy * separation;
            q[2] = p[2] + dz * separation;
            auto it = grid.find(cell_key(q, separation, dims));
            if (it == grid.end()) continue;
            for (std::size_t j : it->second)
              if (distance(p, points[j]) < separation) {
                covered = true;
                break;
              }
          }
      if (!covered) {
        selected.push_back(i);
        grid[cell_key(p, separation, dims)].push_back(i);
      }
    }
    return selected;
  }

  // Poincare: one grid per level l = floor(-log2(1 - |z|^2)). Two points at
  // distance < s have |a - b| <= sinh(s/2) 2^{-(la + lb)/2} and levels within
  // s / ln 2 + 1 of each other.
  const double sh = std::sinh(0.5 * separation);
  const int spread = static_cast<int>(std::ceil(separation / std::log(2.0))) + 1;
  std::map<int, std::unordered_map<std::int64_t, std::vector<std::size_t>>> grids;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!(norm2(p) < 1.0)) throw InvalidArgument("Poincare points need |z| < 1");
    const int la = poincare_level(p);
    bool covered = false;
    for (auto it = grids.lower_bound(la - spread); it != grids.end() && it->first <= la + spread && !covered;
         ++it) {
      const double size = sh * std::pow(2.0, -0.5 * it->first);
      Point q = p;
      for (int dz = (dims > 2 ? -1 : 0); dz <= (dims > 2 ? 1 : 0) && !covered; ++dz)
        for (int dy = (dims > 1 ? -1 : 0); dy <= (dims > 1 ? 1 : 0) && !covered; ++dy)
          for (int dx = -1; dx <= 1 && !covered; ++dx) {
            q[0] = p[0] + dx * size;
            q[1] = p[1] + dy * size;
            q[2] = p[2] + dz * size;
            auto c = it->second.find(cell_key(q, size, dims));
            if (c == it->second.end()) continue;
            for (std::size_t j : c->second)
              if (poincare_distance(p, points[j]) < separation) {
                covered = true;
                break;
              }
          }
    }
    if (!covered) {
      selected.push_back(i);
      const double size = sh * std::pow(2.0, -0.5 * la);
      grids[la][cell_key(p, size, dims)].push_back(i);
    }
  }
  return selected;
}

std::vector<std::size_t> separated_net_mstar(const std::vector<MStarPoint>& points,
                                             double separation, int m) {
  if (!(separation > 0.0)) throw InvalidArgument("separation must be positive");
  std::vector<std::size_t> selected;
  // d >= |ln(t/s)|, so heights prefilter the candidates.
  std::multimap<double, std::size_t> by_height;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const MStarPoint& p = points[i];
    if (!(p.t > 0.0)) throw InvalidArgument("M* points need t > 0");
    const double lt = std::log(p.t);
    bool covered = false;
    for (auto it = by_height.lower_bound(lt - separation);
         it != by_height.end() && it->first <= lt + separation; ++it)
      if (mstar_distance(p, points[it->second], m) < separation) {
        covered = true;
        break;
      }
    if (!covered) {
      selected.push_back(i);
      by_height.emplace(lt, i);
    }
  }
  return selected;
}

Ball merge_pair(const Ball& a, const Ball& b, Space space, int m) {
  const double d = space_distance(space, a, b, m);
  if (d + b.radius <= a.radius) return a;
  if (d + a.radius <= b.radius) return b;
  Ball out = a;
  out.radius = std::min(0.5 * (d + a.radius + b.radius), a.radius + b.radius);
  const double tau = 0.5 * (d + b.radius - a.radius);
  switch (space) {
    case Space::euclidean:
      out.center = a.center + (tau / d) * (b.center - a.center);
      break;
    case Space::poincare:
      out.center = poincare_geodesic_point(a.center, b.center, tau);
      break;
    case Space::mstar: {
      const Point bl = lift_near(b.center, a.center, m);
      const Point za = half_space_to_ball(a.center, a.height, m);
      const Point zb = half_space_to_ball(bl, b.height, m);
      const MStarPoint c = ball_to_half_space(poincare_geodesic_point(za, zb, tau), m);
      out.center = wrap_base(c.base, m);
      out.height = c.t;
      break;
    }
  }
  for (double v : out.center)
    if (!std::isfinite(v)) throw Error("geodesic midpoint construction failed");
  return out;
}

std::vector<Ball> merge_balls(const std::vector<Ball>& balls, Space space, int m) {
  std::vector<Ball> family;
  for (const Ball& input : balls) {
    if (!(input.radius >= 0.0)) throw InvalidArgument("ball radius must be nonnegative");
    Ball current = input;
    for (;;) {
      std::size_t hit = family.size();
      for (std::size_t j = 0; j < family.size(); ++j)
        if (space_distance(space, family[j], current, m) <= family[j].radius + current.radius) {
          hit = j;
          break;
        }
      if (hit == family.size()) break;
      const Ball other = family[hit];
      family.erase(family.begin() + static_cast<std::ptrdiff_t>(hit));
      current = merge_pair(other, current, space, m);
    }
    family.push_back(current);
  }
  return family;
}

HoroballMerge merge_with_horoball(const std::vector<Ball>& balls, double T, int m) {
  if (!(T > 0.0)) throw InvalidArgument("horoball level must be positive");
  HoroballMerge h;
  h.T = T;
  h.half_log_inv_T = 0.5 * std::log(1.0 / T);
  h.balls = merge_balls(balls, Space::mstar, m);
  for (;;) {
    std::size_t hit = h.balls.size();
    for (std::size_t j = 0; j < h.balls.size(); ++j)
      if (h.balls[j].height * std::exp(h.balls[j].radius) >= h.T) {
        hit = j;
        break;
      }
    if (hit == h.balls.size()) break;
    const double r = h.balls[hit].radius;
    h.balls.erase(h.balls.begin() + static_cast<std::ptrdiff_t>(hit));
    h.half_log_inv_T += r;
    h.T = std::exp(-2.0 * h.half_log_inv_T);
    ++h.absorbed;
  }
  return h;
}

double horoball_quantity(const HoroballMerge& h) {
  double s = h.half_log_inv_T;
  for (const Ball& b : h.balls) s += b.radius;
  return s;
}

DiscreteMap bubble_boundary_map(const ExtensionField& F, const Ball& ball,
                                std::shared_ptr<const Domain> sphere) {
  if (ball.space != Space::poincare) throw InvalidArgument("bubble balls live in the Poincare ball");
  const Target& target = F.map().target;
  std::vector<Point> values(sphere->size());
  for (std::size_t i = 0; i < sphere->size(); ++i) {
    const Point z = hyperbolic_sphere_point(ball.center, ball.radius, sphere->vertices[i]);
    if (!(norm2(z) < 1.0)) throw DecompositionFailure(z, "boundary sample left the ball");
    auto v = target.try_retract(F.evaluate(z).value);
    if (!v) throw DecompositionFailure(z, "extension leaves the tube on a merged-ball boundary");
    values[i] = *v;
  }
  return make_map(std::move(sphere), target, std::move(values));
}

bool DecompositionReport::degree_additive() const noexcept {
  return total_degree.has_value() && total_degree->rounded == degree_sum;
}

DecompositionReport decompose(const DiscreteMap& f, const DecomposeParams& params) {
  const Domain& d = f.mesh();
  const int m = d.dim;
  if (d.kind != DomainKind::sphere || (m != 1 && m != 2))
    throw InvalidArgument("decompose needs a map on S^1 or S^2");
  DecompositionReport rep;
  rep.delta = params.delta > 0.0 ? params.delta : f.target.tube_radius();
  const bool sphere_degree = f.target.kind() == TargetKind::sphere && f.target.dim() == m;
  if (sphere_degree) rep.total_degree = degree(f);

  const ExtensionField F(f);
  LatticeSpec spec = params.lattice;
  spec.expand_certified = true;
  SingularSet S = detect_singular(F, rep.delta, spec);
  rep.rho = S.rho;
  rep.singular_samples = S.samples.size();
  rep.singular_measure = S.measure;

  std::vector<std::size_t> order(S.samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& A = S.samples[a];
    const auto& B = S.samples[b];
    if (A.distance != B.distance) return A.distance > B.distance;
    return A.point < B.point;
  });
  std::vector<Point> pts;
  pts.reserve(order.size());
  for (std::size_t i : order) pts.push_back(S.samples[i].point);
  const std::vector<std::size_t> net = separated_net(pts, 2.0 * rep.rho, Space::poincare);
  rep.net_size = net.size();
  std::vector<Ball> balls;
  for (std::size_t i : net) balls.push_back(Ball{Space::poincare, pts[i], 1.0, 2.0 * rep.rho});
  rep.balls = merge_balls(balls, Space::poincare, m);

  const int res = params.boundary_resolution > 0 ? params.boundary_resolution : (m == 1 ? 512 : 3);
  const auto sphere = share(make_sphere_mesh(m, res));
  for (const Ball& b : rep.balls) {
    BubbleReport br{b, bubble_boundary_map(F, b, sphere), std::nullopt, 0.0, 0.0};
    if (sphere_degree) {
      const DegreeResult g = degree(br.boundary);
      if (g.residual > params.max_residual)
        throw DecompositionFailure(b.center, "bubble degree residual " + std::to_string(g.residual) +
                                                 " exceeds " + std::to_string(params.max_residual));
      br.degree = g;
      rep.degree_sum += g.rounded;
    }
    br.lipschitz = discrete_lipschitz(br.boundary);
    br.lipschitz_over_sinh = br.lipschitz / std::sinh(b.radius);
    rep.bubbles.push_back(std::move(br));
  }
  return rep;
}

CountVsGap count_vs_gap(const DiscreteMap& f, double eps, const DecompositionReport& report,
                        const QuadratureOptions& q) {
  CountVsGap c;
  c.k = report.count();
  GapParams gp;
  gp.eps = eps;
  gp.p = 0.0;
  c.lambda = gap_potential(f, gp, q).value;
  if (c.lambda == 0.0) {
    c.vacuous = true;
    c.violation = c.k > 0;
    return c;
  }
  c.ratio = static_cast<double>(c.k) / c.lambda;
  return c;
}

MStarDecomposition decompose_mstar(const DiscreteMap& f, const MStarParams& p) {
  const Domain& d = f.mesh();
  if (d.kind != DomainKind::torus) throw InvalidArgument("decompose_mstar needs a torus domain");
  const int m = d.dim;
  const double delta = p.delta > 0.0 ? p.delta : f.target.tube_radius();
  const double rho = net_scale(f.target, m);
  const double sigma = p.sigma > 0.0 ? p.sigma : 0.5 * rho;
  MStarDecomposition out;
  out.initial_T = 2.0 * kMStarDelta / 3.0;
  const double t_min = 3.0 / d.grid_n;

  // Lattice: heights T0 e^{-j sigma}, base spacing sigma t per axis.
  struct Level {
    double t;
    int n;
  };
  std::vector<Level> levels;
  std::size_t total = 0;
  for (int j = 0;; ++j) {
    const double t = out.initial_T * std::exp(-j * sigma);
    if (t < t_min) break;
    const int n = static_cast<int>(std::ceil(1.0 / (sigma * t)));
    levels.push_back({t, n});
    total += m == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
    if (total > p.max_points)
      throw ResolutionError("M* lattice exceeds " + std::to_string(p.max_points) + " points");
  }
  std::vector<MStarPoint> lattice;
  lattice.reserve(total);
  for (const Level& L : levels) {
    for (int j = 0; j < (m == 2 ? L.n : 1); ++j)
      for (int i = 0; i < L.n; ++i) {
        MStarPoint x;
        x.base[0] = (i + 0.5) / L.n;
        if (m == 2) x.base[1] = (j + 0.5) / L.n;
        x.t = L.t;
        lattice.push_back(x);
      }
  }
  std::vector<double> dist(lattice.size());
  parallel_for(lattice.size(), p.threads, [&](std::size_t i) {
    dist[i] = f.target.distance_to_manifold(extend_mstar(f, lattice[i]));
  });
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (dist[i] >= delta) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
  for (std::size_t i : order) out.samples.push_back(lattice[i]);

  const std::vector<std::size_t> net = separated_net_mstar(out.samples, 2.0 * rho, m);
  std::vector<Ball> balls;
  for (std::size_t i : net)
    balls.push_back(Ball{Space::mstar, out.samples[i].base, out.samples[i].t, 2.0 * rho});
  HoroballMerge h0;
  h0.T = out.initial_T;
  h0.half_log_inv_T = 0.5 * std::log(1.0 / out.initial_T);
  h0.balls = balls;
  out.quantity_before = horoball_quantity(h0);
  const HoroballMerge h = merge_with_horoball(balls, out.initial_T, m);
  out.quantity_after = horoball_quantity(h);
  out.balls = h.balls;
  out.T = h.T;

  std::vector<Point> values(d.size());
  bool ok = true;
  try {
    for (std::size_t v = 0; v < d.size() && ok; ++v) {
      auto r = f.target.try_retract(extend_mstar(f, MStarPoint{d.vertices[v], out.T}));
      if (!r) ok = false;
      else values[v] = *r;
    }
  } catch (const ResolutionError&) {
    ok = false;
  }
  if (ok) out.residual = make_map(f.domain, f.target, std::move(values));
  return out;
}

}  // namespace bubblescope
