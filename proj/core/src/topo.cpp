#include "bubblescope/topo.hpp"

#include <cmath>
#include <numbers>

#include "bubblescope/error.hpp"
#include "bubblescope/parallel.hpp"

namespace bubblescope {

namespace {
constexpr double kPi = std::numbers::pi;

DegreeResult finish(double raw) {
  DegreeResult r;
  r.raw = raw;
  r.rounded = std::lround(raw);
  r.residual = std::fabs(raw - static_cast<double>(r.rounded));
  return r;
}

void require_cycle(const Domain& d) {
  if (d.corners != 2) throw InvalidArgument("winding numbers need a 1-dimensional cycle of cells");
}

// Winding of the planar components (c0, c1) of the values around the origin.
DegreeResult planar_winding(const DiscreteMap& f, int c0, int c1) {
  const Domain& d = f.mesh();
  require_cycle(d);
  std::vector<double> inc(d.cell_count());
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    const Point& p = f.values[d.cell(c)[0]];
    const Point& q = f.values[d.cell(c)[1]];
    const double a = std::atan2(p[c0] * q[c1] - p[c1] * q[c0], p[c0] * q[c0] + p[c1] * q[c1]);
    if (std::fabs(a) >= kPi - 1e-9)
      throw ResolutionError("adjacent values are antipodal on cell " + std::to_string(c) +
                            "; the map is under-resolved");
    inc[c] = a;
  }
  return finish(pairwise_sum(inc) / (2.0 * kPi));
}
}  // namespace

DegreeResult degree_s1(const DiscreteMap& f) {
  if (f.target.kind() != TargetKind::sphere || f.target.dim() != 1)
    throw InvalidArgument("degree_s1 needs an S^1 target");
  return planar_winding(f, 0, 1);
}

DegreeResult degree_kronecker_s2(const DiscreteMap& f) {
  if (f.target.kind() != TargetKind::sphere || f.target.dim() != 2)
    throw InvalidArgument("degree_kronecker_s2 needs an S^2 target");
  const Domain& d = f.mesh();
  if (d.corners != 3) throw InvalidArgument("degree_kronecker_s2 needs a triangulated S^2 domain");
  std::vector<double> area(d.cell_count());
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    const std::uint32_t* v = d.cell(c);
    const Point& a = f.values[v[0]];
    const Point& b = f.values[v[1]];
    const Point& e = f.values[v[2]];
    const double ab = dot(a, b), be = dot(b, e), ea = dot(e, a);
    if (ab < -1.0 + 1e-12 || be < -1.0 + 1e-12 || ea < -1.0 + 1e-12)
      throw DegenerateSimplex(c, "image contains an antipodal vertex pair");
    const double det = det3(a, b, e);
    const double den = 1.0 + ab + be + ea;
    if (std::fabs(det) < 1e-14 && den <= 0.0)
      throw DegenerateSimplex(c, "image triangle spans a great circle");
    area[c] = 2.0 * std::atan2(det, den);
  }
  return finish(pairwise_sum(area) / (4.0 * kPi));
}

DegreeResult degree(const DiscreteMap& f) {
  if (f.target.kind() != TargetKind::sphere)
    throw InvalidArgument("degree needs a sphere target");
  if (f.target.dim() != f.mesh().dim)
    throw InvalidArgument("degree needs domain and target of equal dimension");
  if (f.target.dim() == 1) return degree_s1(f);
  if (f.target.dim() == 2) return degree_kronecker_s2(f);
  throw InvalidArgument("degree is implemented for m in {1, 2}");
}

std::pair<DegreeResult, DegreeResult> torus_windings(const DiscreteMap& f) {
  if (f.target.kind() != TargetKind::clifford_torus)
    throw InvalidArgument("torus windings need a Clifford torus target");
  return {planar_winding(f, 0, 1), planar_winding(f, 2, 3)};
}

double hurewicz_pairing(const DiscreteMap& f, const FormSpec& form) {
  if (form.tag == FormSpec::Tag::sphere_volume) {
    if (f.target.kind() != TargetKind::sphere || f.target.dim() != form.index)
      throw InvalidArgument("volume form does not live on this target");
    if (f.mesh().dim != form.index)
      throw InvalidArgument("form degree differs from the domain dimension");
    return degree(f).raw;
  }
  if (f.target.kind() != TargetKind::clifford_torus)
    throw InvalidArgument("angle forms live on the Clifford torus");
  if (f.mesh().dim != 1) throw InvalidArgument("angle forms pair with 1-dimensional domains");
  if (form.index != 1 && form.index != 2) throw InvalidArgument("angle form index must be 1 or 2");
  const auto w = torus_windings(f);
  return form.index == 1 ? w.first.raw : w.second.raw;
}

std::pair<long, long> hurewicz_torus_pair(const DiscreteMap& f) {
  const auto w = torus_windings(f);
  return {w.first.rounded, w.second.rounded};
}

}  // namespace bubblescope
