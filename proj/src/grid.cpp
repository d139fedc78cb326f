#include "nehari/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace nehari {

double boundary_height(const DomainSpec& spec, const double* xprime) {
  if (spec.kind != DomainKind::PerturbedBoundary) return 0.0;
  double phi = 0.0;
  for (int k = 0; k + 1 < spec.dim; ++k)
    phi += spec.alpha[k] * xprime[k] * xprime[k];
  return phi;
}

double mean_curvature_at_origin(const DomainSpec& spec) {
  if (spec.kind == DomainKind::Box)
    throw std::invalid_argument(
        "mean_curvature_at_origin: Box has no curvature data at a corner");
  if (spec.kind == DomainKind::HalfSpaceBox) return 0.0;
  double sum = 0.0;
  for (double a : spec.alpha) sum += a;
  return sum / (spec.dim - 1);
}

namespace {

bool is_interior(const DomainSpec& spec, const std::vector<int>& lohi_hi,
                 const int* idx, double h) {
  const int N = spec.dim;
  if (spec.kind == DomainKind::Box) {
    for (int k = 0; k < N; ++k) {
      const int top = lohi_hi[k];
      if (idx[k] <= 0 || idx[k] >= top) return false;
    }
    return true;
  }
  const int M = lohi_hi[0];
  for (int k = 0; k + 1 < N; ++k)
    if (idx[k] <= -M || idx[k] >= M) return false;
  if (idx[N - 1] >= M) return false;
  if (spec.kind == DomainKind::HalfSpaceBox) return idx[N - 1] > 0;
  double xp[64];
  for (int k = 0; k + 1 < N; ++k) xp[k] = idx[k] * h;
  return idx[N - 1] * h > boundary_height(spec, xp);
}

}  // namespace

Grid Grid::build(const DomainSpec& spec, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("Grid::build: h must be > 0");
  const int N = spec.dim;
  if (N < 1 || N > 64) throw std::invalid_argument("Grid::build: bad dim");
  if (spec.kind == DomainKind::PerturbedBoundary &&
      static_cast<int>(spec.alpha.size()) != N - 1)
    throw std::invalid_argument("Grid::build: alpha must have N-1 entries");

  Grid g;
  g.spec_ = spec;
  g.dim_ = N;
  g.h_ = h;
  g.lo_.resize(N);
  g.hi_.resize(N);
  std::vector<int> himask(N);
  if (spec.kind == DomainKind::Box) {
    if (static_cast<int>(spec.extent.size()) != N)
      throw std::invalid_argument("Grid::build: Box needs N extents");
    for (int k = 0; k < N; ++k) {
      const int m = static_cast<int>(std::lround(spec.extent[k] / h));
      if (m < 1) throw EmptyInterior("Grid::build: extent below spacing");
      g.lo_[k] = 0;
      g.hi_[k] = m;
      himask[k] = m;
    }
  } else {
    if (spec.extent.size() != 1)
      throw std::invalid_argument("Grid::build: half-space box needs one extent L");
    const int M = static_cast<int>(std::lround(spec.extent[0] / h));
    if (M < 1) throw EmptyInterior("Grid::build: extent below spacing");
    for (int k = 0; k + 1 < N; ++k) {
      g.lo_[k] = -M;
      g.hi_[k] = M;
      himask[k] = M;
    }
    g.lo_[N - 1] = (spec.kind == DomainKind::HalfSpaceBox) ? 0 : -M;
    g.hi_[N - 1] = M;
    himask[N - 1] = M;
  }

  std::size_t box = 1;
  for (int k = 0; k < N; ++k) box *= static_cast<std::size_t>(g.hi_[k] - g.lo_[k] + 1);
  g.table_.assign(box, npos);

  std::vector<int> idx(g.lo_.begin(), g.lo_.end());
  for (std::size_t flat = 0; flat < box; ++flat) {
    if (is_interior(spec, himask, idx.data(), h)) {
      const std::size_t ord = g.nodes_.size() / N;
      g.table_[flat] = ord;
      double r2 = 0.0;
      for (int k = 0; k < N; ++k) {
        g.nodes_.push_back(idx[k]);
        r2 += (idx[k] * h) * (idx[k] * h);
      }
      g.radius_.push_back(std::sqrt(r2));
    }
    // lexicographic advance, last axis fastest
    for (int k = N - 1; k >= 0; --k) {
      if (++idx[k] <= g.hi_[k]) break;
      idx[k] = g.lo_[k];
    }
  }
  if (g.nodes_.empty()) throw EmptyInterior("Grid::build: no interior nodes");
  return g;
}

std::size_t Grid::interior_at(const int* idx) const {
  std::size_t flat = 0;
  for (int k = 0; k < dim_; ++k) {
    if (idx[k] < lo_[k] || idx[k] > hi_[k]) return npos;
    flat = flat * static_cast<std::size_t>(hi_[k] - lo_[k] + 1) +
           static_cast<std::size_t>(idx[k] - lo_[k]);
  }
  return table_[flat];
}

std::size_t Grid::neighbor(std::size_t n, int axis, int dir) const {
  int idx[64];
  for (int k = 0; k < dim_; ++k) idx[k] = index(n, k);
  idx[axis] += dir;
  return interior_at(idx);
}

double Field::sample(const double* x) const {
  const Grid& g = *grid_;
  const int N = g.dim();
  const double h = g.spacing();
  int base[64];
  double frac[64];
  for (int k = 0; k < N; ++k) {
    const double s = x[k] / h;
    base[k] = static_cast<int>(std::floor(s));
    frac[k] = s - base[k];
  }
  double acc = 0.0;
  const unsigned corners = 1u << N;
  int idx[64];
  for (unsigned c = 0; c < corners; ++c) {
    double w = 1.0;
    for (int k = 0; k < N; ++k) {
      const bool up = (c >> k) & 1u;
      w *= up ? frac[k] : 1.0 - frac[k];
      idx[k] = base[k] + (up ? 1 : 0);
    }
    if (w == 0.0) continue;
    const std::size_t n = g.interior_at(idx);
    if (n != Grid::npos) acc += w * values_[n];
  }
  return acc;
}

double dirichlet_energy(const Field& u) {
  const Grid& g = u.grid();
  const int N = g.dim();
  const double scale = std::pow(g.spacing(), N - 2);
  double sum = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double un = u[n];
    for (int k = 0; k < N; ++k) {
      const std::size_t fwd = g.neighbor(n, k, +1);
      const double uf = (fwd == Grid::npos) ? 0.0 : u[fwd];
      sum += (un - uf) * (un - uf);
      if (g.neighbor(n, k, -1) == Grid::npos) sum += un * un;
    }
  }
  return scale * sum;
}

double singular_integral(const Field& u, double q, double s) {
  const Grid& g = u.grid();
  const double vol = std::pow(g.spacing(), g.dim());
  double sum = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double a = std::abs(u[n]);
    if (a == 0.0) continue;
    sum += std::pow(a, q) * std::pow(g.radius(n), -s);
  }
  return vol * sum;
}

void apply_stiffness(const Field& u, Field& out) {
  const Grid& g = u.grid();
  const int N = g.dim();
  const double scale = std::pow(g.spacing(), N - 2);
  for (std::size_t n = 0; n < g.size(); ++n) {
    double acc = 2.0 * N * u[n];
    for (int k = 0; k < N; ++k) {
      const std::size_t fwd = g.neighbor(n, k, +1);
      const std::size_t bwd = g.neighbor(n, k, -1);
      if (fwd != Grid::npos) acc -= u[fwd];
      if (bwd != Grid::npos) acc -= u[bwd];
    }
    out[n] = scale * acc;
  }
}

void dump_field(const Field& u, std::ostream& os) {
  const Grid& g = u.grid();
  const int N = g.dim();
  char buf[64];
  os << N << ' ';
  std::snprintf(buf, sizeof(buf), "%.17g", g.spacing());
  os << buf;
  for (int k = 0; k < N; ++k) os << ' ' << (g.hi(k) - g.lo(k) + 1);
  os << '\n';
  for (std::size_t n = 0; n < g.size(); ++n) {
    for (int k = 0; k < N; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", g.coord(n, k));
      os << buf << ' ';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", u[n]);
    os << buf << '\n';
  }
}

}  // namespace nehari
