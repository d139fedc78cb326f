#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nehari {

enum class DomainKind { Box, HalfSpaceBox, PerturbedBoundary };

// The boundary point carrying the singularity is always the origin.
//  Box:               [0,L1] x ... x [0,LN], origin at a corner.
//  HalfSpaceBox:      [-L,L]^{N-1} x [0,L], origin at the center of the
//                     flat face {x_N = 0}.
//  PerturbedBoundary: like HalfSpaceBox but the wall is the graph
//                     x_N = phi(x') with phi(x') = sum_i alpha_i x_i^2;
//                     the box extends to x_N = -L so concave walls
//                     (alpha_i < 0) are representable.
struct DomainSpec {
  DomainKind kind = DomainKind::HalfSpaceBox;
  int dim = 3;
  std::vector<double> extent;  // Box: per-axis lengths; otherwise {L}
  std::vector<double> alpha;   // N-1 curvature coefficients (PerturbedBoundary)
};

class EmptyInterior : public std::runtime_error {
 public:
  explicit EmptyInterior(const std::string& what) : std::runtime_error(what) {}
};

// Uniform lattice x = i*h restricted to the interior of the masked domain.
// Nodes outside the interior carry implicit value 0 (homogeneous Dirichlet).
// Node enumeration is lexicographic in the multi-index and fixed.
class Grid {
 public:
  static Grid build(const DomainSpec& spec, double h);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  std::size_t size() const { return nodes_.size() / dim_; }
  const DomainSpec& spec() const { return spec_; }

  // Lattice index of interior node n along the given axis.
  int index(std::size_t n, int axis) const { return nodes_[n * dim_ + axis]; }
  double coord(std::size_t n, int axis) const { return index(n, axis) * h_; }
  // Distance |x| to the singular boundary point 0; positive for every
  // interior node.
  double radius(std::size_t n) const { return radius_[n]; }

  // Interior ordinal of the lattice point idx, or npos if it is not an
  // interior node (boundary/exterior).
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t interior_at(const int* idx) const;
  std::size_t neighbor(std::size_t n, int axis, int dir) const;

  // Inclusive lattice index range of the bounding box.
  int lo(int axis) const { return lo_[axis]; }
  int hi(int axis) const { return hi_[axis]; }

 private:
  DomainSpec spec_;
  int dim_ = 0;
  double h_ = 0.0;
  std::vector<int> lo_, hi_;
  std::vector<int> nodes_;          // interior multi-indices, flattened
  std::vector<std::size_t> table_;  // bounding-box lattice -> interior ordinal
  std::vector<double> radius_;
};

// Nodal values on the interior nodes of a shared immutable grid.
class Field {
 public:
  Field() = default;
  explicit Field(std::shared_ptr<const Grid> grid)
      : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t n) { return values_[n]; }
  double operator[](std::size_t n) const { return values_[n]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // Multilinear interpolation at an arbitrary point; zero outside the
  // interior hull.
  double sample(const double* x) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
};

// phi(x') = sum alpha_i x_i^2 for the perturbed wall (0 for the others).
double boundary_height(const DomainSpec& spec, const double* xprime);

// H(0) = (sum alpha_i)/(N-1). Rejects Box (no curvature data at a corner).
double mean_curvature_at_origin(const DomainSpec& spec);

// sum over forward-difference edges (u_i - u_j)^2 h^{N-2}, zero extension
// outside the interior.
double dirichlet_energy(const Field& u);

// sum over interior nodes |u|^q radius^{-s} h^N.
double singular_integral(const Field& u, double q, double s);

// Stiffness operator of the edge energy: dirichlet_energy(u) = u . A u.
void apply_stiffness(const Field& u, Field& out);

// Plain-text dump: "N h dim_1 ... dim_N" then one "x_1 ... x_N value" line
// per interior node in enumeration order.
void dump_field(const Field& u, std::ostream& os);

}  // namespace nehari
