#pragma once

// Exact geometry of the Newton polytope conv(A ∪ {0}) and its facet data.
// Everything here is integer arithmetic; no floating point enters.

#include "gkz/exact.hpp"

#include <cstddef>
#include <vector>

namespace gkz {

/// The exponent matrix A: N distinct integer vectors generating Z^n.
class PointConfiguration {
public:
    /// Validates distinctness, N >= n and that the points generate Z^n.
    /// Throws InvalidConfiguration otherwise.
    static PointConfiguration create(std::size_t dim, std::vector<IntVector> points);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<IntVector>& points() const { return points_; }
    const IntVector& point(std::size_t j) const { return points_.at(j); }

private:
    PointConfiguration(std::size_t dim, std::vector<IntVector> points)
        : dim_(dim), points_(std::move(points)) {}

    std::size_t dim_;
    std::vector<IntVector> points_;
};

/// Facet of a full-dimensional lattice polytope, described by its primitive
/// inner normal: <kappa, p> >= offset on the polytope with equality on the
/// supporting face. For polytopes containing 0, pole_order = -offset >= 0.
struct FacetDatum {
    IntVector kappa;
    BigInt offset;
    BigInt pole_order;
    std::vector<std::size_t> supporting_face;  // indices into vertices()
    BigInt face_volume;                        // (n-1)-dim normalized volume in its own lattice
    bool contains_origin = false;
};

struct Face {
    std::vector<std::size_t> vertices;  // indices into vertices()
    std::size_t dim = 0;
    bool contains_origin = false;
    IntVector base_point;                  // first vertex
    std::vector<IntVector> lattice_basis;  // basis of Z^n ∩ direction space
};

enum class TriangulationApex { first_vertex, last_vertex };

class LatticePolytope {
public:
    /// Convex hull of the given integer points. Throws DegenerateConfiguration
    /// when the hull is not full-dimensional.
    static LatticePolytope from_points(std::size_t dim, std::vector<IntVector> points);

    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& vertices() const { return vertices_; }
    const std::vector<FacetDatum>& facets() const { return facets_; }
    /// Every face, including the polytope itself (dim n) and the vertices.
    const std::vector<Face>& face_lattice() const { return faces_; }

    bool contains(const IntVector& p) const;
    bool contains_origin() const;

    /// Normalized volume n! vol(P) from a pulling triangulation.
    BigInt triangulated_volume(TriangulationApex apex) const;
    /// Simplices (as vertex index lists) of the pulling triangulation.
    std::vector<std::vector<std::size_t>> triangulation(TriangulationApex apex) const;

private:
    LatticePolytope() = default;
    void build_face_lattice();
    void compute_facet_volumes();

    std::size_t dim_ = 0;
    std::vector<IntVector> vertices_;
    std::vector<FacetDatum> facets_;
    std::vector<Face> faces_;
    // For face i, indices of the faces of dimension dim-1 it contains.
    std::vector<std::vector<std::size_t>> subfacets_;
};

/// Δ = conv({0} ∪ A).
LatticePolytope build_delta(const PointConfiguration& config);

/// Vol_Z(P) = n! vol(P).
BigInt normalized_volume(const LatticePolytope& polytope);

/// True iff 0 lies in the interior, i.e. every facet has positive pole order.
bool origin_interior(const LatticePolytope& polytope);

struct PyramidRow {
    IntVector kappa;
    BigInt pole_order;
    BigInt face_volume;
    BigInt product;
};

struct PyramidCheck {
    bool holds = false;
    BigInt facet_sum;
    BigInt volume;
    std::vector<PyramidRow> table;
};

/// Compares sum over facets of face_volume * pole_order with Vol_Z(P).
PyramidCheck pyramid_identity(const LatticePolytope& polytope);

/// All faces of dimension d.
std::vector<Face> faces(const LatticePolytope& polytope, std::size_t d);

/// The (dim Γ)-dimensional normalized volume of a face in its own lattice.
BigInt face_lattice_volume(const LatticePolytope& polytope, const Face& face);

}  // namespace gkz
