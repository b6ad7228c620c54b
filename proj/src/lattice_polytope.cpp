#include "gkz/lattice_polytope.hpp"

#include "gkz/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace gkz {

namespace {

std::string key_of(const IntVector& v) {
    std::string key;
    for (const auto& x : v) {
        key += x.str();
        key += ',';
    }
    return key;
}

std::size_t affine_dimension(const std::vector<IntVector>& pts, std::size_t n) {
    if (pts.empty()) return 0;
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(subtract(pts[i], pts[0]));
    if (diffs.empty()) return 0;
    return rank_of(diffs, n);
}

}  // namespace

PointConfiguration PointConfiguration::create(std::size_t dim, std::vector<IntVector> points) {
    if (dim == 0) throw InvalidConfiguration("dimension must be positive");
    std::set<std::string> seen;
    for (const auto& p : points) {
        if (p.size() != dim)
            throw InvalidConfiguration("point of length " + std::to_string(p.size()) +
                                       " in a dimension-" + std::to_string(dim) + " configuration");
        if (!seen.insert(key_of(p)).second)
            throw InvalidConfiguration("duplicate exponent vector " + key_of(p));
    }
    if (points.size() < dim)
        throw InvalidConfiguration("fewer points than the dimension");
    auto diag = smith_diagonal(points, dim);
    bool unimodular = diag.size() == dim &&
                      std::all_of(diag.begin(), diag.end(), [](const BigInt& d) { return d == 1; });
    if (!unimodular) throw InvalidConfiguration("the points do not generate Z^n");
    return PointConfiguration(dim, std::move(points));
}

LatticePolytope LatticePolytope::from_points(std::size_t dim, std::vector<IntVector> input) {
    // Deduplicate, deterministic order.
    std::map<std::string, IntVector> unique;
    for (auto& p : input) {
        if (p.size() != dim) throw InvalidConfiguration("point dimension mismatch");
        unique.emplace(key_of(p), p);
    }
    std::vector<IntVector> pts;
    for (auto& [k, v] : unique) pts.push_back(v);
    std::sort(pts.begin(), pts.end());

    if (affine_dimension(pts, dim) != dim)
        throw DegenerateConfiguration("the point set is not full-dimensional");

    LatticePolytope poly;
    poly.dim_ = dim;

    // Facet hyperplanes: every n-subset spanning a hyperplane that supports all points.
    std::map<std::string, std::pair<IntVector, BigInt>> hyperplanes;
    std::vector<std::size_t> idx(dim);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t start) {
        if (depth == dim) {
            std::vector<IntVector> diffs;
            for (std::size_t k = 1; k < dim; ++k) diffs.push_back(subtract(pts[idx[k]], pts[idx[0]]));
            auto kernel = diffs.empty() ? integer_kernel({}, dim) : integer_kernel(diffs, dim);
            if (kernel.size() != 1) return;
            IntVector kappa = primitive(kernel[0]);
            BigInt b = dot(kappa, pts[idx[0]]);
            bool all_ge = true, all_le = true;
            for (const auto& p : pts) {
                BigInt v = dot(kappa, p);
                if (v < b) all_ge = false;
                if (v > b) all_le = false;
            }
            if (all_le && !all_ge) {
                for (auto& x : kappa) x = -x;
                b = -b;
                std::swap(all_ge, all_le);
            }
            if (all_ge && !all_le) hyperplanes.emplace(key_of(kappa), std::make_pair(kappa, b));
            return;
        }
        for (std::size_t i = start; i < pts.size(); ++i) {
            idx[depth] = i;
            choose(depth + 1, i + 1);
        }
    };
    choose(0, 0);

    // Vertices: points where the active normals have full rank.
    for (const auto& p : pts) {
        std::vector<IntVector> active;
        for (const auto& [k, hb] : hyperplanes)
            if (dot(hb.first, p) == hb.second) active.push_back(hb.first);
        if (!active.empty() && rank_of(active, dim) == dim) poly.vertices_.push_back(p);
    }

    for (const auto& [k, hb] : hyperplanes) {
        FacetDatum f;
        f.kappa = hb.first;
        f.offset = hb.second;
        f.pole_order = -hb.second;
        for (std::size_t v = 0; v < poly.vertices_.size(); ++v)
            if (dot(f.kappa, poly.vertices_[v]) == f.offset) f.supporting_face.push_back(v);
        f.contains_origin = f.offset == 0;
        poly.facets_.push_back(std::move(f));
    }
    // Deterministic facet order: lexicographic in kappa.
    std::sort(poly.facets_.begin(), poly.facets_.end(),
              [](const FacetDatum& a, const FacetDatum& b) { return a.kappa < b.kappa; });

    poly.build_face_lattice();
    poly.compute_facet_volumes();
    return poly;
}

bool LatticePolytope::contains(const IntVector& p) const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const FacetDatum& f) { return dot(f.kappa, p) >= f.offset; });
}

bool LatticePolytope::contains_origin() const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [](const FacetDatum& f) { return f.offset <= 0; });
}

void LatticePolytope::build_face_lattice() {
    std::set<std::vector<std::size_t>> sets;
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    sets.insert(all);
    for (const auto& f : facets_) sets.insert(f.supporting_face);

    // Closure under intersection: every face is an intersection of facets.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<std::size_t>> current(sets.begin(), sets.end());
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                std::vector<std::size_t> inter;
                std::set_intersection(current[i].begin(), current[i].end(), current[j].begin(),
                                      current[j].end(), std::back_inserter(inter));
                if (!inter.empty() && sets.insert(inter).second) grew = true;
            }
        }
    }

    const bool origin_in = contains_origin();
    for (const auto& vs : sets) {
        Face face;
        face.vertices = vs;
        std::vector<IntVector> pts;
        for (auto v : vs) pts.push_back(vertices_[v]);
        face.dim = affine_dimension(pts, dim_);
        face.base_point = pts.front();
        std::vector<IntVector> diffs;
        for (std::size_t k = 1; k < pts.size(); ++k) diffs.push_back(subtract(pts[k], pts[0]));
        face.lattice_basis = saturated_basis(diffs, dim_);
        // 0 lies on the face iff it lies on Δ and on every facet hyperplane containing the face.
        face.contains_origin = origin_in;
        for (const auto& f : facets_) {
            bool contains_face = std::includes(f.supporting_face.begin(), f.supporting_face.end(),
                                               vs.begin(), vs.end());
            if (contains_face && f.offset != 0) face.contains_origin = false;
        }
        faces_.push_back(std::move(face));
    }
    std::stable_sort(faces_.begin(), faces_.end(),
                     [](const Face& a, const Face& b) { return a.dim < b.dim; });

    subfacets_.assign(faces_.size(), {});
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        for (std::size_t j = 0; j < faces_.size(); ++j) {
            if (faces_[j].dim + 1 != faces_[i].dim) continue;
            if (std::includes(faces_[i].vertices.begin(), faces_[i].vertices.end(),
                              faces_[j].vertices.begin(), faces_[j].vertices.end()))
                subfacets_[i].push_back(j);
        }
    }
}

std::vector<std::vector<std::size_t>> LatticePolytope::triangulation(TriangulationApex apex) const {
    std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
    std::function<const std::vector<std::vector<std::size_t>>&(std::size_t)> tri =
        [&](std::size_t fi) -> const std::vector<std::vector<std::size_t>>& {
        if (auto it = memo.find(fi); it != memo.end()) return it->second;
        const Face& face = faces_[fi];
        std::vector<std::vector<std::size_t>> out;
        if (face.dim == 0) {
            out.push_back({face.vertices.front()});
        } else {
            std::size_t a = apex == TriangulationApex::first_vertex ? face.vertices.front()
                                                                   : face.vertices.back();
            for (std::size_t sub : subfacets_[fi]) {
                const auto& sv = faces_[sub].vertices;
                if (std::binary_search(sv.begin(), sv.end(), a)) continue;
                for (const auto& simplex : tri(sub)) {
                    std::vector<std::size_t> s{a};
                    s.insert(s.end(), simplex.begin(), simplex.end());
                    out.push_back(std::move(s));
                }
            }
        }
        return memo.emplace(fi, std::move(out)).first->second;
    };
    // The polytope itself is the last face (largest dimension).
    return tri(faces_.size() - 1);
}

BigInt LatticePolytope::triangulated_volume(TriangulationApex apex) const {
    BigInt total = 0;
    for (const auto& simplex : triangulation(apex)) {
        std::vector<IntVector> rows;
        for (std::size_t k = 1; k < simplex.size(); ++k)
            rows.push_back(subtract(vertices_[simplex[k]], vertices_[simplex[0]]));
        total += boost::multiprecision::abs(determinant(rows));
    }
    return total;
}

BigInt face_lattice_volume(const LatticePolytope& polytope, const Face& face) {
    if (face.dim == 0) return 1;
    std::vector<IntVector> coords;
    for (auto v : face.vertices) {
        auto y = lattice_coordinates(face.lattice_basis,
                                     subtract(polytope.vertices()[v], face.base_point));
        if (!y) throw InvalidConfiguration("face vertex outside its own lattice");
        coords.push_back(*y);
    }
    auto sub = LatticePolytope::from_points(face.dim, std::move(coords));
    return sub.triangulated_volume(TriangulationApex::first_vertex);
}

void LatticePolytope::compute_facet_volumes() {
    for (auto& f : facets_) {
        if (dim_ == 1) {
            f.face_volume = 1;
            continue;
        }
        auto it = std::find_if(faces_.begin(), faces_.end(),
                               [&](const Face& face) { return face.vertices == f.supporting_face; });
        f.face_volume = face_lattice_volume(*this, *it);
    }
}

LatticePolytope build_delta(const PointConfiguration& config) {
    std::vector<IntVector> pts = config.points();
    pts.push_back(IntVector(config.dim(), 0));
    return LatticePolytope::from_points(config.dim(), std::move(pts));
}

BigInt normalized_volume(const LatticePolytope& polytope) {
    return polytope.triangulated_volume(TriangulationApex::first_vertex);
}

bool origin_interior(const LatticePolytope& polytope) {
    const auto& fs = polytope.facets();
    return !fs.empty() &&
           std::all_of(fs.begin(), fs.end(), [](const FacetDatum& f) { return f.pole_order > 0; });
}

PyramidCheck pyramid_identity(const LatticePolytope& polytope) {
    PyramidCheck check;
    check.volume = normalized_volume(polytope);
    check.facet_sum = 0;
    for (const auto& f : polytope.facets()) {
        PyramidRow row{f.kappa, f.pole_order, f.face_volume, f.pole_order * f.face_volume};
        check.facet_sum += row.product;
        check.table.push_back(std::move(row));
    }
    check.holds = check.facet_sum == check.volume;
    return check;
}

std::vector<Face> faces(const LatticePolytope& polytope, std::size_t d) {
    std::vector<Face> out;
    for (const auto& f : polytope.face_lattice())
        if (f.dim == d) out.push_back(f);
    return out;
}

}  // namespace gkz
