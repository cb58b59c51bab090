#include "cayley/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cayley {

namespace {

std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t affine_rank(const std::vector<IntVec>& pts) {
  if (pts.size() <= 1) return 0;
  RatRows rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec r(pts[i].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = Rat(pts[i][j] - pts[0][j]);
    rows.push_back(std::move(r));
  }
  return rat_rank(rows);
}

}  // namespace

bool FaceLattice::contains(std::size_t a, std::size_t b) const {
  const auto& va = faces_.at(a).vertex_indices;
  const auto& vb = faces_.at(b).vertex_indices;
  return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
}

std::optional<std::size_t> FaceLattice::find(const std::vector<std::size_t>& vertex_indices) const {
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].vertex_indices == vertex_indices) return i;
  return std::nullopt;
}

std::vector<std::size_t> FaceLattice::superfaces(std::size_t id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (contains(id, i)) out.push_back(i);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FaceLattice::covering_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < faces_.size(); ++a)
    for (std::size_t b = 0; b < faces_.size(); ++b) {
      if (a == b || !contains(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < faces_.size() && covered; ++c) {
        if (c == a || c == b) continue;
        if (contains(a, c) && contains(c, b)) covered = false;
      }
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

bool Polytope::contains(const RatVec& x) const {
  for (const auto& f : facets_)
    if (f.value(x) > 1) return false;
  return true;
}

std::vector<std::size_t> Polytope::tight_facets(const RatVec& x) const {
  std::vector<std::size_t> tight;
  for (std::size_t j = 0; j < facets_.size(); ++j) {
    Rat v = facets_[j].value(x);
    if (v > 1) throw std::invalid_argument("point lies outside the hull");
    if (v == 1) tight.push_back(j);
  }
  return tight;
}

std::optional<std::size_t> Polytope::smallest_face_containing(const RatVec& x) const {
  std::vector<std::size_t> tight = tight_facets(x);
  if (tight.empty()) return std::nullopt;
  std::vector<std::size_t> vset = facet_vertices_[tight.front()];
  for (std::size_t k = 1; k < tight.size(); ++k)
    vset = sorted_intersection(vset, facet_vertices_[tight[k]]);
  auto id = lattice_.find(vset);
  if (!id) throw std::logic_error("face lattice is missing a facet intersection");
  return id;
}

std::optional<std::size_t> Polytope::smallest_face_containing(const IntVec& x) const {
  return smallest_face_containing(to_rat_vec(x));
}

const SupportingFunctional& Polytope::supporting_functional(std::size_t face_id) const {
  return lattice_.face(face_id).functional;
}

std::vector<std::size_t> Polytope::points_on_face(std::size_t face_id,
                                                  const std::vector<IntVec>& points) const {
  const SupportingFunctional& w = supporting_functional(face_id);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (w.value(points[i]) == 1) out.push_back(i);
  return out;
}

RatVec Polytope::relint_combination(const std::vector<std::size_t>& vertex_set,
                                    const RatVec& x) const {
  std::size_t m = vertex_set.size();
  if (m == 1) {
    const IntVec& v = vertices_[vertex_set[0]];
    for (std::size_t j = 0; j < dim_; ++j)
      if (x[j] != Rat(v[j])) throw std::logic_error("combination walk missed a vertex");
    return RatVec{Rat(1)};
  }
  RatVec bary(dim_, Rat(0));
  for (std::size_t vi : vertex_set)
    for (std::size_t j = 0; j < dim_; ++j) bary[j] += Rat(vertices_[vi][j]);
  for (std::size_t j = 0; j < dim_; ++j) bary[j] /= Rat(m);
  if (bary == x) return RatVec(m, Rat(1) / Rat(m));

  // Shoot the ray from the barycenter through x until it leaves through a
  // facet that does not contain the current face, then recurse on the face
  // hit there.
  std::optional<Rat> t_exit;
  for (const auto& f : facets_) {
    Rat db = f.value(bary);
    Rat dx = f.value(x);
    if (dx <= db) continue;
    Rat t = (Rat(1) - db) / (dx - db);
    if (!t_exit || t < *t_exit) t_exit = t;
  }
  if (!t_exit || *t_exit <= 1)
    throw std::invalid_argument("point is not in the relative interior of the face");
  RatVec z(dim_);
  for (std::size_t j = 0; j < dim_; ++j) z[j] = bary[j] + *t_exit * (x[j] - bary[j]);
  auto sub_id = smallest_face_containing(z);
  if (!sub_id) throw std::logic_error("ray exit point is interior");
  const std::vector<std::size_t>& sub_set = lattice_.face(*sub_id).vertex_indices;
  RatVec cz = relint_combination(sub_set, z);

  Rat lambda = Rat(1) / *t_exit;
  Rat base = (Rat(1) - lambda) / Rat(m);
  RatVec out(m, base);
  for (std::size_t k = 0; k < sub_set.size(); ++k) {
    auto pos = std::lower_bound(vertex_set.begin(), vertex_set.end(), sub_set[k]);
    if (pos == vertex_set.end() || *pos != sub_set[k])
      throw std::logic_error("subface vertex escaped the face");
    out[static_cast<std::size_t>(pos - vertex_set.begin())] += lambda * cz[k];
  }
  return out;
}

RatVec Polytope::positive_combination(std::optional<std::size_t> face_id, const RatVec& x) const {
  auto minimal = smallest_face_containing(x);
  std::vector<std::size_t> vertex_set;
  if (face_id) {
    if (!minimal || *minimal != *face_id)
      throw std::invalid_argument("point is not in the relative interior of the face");
    vertex_set = lattice_.face(*face_id).vertex_indices;
  } else {
    if (minimal) throw std::invalid_argument("point is not interior");
    vertex_set.resize(vertices_.size());
    for (std::size_t i = 0; i < vertex_set.size(); ++i) vertex_set[i] = i;
  }
  RatVec coeffs = relint_combination(vertex_set, x);
  // The construction guarantees strictly positive exact coefficients; check.
  Rat total = 0;
  RatVec recon(dim_, Rat(0));
  for (std::size_t k = 0; k < vertex_set.size(); ++k) {
    if (coeffs[k] <= 0) throw std::logic_error("combination coefficient not positive");
    total += coeffs[k];
    for (std::size_t j = 0; j < dim_; ++j)
      recon[j] += coeffs[k] * Rat(vertices_[vertex_set[k]][j]);
  }
  if (total != 1 || recon != x) throw std::logic_error("combination does not reproduce the point");
  return coeffs;
}

Polytope convex_hull(const std::vector<IntVec>& points) {
  if (points.empty()) throw DegenerateInputError("no points given");
  std::size_t n = points.front().size();
  if (n == 0) throw DegenerateInputError("points have dimension zero");
  for (const auto& p : points)
    if (p.size() != n) throw DegenerateInputError("points of mixed dimension");

  std::vector<IntVec> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::size_t arank = affine_rank(pts);
  if (arank < n) {
    std::ostringstream msg;
    msg << "points affinely span only " << arank << " of " << n << " dimensions";
    throw DegenerateInputError(msg.str());
  }

  // Hyperplane through each affinely independent n-subset; keep the ones
  // with every point on one side.
  std::set<RatVec> seen;
  std::vector<SupportingFunctional> facets;
  std::size_t count = pts.size();

  auto consider = [&](const std::vector<std::size_t>& subset) {
    RatRows rows;
    for (std::size_t idx : subset) {
      RatVec r(n + 1);
      for (std::size_t j = 0; j < n; ++j) r[j] = Rat(pts[idx][j]);
      r[n] = Rat(-1);
      rows.push_back(std::move(r));
    }
    std::vector<RatVec> null = rat_nullspace(rows, n + 1);
    if (null.size() != 1) return;
    RatVec a(null[0].begin(), null[0].begin() + n);
    Rat b = null[0][n];
    int side = 0;  // -1: some point below, +1: some point above
    for (const auto& p : pts) {
      Rat v = rat_dot(a, p) - b;
      if (v > 0) {
        if (side < 0) return;
        side = 1;
      } else if (v < 0) {
        if (side > 0) return;
        side = -1;
      }
    }
    if (side == 0) return;  // all points on the hyperplane; not full-dim
    if (side > 0) {
      for (auto& c : a) c = -c;
      b = -b;
    }
    if (b <= 0) throw DegenerateInputError("origin is not interior to the hull");
    RatVec w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = a[j] / b;
    if (seen.insert(w).second) facets.push_back(SupportingFunctional{w});
  };

  // Enumerate n-subsets of the deduplicated points.
  std::vector<std::size_t> idx(n);
  if (count >= n) {
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      consider(idx);
      std::size_t k = n;
      while (k > 0) {
        --k;
        if (idx[k] + (n - k) < count) break;
        if (k == 0) {
          k = n;
          break;
        }
      }
      if (k == n) break;
      ++idx[k];
      for (std::size_t i = k + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  if (facets.empty()) throw DegenerateInputError("hull has no supporting facets");
  std::sort(facets.begin(), facets.end(),
            [](const SupportingFunctional& f, const SupportingFunctional& g) { return f.w < g.w; });

  Polytope P;
  P.dim_ = n;
  P.facets_ = facets;

  // A point is a vertex exactly when its tight facet normals span R^n.
  std::vector<IntVec> verts;
  for (const auto& p : pts) {
    RatRows normals;
    for (const auto& f : facets)
      if (f.value(p) == 1) normals.push_back(f.w);
    if (!normals.empty() && rat_rank(normals) == n) verts.push_back(p);
  }
  std::sort(verts.begin(), verts.end());
  P.vertices_ = verts;

  P.facet_vertices_.resize(facets.size());
  for (std::size_t j = 0; j < facets.size(); ++j) {
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (facets[j].value(verts[i]) == 1) P.facet_vertices_[j].push_back(i);
  }

  // Proper faces: close the facet vertex sets under intersection.
  std::set<std::vector<std::size_t>> face_sets(P.facet_vertices_.begin(),
                                               P.facet_vertices_.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> snapshot(face_sets.begin(), face_sets.end());
    for (std::size_t a = 0; a < snapshot.size(); ++a)
      for (std::size_t b = a + 1; b < snapshot.size(); ++b) {
        auto inter = sorted_intersection(snapshot[a], snapshot[b]);
        if (inter.empty()) continue;
        if (face_sets.insert(inter).second) grew = true;
      }
  }

  std::vector<Face> faces;
  for (const auto& vset : face_sets) {
    Face f;
    f.vertex_indices = vset;
    std::vector<IntVec> coords;
    for (std::size_t vi : vset) coords.push_back(verts[vi]);
    f.dimension = affine_rank(coords);
    RatVec w(n, Rat(0));
    std::size_t through = 0;
    for (std::size_t j = 0; j < facets.size(); ++j) {
      if (!std::includes(P.facet_vertices_[j].begin(), P.facet_vertices_[j].end(), vset.begin(),
                         vset.end()))
        continue;
      ++through;
      for (std::size_t c = 0; c < n; ++c) w[c] += facets[j].w[c];
    }
    for (std::size_t c = 0; c < n; ++c) w[c] /= Rat(through);
    f.functional = SupportingFunctional{w};
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertex_indices < b.vertex_indices;
  });
  P.lattice_.faces_ = std::move(faces);
  return P;
}

}  // namespace cayley
