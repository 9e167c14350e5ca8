#include "symrigid/forced.hpp"

#include "symrigid/error.hpp"

#include <string>

namespace symrigid {

namespace {

Layout layout_for(const Framework& fw) {
  return std::visit([](const auto& f) { return layout_of(f); }, fw);
}

void require_symmetric(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action) {
  if (!validate_symmetric(fw, group, action)) {
    throw Error(ErrorCode::NotSymmetric, "framework is not symmetric under the given action");
  }
}

std::string vertex_label(int orbit, int coord) {
  return "v" + std::to_string(orbit) + "." + std::to_string(coord);
}

}  // namespace

Matrix symmetric_velocity_basis(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action,
                                const TolerancePolicy& tol) {
  require_symmetric(fw, group, action);
  const Layout lay = layout_for(fw);
  const auto* ph = std::get_if<PHFramework>(&fw);
  BlockFn block = [&](int g, int v) -> Matrix {
    const Matrix& t = group.rep(g);
    if (ph && ph->is_hyperplane(v)) {
      const int d = ph->d;
      Matrix b = Matrix::Zero(d + 1, d + 1);
      b.topLeftCorner(d, d) = t;
      b(d, d) = 1.0;
      return hyperplane_sign(*ph, group, action, g, v) * b;
    }
    return t;
  };
  const Matrix p = symmetrize_projector(action, lay.size, block);
  // symmetrize_projector builds the layout in vertex order; PH columns put
  // points first, so permute into the framework layout.
  Matrix perm = Matrix::Zero(lay.total, lay.total);
  const auto vertex_off = block_offsets(lay.size);
  for (std::size_t v = 0; v < lay.size.size(); ++v)
    for (int c = 0; c < lay.size[v]; ++c) perm(lay.offset[v] + c, vertex_off[v] + c) = 1.0;
  return range_basis(perm * p * perm.transpose(), tol);
}

ForcedReport forced_rigidity(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action,
                             const TolerancePolicy& tol) {
  const Matrix b = symmetric_velocity_basis(fw, group, action, tol);
  const Matrix r = rigidity_matrix(fw);
  ForcedReport rep;
  rep.symmetric_dim = static_cast<int>(b.cols());
  rep.restricted_rank = rank(r * b, tol);
  rep.forced_nullity = rep.symmetric_dim - rep.restricted_rank;
  const TrivialMotions triv = trivial_motion_basis(fw);
  rep.trivial_symmetric_dim = static_cast<int>(intersect(triv.basis, b, tol).cols());
  rep.forced_rigid = rep.forced_nullity == rep.trivial_symmetric_dim;
  return rep;
}

OrbitMatrix orbit_matrix_spherical(const SphericalFramework& fw, const SymmetryGroup& group,
                                   const std::vector<Perm>& action) {
  require_symmetric(fw, group, action);
  SymmetricGraph sg{fw.graph, group, action};
  OrbitMatrix om;
  om.quotient = quotient_gain_graph(sg, &om.map);
  const int w = fw.d + 1;
  const int n0 = om.quotient.n;
  const int m0 = om.quotient.num_edges();
  om.matrix = Matrix::Zero(m0 + n0, w * n0);
  const auto& reps = om.map.representative;
  for (int e = 0; e < m0; ++e) {
    const GainEdge& ge = om.quotient.edges[e];
    const Matrix& t = group.rep(ge.gain);
    const Vector& pi = fw.p[reps[ge.tail]];
    const Vector& pj = fw.p[reps[ge.head]];
    if (ge.is_loop()) {
      om.matrix.block(e, w * ge.tail, 1, w) = ((t + t.transpose()) * pi).transpose();
    } else {
      om.matrix.block(e, w * ge.tail, 1, w) = (t * pj).transpose();
      om.matrix.block(e, w * ge.head, 1, w) = (t.transpose() * pi).transpose();
    }
    om.row_labels.push_back("edge(" + std::to_string(ge.tail) + "," + std::to_string(ge.head) + ";g" +
                            std::to_string(ge.gain) + ")");
  }
  for (int i = 0; i < n0; ++i) {
    om.matrix.block(m0 + i, w * i, 1, w) = fw.p[reps[i]].transpose();
    om.row_labels.push_back("norm(" + std::to_string(i) + ")");
  }
  for (int i = 0; i < n0; ++i)
    for (int c = 0; c < w; ++c) om.col_labels.push_back(vertex_label(i, c));
  return om;
}

OrbitMatrix orbit_matrix_ph(const PHFramework& fw_in, const SymmetryGroup& group, const std::vector<Perm>& action) {
  require_symmetric(fw_in, group, action);
  const PHFramework fw = normalize_hyperplane_signs(fw_in, group, action);
  SymmetricGraph sg{fw.graph, group, action};
  OrbitMatrix om;
  om.quotient = quotient_gain_graph(sg, &om.map);
  const int d = fw.d;
  const int n0 = om.quotient.n;
  const auto& reps = om.map.representative;
  // Column layout over orbits: point orbits first.
  std::vector<int> off(n0), hyper;
  int col = 0;
  for (int i = 0; i < n0; ++i)
    if (!fw.is_hyperplane(reps[i])) {
      off[i] = col;
      col += d;
      for (int c = 0; c < d; ++c) om.col_labels.push_back(vertex_label(i, c));
    }
  for (int i = 0; i < n0; ++i)
    if (fw.is_hyperplane(reps[i])) {
      off[i] = col;
      col += d + 1;
      hyper.push_back(i);
      for (int c = 0; c <= d; ++c) om.col_labels.push_back(vertex_label(i, c));
    }
  const int m0 = om.quotient.num_edges();
  om.matrix = Matrix::Zero(m0 + static_cast<int>(hyper.size()), col);
  for (int e = 0; e < m0; ++e) {
    const GainEdge& ge = om.quotient.edges[e];
    const Matrix& t = group.rep(ge.gain);
    const int i = ge.tail, j = ge.head;
    const Vector& ci = fw.coord[reps[i]];
    const Vector& cj = fw.coord[reps[j]];
    const bool hi = fw.is_hyperplane(reps[i]), hj = fw.is_hyperplane(reps[j]);
    auto put = [&](int orbit, const Vector& v) { om.matrix.block(e, off[orbit], 1, d) += v.transpose(); };
    if (!hi && !hj) {
      if (ge.is_loop()) {
        put(i, (2.0 * Matrix::Identity(d, d) - t - t.transpose()) * ci);
      } else {
        put(i, ci - t * cj);
        put(j, cj - t.transpose() * ci);
      }
    } else if (hi && hj) {
      if (ge.is_loop()) {
        put(i, (t + t.transpose()) * ci);
      } else {
        put(i, t * cj);
        put(j, t.transpose() * ci);
      }
    } else if (!hi) {
      // point i, hyperplane j at gain t
      put(i, t * cj);
      put(j, t.transpose() * ci);
      om.matrix(e, off[j] + d) = 1.0;
    } else {
      // hyperplane i, point j at gain t
      put(i, t * cj);
      put(j, t.transpose() * ci);
      om.matrix(e, off[i] + d) = 1.0;
    }
    om.row_labels.push_back("edge(" + std::to_string(i) + "," + std::to_string(j) + ";g" +
                            std::to_string(ge.gain) + ")");
  }
  for (std::size_t h = 0; h < hyper.size(); ++h) {
    const int i = hyper[h];
    om.matrix.block(m0 + static_cast<int>(h), off[i], 1, d) = fw.coord[reps[i]].transpose();
    om.row_labels.push_back("norm(" + std::to_string(i) + ")");
  }
  return om;
}

RegularSample sample_regular(const SymmetricGraph& sg, Space space, int d, const std::vector<char>& special,
                             std::uint64_t seed, int trials, const TolerancePolicy& tol) {
  std::optional<RegularSample> best;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(t) + 1;
    Framework fw = sample_symmetric(sg, space, d, special, s);
    RigidityReport full = analyze(fw, {tol, false});
    ForcedReport forced = forced_rigidity(fw, sg.group, sg.action, tol);
    if (!best || full.rank + forced.restricted_rank > best->full.rank + best->forced.restricted_rank) {
      best = RegularSample{std::move(fw), full, forced, s};
    }
  }
  return *best;
}

PlanarType classify_planar(const SymmetryGroup& g, int* n) {
  if (n) *n = g.order();
  if (g.dim() != 2) return PlanarType::none;
  if (g.order() == 1) return PlanarType::identity;
  bool all_rot = true;
  for (const Matrix& m : g.reps()) all_rot &= m.determinant() > 0;
  if (g.order() == 2 && !all_rot) return PlanarType::mirror;
  if (!all_rot) return PlanarType::none;
  // A finite rotation group of the plane is cyclic.
  return PlanarType::rotation;
}

namespace {

bool plain_23_tight(const Graph& g) { return is_kl_tight(g, 2, 3); }

int single_fixed(const SymmetricGraph& sg, bool vertices) {
  const auto fc = fixed_counts(sg);
  // Cyclic groups of prime order: every non-identity element has the same
  // fixed structure, so element 1 speaks for all.
  if (fc.empty()) return 0;
  return vertices ? fc.front().fixed_vertices : fc.front().fixed_edges;
}

}  // namespace

CombinatorialVerdict combinatorial_verdict(const SymmetricGraph& sg, const VerdictContext& ctx) {
  CombinatorialVerdict out;
  out.fixed = fixed_counts(sg);
  if (ctx.d != 2) return out;
  int order = 0;
  const PlanarType type = classify_planar(sg.group, &order);
  if (type == PlanarType::none || type == PlanarType::identity) return out;
  const bool is_free = sg.free_on_vertices();
  const bool z2 = order == 2;

  if (ctx.space == Space::euclidean) {
    if (is_free) {
      const GainGraph gg = quotient_gain_graph(sg);
      out.tight_231 = has_spanning_gain_tight(gg, 2, 3, 1);
      out.predicted_forced_rigid = out.tight_231.has_value();
      out.tags.push_back(kTagCyclicForced);
      if (z2) {
        out.tight_232 = has_spanning_gain_tight(gg, 2, 3, 2);
        out.predicted_inf_rigid = out.tight_231.has_value() && out.tight_232.has_value();
        out.tags.push_back(kTagZ2Rigidity);
      }
    }
    const bool mirror = type == PlanarType::mirror;
    const bool half_turn = type == PlanarType::rotation && order == 2;
    const bool three_fold = type == PlanarType::rotation && order == 3;
    if (mirror || half_turn || three_fold) {
      bool ok = plain_23_tight(sg.graph);
      if (mirror) ok = ok && single_fixed(sg, false) == 1;
      if (half_turn) ok = ok && single_fixed(sg, true) == 0 && single_fixed(sg, false) == 1;
      if (three_fold) ok = ok && single_fixed(sg, true) == 0;
      out.predicted_isostatic = ok;
      out.tags.push_back(kTagFixedVertexIsostatic);
    }
    return out;
  }

  if (ctx.space == Space::ph) {
    const auto& hyp = ctx.hyperplanes;
    if (static_cast<int>(hyp.size()) != sg.graph.n) return out;
    int num_h = 0;
    for (char c : hyp) num_h += c != 0;
    if (type == PlanarType::mirror && is_free && num_h == 2) {
      const GainGraph gg = quotient_gain_graph(sg);
      out.tight_231 = has_spanning_gain_tight(gg, 2, 3, 1);
      out.tight_232 = has_spanning_gain_tight(gg, 2, 3, 2);
      out.predicted_forced_rigid = out.tight_231.has_value();
      out.predicted_inf_rigid = out.tight_231.has_value() && out.tight_232.has_value();
      out.tags.push_back(kTagMirrorTwoLines);
    }
    if (type == PlanarType::rotation && order == 2) {
      const Perm& p = sg.action[1];
      bool lines_fixed = true, points_free = true;
      for (int v = 0; v < sg.graph.n; ++v) {
        if (hyp[v]) lines_fixed &= p[v] == v;
        else points_free &= p[v] != v;
      }
      if (lines_fixed && points_free) {
        out.predicted_isostatic = plain_23_tight(sg.graph) && single_fixed(sg, false) == 1;
        out.tags.push_back(kTagHalfTurnFixedLines);
      }
    }
  }
  return out;
}

CombinatorialVerdict combinatorial_verdict(const GainGraph& gg, const VerdictContext& ctx) {
  return combinatorial_verdict(lift(gg), ctx);
}

}  // namespace symrigid
