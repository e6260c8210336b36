// Acceptance run: one PASS/FAIL line per criterion.

#include "commands.hpp"
#include "groups.hpp"
#include "hyperrefl/hyperboloid.hpp"
#include "hyperrefl/kernels.hpp"
#include "hyperrefl/poincare.hpp"
#include "hyperrefl/reflength.hpp"
#include "hyperrefl/tessellation.hpp"
#include "oracles/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace hyperrefl;
using hyperboloid::Hyperplane;
using hyperboloid::PairKind;
using poincare::GSphere;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += " over time budget";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s %s (%.2fs, budget %.0fs)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
              budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// --- criterion 1 ---------------------------------------------------------

Outcome kernel_invariants() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(2, 4);
  double worst_form = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int n = dim(rng);
    const Hyperplane h{oracle::random_normal(rng, n)};
    const Vector x = oracle::random_point(rng, n);
    const Vector y = hyperboloid::reflect(h, x);
    const double scale = x.squaredNorm();
    worst_form = std::max(worst_form, std::abs(lorentz::form(y, y) - lorentz::form(x, x)) / scale);
    worst_inv = std::max(worst_inv, (hyperboloid::reflect(h, y) - x).norm() / std::sqrt(scale));
  }
  double worst_iinv = 0.0, worst_sphere = 0.0;
  int left_ball = 0;
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(0.0, 0.999);
  for (int i = 0; i < 10000; ++i) {
    const int n = dim(rng);
    const GSphere s = poincare::hyperplane_to_gsphere(Hyperplane{oracle::random_normal(rng, n)});
    Vector dir(n);
    for (int k = 0; k < n; ++k) dir[k] = gauss(rng);
    dir.normalize();
    const Vector inner = radius(rng) * dir;
    if (!s.is_plane() && (inner - s.center).norm() < 1e-6) continue;
    const Vector img = poincare::invert(s, inner);
    worst_iinv = std::max(worst_iinv, (poincare::invert(s, img) - inner).norm());
    left_ball += img.norm() >= 1.0;
    worst_sphere = std::max(worst_sphere, std::abs(poincare::invert(s, Vector(dir)).norm() - 1.0));
  }
  const bool pass = worst_form < 1e-10 && worst_inv < 1e-10 && worst_iinv < 1e-10 && worst_sphere < 1e-10 &&
                    left_ball == 0;
  return {pass, "reflect form " + fmt("%.1e", worst_form) + " involution " + fmt("%.1e", worst_inv) +
                    "; invert involution " + fmt("%.1e", worst_iinv) + " sphere " + fmt("%.1e", worst_sphere) +
                    " left_ball " + std::to_string(left_ball)};
}

// --- criterion 2 ---------------------------------------------------------

/// Orthonormal basis of the complement of the unit vector x.
Matrix tangent_basis(const Vector& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd m(n, 1);
  m.col(0) = x;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

/// Signed residuals of u1, u2 against span{(x1, 1), (x2, 1)}.
Eigen::VectorXd span_residuals(const Vector& u1, const Vector& u2, const Vector& x1, const Vector& x2) {
  const Vector n1 = oracle::null_vector(x1), n2 = oracle::null_vector(x2);
  const double f12 = oracle::mform(n1, n2);
  const int d = static_cast<int>(u1.size());
  Eigen::VectorXd r(2 * d);
  const Vector r1 = u1 - (oracle::mform(u1, n2) / f12) * n1 - (oracle::mform(u1, n1) / f12) * n2;
  const Vector r2 = u2 - (oracle::mform(u2, n2) / f12) * n1 - (oracle::mform(u2, n1) / f12) * n2;
  r.head(d) = r1;
  r.tail(d) = r2;
  return r;
}

/// Gauss-Newton on the endpoint pair; returns true with the endpoints when
/// both normals end up in the span.
bool solve_perpendicular(const Vector& u1, const Vector& u2, Vector& x1, Vector& x2) {
  const int n = static_cast<int>(x1.size());
  for (int it = 0; it < 60; ++it) {
    if ((x1 - x2).norm() < 1e-4) return false;
    const Eigen::VectorXd r = span_residuals(u1, u2, x1, x2);
    if (r.norm() < 1e-12) return true;
    const Matrix t1 = tangent_basis(x1), t2 = tangent_basis(x2);
    Eigen::MatrixXd jac(r.size(), 2 * (n - 1));
    const double h = 1e-7;
    for (int k = 0; k < n - 1; ++k) {
      const Vector p1 = (x1 + h * t1.col(k)).normalized();
      const Vector p2 = (x2 + h * t2.col(k)).normalized();
      jac.col(k) = (span_residuals(u1, u2, p1, x2) - r) / h;
      jac.col(n - 1 + k) = (span_residuals(u1, u2, x1, p2) - r) / h;
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return false;
    x1 = (x1 + t1 * step.head(n - 1)).normalized();
    x2 = (x2 + t2 * step.tail(n - 1)).normalized();
  }
  return span_residuals(u1, u2, x1, x2).norm() < 1e-10;
}

Outcome cross_model() {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> gauss;
  double worst_end = 0.0, worst_angle = 0.0, worst_identity = 0.0;
  int pairs = 0, converged = 0, second = 0;
  for (int n : {2, 3}) {
    const int count = n == 2 ? 500 : 100;
    for (int p = 0; p < count; ++p) {
      const auto [u1, u2] = oracle::random_ultra_pair(rng, n, 1e-3);
      const Hyperplane h1{u1}, h2{u2};
      const auto line = hyperboloid::common_perpendicular(h1, h2);
      const auto ends = hyperboloid::geodesic_endpoints(line);
      const Vector e1 = poincare::to_boundary(ends.first), e2 = poincare::to_boundary(ends.second);
      const auto ep = poincare::euclid_common_perpendicular(poincare::hyperplane_to_gsphere(h1),
                                                            poincare::hyperplane_to_gsphere(h2));
      worst_end = std::max(worst_end, std::max((e1 - ep.ia).norm(), (e2 - ep.ib).norm()));
      worst_angle = std::max({worst_angle, hyperboloid::right_angle_residual(line, h1),
                              hyperboloid::right_angle_residual(line, h2), ep.angle_residual_a,
                              ep.angle_residual_b});
      worst_identity = std::max(worst_identity, ep.identity_residual);
      for (int c = 0; c < 200; ++c) {
        const double spread = c < 100 ? 0.3 : 2.0;
        Vector x1 = e1, x2 = e2;
        for (int k = 0; k < n; ++k) {
          x1[k] += spread * gauss(rng);
          x2[k] += spread * gauss(rng);
        }
        x1.normalize();
        x2.normalize();
        if (!solve_perpendicular(u1, u2, x1, x2)) continue;
        ++converged;
        const double same = std::max((x1 - e1).norm(), (x2 - e2).norm());
        const double swapped = std::max((x1 - e2).norm(), (x2 - e1).norm());
        if (std::min(same, swapped) > 1e-6) ++second;
      }
      ++pairs;
    }
  }
  const bool pass = worst_end < 1e-6 && worst_angle < 1e-8 && worst_identity < 1e-9 && second == 0;
  return {pass, std::to_string(pairs) + " pairs endpoints " + fmt("%.1e", worst_end) + " right_angle " +
                    fmt("%.1e", worst_angle) + " identity " + fmt("%.1e", worst_identity) + "; candidates " +
                    std::to_string(pairs * 200) + " converged " + std::to_string(converged) + " distinct " +
                    std::to_string(second)};
}

// --- criterion 3 ---------------------------------------------------------

Outcome dbar() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> dim(2, 3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [u1, u2] = oracle::random_ultra_pair(rng, dim(rng), 1e-3);
    const double d = hyperboloid::hyperplane_distance(Hyperplane{u1}, Hyperplane{u2});
    worst = std::max(worst, std::abs(d - std::acosh(std::abs(oracle::mform(u1, u2)))));
  }
  return {worst < 1e-8, "1000 pairs max |d - arccosh| " + fmt("%.1e", worst)};
}

// --- criterion 4 ---------------------------------------------------------

Outcome reflection_length() {
  using namespace coxeter;
  size_t compared = 0;
  int mismatches = 0, parity = 0;
  for (const ReflectionGroup* g : {&testgroups::tri344(), &testgroups::tri23inf()}) {
    const reflength::ReflectionLengthOracle orc(*g, 8);
    const auto elems = enumerate_elements(*g, 8);
    const auto dyer = kernels::reflection_lengths_parallel(*g, elems);
    for (size_t i = 0; i < elems.size(); ++i) {
      mismatches += orc.length(elems[i]) != dyer[i];
      parity += (dyer[i] - elems[i].length()) % 2 != 0;
      ++compared;
    }
  }
  std::mt19937_64 rng(404);
  int step_fail = 0;
  for (const ReflectionGroup* g : {&testgroups::tri344(), &testgroups::tri23inf()}) {
    const auto elems = enumerate_elements(*g, 6);
    const auto refl = enumerate_reflections(*g, 3);
    std::uniform_int_distribution<size_t> pe(0, elems.size() - 1), pr(0, refl.size() - 1);
    for (int i = 0; i < 250; ++i) step_fail += !reflength::step_property(*g, elems[pe(rng)], refl[pr(rng)]).holds();
  }
  const auto ball = enumerate_elements(testgroups::tri344(), 10);
  const auto lr = kernels::reflection_lengths_parallel(testgroups::tri344(), ball);
  const int max_lr = *std::max_element(lr.begin(), lr.end());
  const bool pass = mismatches == 0 && parity == 0 && step_fail == 0 && max_lr > 2;
  return {pass, std::to_string(compared) + " elements, mismatches " + std::to_string(mismatches) + " parity " +
                    std::to_string(parity) + "; step 500 pairs failures " + std::to_string(step_fail) +
                    "; max l_R (l_S <= 10) " + std::to_string(max_lr)};
}

// --- criterion 5 ---------------------------------------------------------

Outcome shrink() {
  std::string detail;
  bool pass = true;
  {
    const auto& g = testgroups::tri23inf();
    const GSphere s1 = poincare::hyperplane_to_gsphere(g.wall(1));
    const GSphere s2 = poincare::hyperplane_to_gsphere(g.wall(2));
    const auto seq = poincare::shrink_parallel(s1, s2, 25);
    bool decreasing = true;
    double orth = 0.0, through = 0.0;
    for (size_t i = 0; i < seq.steps.size(); ++i) {
      const auto& st = seq.steps[i];
      if (i > 0) decreasing = decreasing && st.log_radius < seq.steps[i - 1].log_radius;
      orth = std::max(orth, std::abs(st.sphere.orthogonality_defect()));
      through = std::max(through, std::abs(st.sphere.signed_distance(seq.limit)));
    }
    const double ratio = std::exp(seq.steps.back().log_radius - seq.steps.front().log_radius);
    pass = pass && decreasing && ratio < 1e-3 && orth < 1e-9 && through < 1e-7;
    detail += "parallel ratio " + fmt("%.1e", ratio) + " orth " + fmt("%.1e", orth) + " through_xi " +
              fmt("%.1e", through);
  }
  {
    const auto& g = testgroups::universal();
    const GSphere s1 = poincare::hyperplane_to_gsphere(g.wall(0));
    const GSphere s2 = poincare::hyperplane_to_gsphere(g.wall(1));
    const auto seq = poincare::shrink_ultraparallel(s1, s2, 25);
    bool decreasing = true;
    double orth = 0.0;
    for (size_t i = 0; i < seq.steps.size(); ++i) {
      const auto& st = seq.steps[i];
      if (i > 0) decreasing = decreasing && st.log_radius < seq.steps[i - 1].log_radius;
      orth = std::max(orth, std::abs(st.sphere.orthogonality_defect()));
    }
    const auto& last = seq.steps.back();
    const double gap = std::max((last.sphere.center - seq.limit).norm(), (last.x_hat - seq.limit).norm());
    const double log_ratio = last.log_radius - seq.steps.front().log_radius;
    pass = pass && decreasing && log_ratio < std::log(1e-3) && orth < 1e-9 && gap < 1e-3;
    detail += "; ultra log ratio " + fmt("%.3g", log_ratio) + " orth " + fmt("%.1e", orth) + " final gap " +
              fmt("%.1e", gap);
  }
  return {pass, detail};
}

// --- criterion 6 ---------------------------------------------------------

Outcome theorem1() {
  using namespace tessellation;
  std::string detail;
  bool pass = true;
  auto run = [&](const ReflectionGroup& g, CatalogRef ref, int kmax, const char* label) {
    const auto cat = build_boundary_catalog(g, 0);
    const poincare::ConeNbhd u(catalog_point(cat, ref).point, 2.0, 0.25);
    detail += std::string(detail.empty() ? "" : "; ") + label;
    for (int k = 1; k <= kmax; ++k) {
      const SearchCaps caps;
      const Theorem1Result res = theorem1_search(g, cat, ref, u, k, caps);
      const bool ok = res.found && reflength::reflection_length_dyer(g, res.tile.element) == k &&
                      tile_in_nbhd(res.tile, u, 4 * caps.samples);
      pass = pass && ok;
      detail += " k" + std::to_string(k) + (ok ? ":l_S=" + std::to_string(res.tile.l_s) : ":miss");
    }
  };
  run(testgroups::tri23inf(), CatalogRef{CatalogRef::Set::Tangency, 0}, 5, "tri-2-3-inf ip:0");
  run(testgroups::universal(), CatalogRef{CatalogRef::Set::Perpendicular, 0}, 4, "universal pu:0");
  return {pass, detail};
}

// --- criterion 7 ---------------------------------------------------------

Outcome density() {
  std::string detail = "max gap";
  bool pass = true;
  double prev = 1e300, first = 0.0, last = 0.0;
  for (int L : {2, 4, 6, 8}) {
    const auto rep = tessellation::density_probe(testgroups::tri344(), L, 360);
    pass = pass && rep.max_gap <= prev;
    prev = rep.max_gap;
    if (L == 2) first = rep.max_gap;
    last = rep.max_gap;
    detail += " L" + std::to_string(L) + "=" + fmt("%.4f", rep.max_gap);
  }
  return {pass && last < first, detail};
}

// --- criterion 8 ---------------------------------------------------------

Outcome counterexample() {
  const auto& g = testgroups::universal();
  std::vector<double> eps;
  for (int i = 0; i < 5; ++i) eps.push_back(2.0 / (1 << i));
  const auto rep = tessellation::counterexample_probe(g, coxeter::word_element(g, {0}), eps, 1.0, 8);
  bool nested = true;
  std::string detail;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    if (i > 0)
      for (int v : row.values) nested = nested && rep.rows[i - 1].values.count(v);
    detail += (i ? " " : "") + fmt("%g", row.eps) + ":{";
    bool firstv = true;
    for (int v : row.values) {
      detail += (firstv ? "" : ",") + std::to_string(v);
      firstv = false;
    }
    detail += "}";
  }
  const bool pass = nested && rep.rows.back().values == std::set<int>{1};
  return {pass, detail};
}

// --- criterion 9 ---------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome tessellation_bijection() {
  bool pass = true;
  for (int L = 0; L <= 6; ++L) {
    pass = pass && tessellation::generate_tiles(testgroups::tri344(), L).size() ==
                       static_cast<size_t>(testgroups::kCount344[L]) &&
           coxeter::enumerate_elements(testgroups::tri344(), L).size() ==
               static_cast<size_t>(testgroups::kCount344[L]);
    pass = pass && tessellation::generate_tiles(testgroups::tri23inf(), L).size() ==
                       static_cast<size_t>(testgroups::kCount23inf[L]) &&
           coxeter::enumerate_elements(testgroups::tri23inf(), L).size() ==
               static_cast<size_t>(testgroups::kCount23inf[L]);
  }
  const auto dir = std::filesystem::temp_directory_path();
  bool identical = true;
  for (const char* spec : {"tri-3-4-4", "tri-2-3-inf"}) {
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / ("hyperrefl_accept_" + std::string(spec) + "_" + std::to_string(run) + ".svg");
      std::ostringstream out, err;
      if (cli::run({"tessellate", spec, "6", path.string()}, out, err) != 0) return {false, err.str()};
      bytes[run] = slurp(path);
    }
    identical = identical && !bytes[0].empty() && bytes[0] == bytes[1];
  }
  return {pass && identical, std::string("counts L<=6 ") + (pass ? "match" : "differ") + "; svg runs " +
                                 (identical ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  criterion(1, 10, kernel_invariants);
  criterion(2, 60, cross_model);
  criterion(3, 60, dbar);
  criterion(4, 300, reflection_length);
  criterion(5, 60, shrink);
  criterion(6, 300, theorem1);
  criterion(7, 300, density);
  criterion(8, 300, counterexample);
  criterion(9, 300, tessellation_bijection);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
