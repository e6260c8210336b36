// SPDX-License-Identifier: Apache-2.0
// Serial vs OpenMP timings for the kernels in hyperrefl/kernels.hpp.

#include "hyperrefl/coxeter.hpp"
#include "hyperrefl/kernels.hpp"

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace hyperrefl;
using namespace hyperrefl::coxeter;

namespace {

CoxeterSpec triangle(const char* name, CoxeterLabel a, CoxeterLabel b, CoxeterLabel c) {
  CoxeterSpec s(3, name);
  s.set(0, 1, a);
  s.set(0, 2, b);
  s.set(1, 2, c);
  return s;
}

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, int reps, const std::function<void()>& serial, const std::function<void()>& parallel) {
  const double s = best_of(reps, serial);
  const double p = best_of(reps, parallel);
  std::printf("%-22s %12.3f %12.3f %8.2fx\n", name, 1e3 * s, 1e3 * p, s / p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperrefl kernel benchmark"};
  int depth = 10;
  int reps = 3;
  int threads = 0;
  app.add_option("--depth", depth, "enumeration depth for the workloads")->check(CLI::Range(2, 14));
  app.add_option("--reps", reps, "repetitions per timing (best is reported)")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
  CLI11_PARSE(app, argc, argv);
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  const ReflectionGroup g = build_group(triangle("tri-3-4-4", CoxeterLabel::finite(3), CoxeterLabel::finite(4),
                                                 CoxeterLabel::finite(4)));
  const auto elems = enumerate_elements(g, depth);
  std::vector<Element> layer;
  for (const auto& e : elems)
    if (e.length() == depth) layer.push_back(e);
  const auto expanded = kernels::expand_layer_serial(g, layer);
  const auto refl = enumerate_reflections(g, depth / 2);
  Word longest = elems.back().word;

  std::printf("threads=%d depth=%d elements=%zu layer=%zu reflections=%zu\n", kernels::max_threads(), depth,
              elems.size(), layer.size(), refl.size());
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial_ms", "parallel_ms", "speedup");
  row("expand_layer", reps, [&] { kernels::expand_layer_serial(g, layer); },
      [&] { kernels::expand_layer_parallel(g, layer); });
  row("canonicalize", reps, [&] { kernels::canonicalize_serial(g, expanded); },
      [&] { kernels::canonicalize_parallel(g, expanded); });
  row("dyer_level", reps,
      [&] {
        for (int p = longest.size() % 2; p <= 6; p += 2) kernels::dyer_level_serial(g, longest, p);
      },
      [&] {
        for (int p = longest.size() % 2; p <= 6; p += 2) kernels::dyer_level_parallel(g, longest, p);
      });
  row("reflection_lengths", reps, [&] { kernels::reflection_lengths_serial(g, elems); },
      [&] { kernels::reflection_lengths_parallel(g, elems); });
  row("disjoint_pairs", reps, [&] { kernels::disjoint_pairs_serial(refl); },
      [&] { kernels::disjoint_pairs_parallel(refl); });
  return 0;
}
