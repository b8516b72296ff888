// Serial reference kernels against their OpenMP counterparts.
//
//   catkit_bench [--reps N]
//
// Prints one row per kernel and input: best wall time of each kernel over N
// repetitions, the speedup, and whether the two results agree.
#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "catkit/lifts.hpp"
#include "catkit/tree_calculus.hpp"

using namespace catkit;

namespace {

double best_of(int reps, const std::function<void()>& run) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    run();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

template <class Result>
void row(const char* kernel, const std::string& input, int reps, const std::function<Result()>& serial_run,
         const std::function<Result()>& parallel_run, const std::function<bool(const Result&, const Result&)>& same) {
  Result s, p;
  const double ts = best_of(reps, [&] { s = serial_run(); });
  const double tp = best_of(reps, [&] { p = parallel_run(); });
  std::printf("%-16s %-28s %10.4f %10.4f %8.2fx  %s\n", kernel, input.c_str(), ts, tp, ts / tp,
              same(s, p) ? "agree" : "DIFFER");
}

// Projection C x D -> C.
Functor projection(const FinCat& a, const FinCat& b) {
  const CatRef prod = share(product(a, b));
  Functor p{prod, share(a), {}, {}};
  for (int x = 0; x < prod->object_count(); ++x) p.object_map.push_back(x / b.object_count());
  for (int f = 0; f < prod->morphism_count(); ++f) p.morphism_map.push_back(f / b.morphism_count());
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catkit kernel benchmark"};
  int reps = 3;
  app.add_option("--reps", reps, "repetitions per kernel, best time reported")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("%-16s %-28s %10s %10s %9s  %s\n", "kernel", "input", "serial s", "parallel s", "speedup", "results");

  auto same_report = [](const Report& a, const Report& b) { return a.size() == b.size() && a.ok() == b.ok(); };
  for (int n : {64, 128, 256}) {
    const FinCat c = cyclic_group(n);
    row<Report>("check_category", "Z/" + std::to_string(n), reps, [&] { return serial::check_category(c); },
                [&] { return parallel::check_category(c); }, same_report);
  }
  {
    const FinCat c = product(cyclic_group(12), arrow_category(walking_arrow()));
    row<Report>("check_category", "Z/12 x arrow(arrow)", reps, [&] { return serial::check_category(c); },
                [&] { return parallel::check_category(c); }, same_report);
  }

  for (int nodes : {5, 6}) {
    const auto trees = enumerate_trees(nodes, 3);
    row<TreeCalculusResult>(
        "tree_calculus", "<= " + std::to_string(nodes) + " nodes, height 3", reps,
        [&] { return serial::check_tree_calculus(trees, 3); }, [&] { return parallel::check_tree_calculus(trees, 3); },
        [](const TreeCalculusResult& a, const TreeCalculusResult& b) { return a == b; });
  }

  auto same_lifts = [](const LiftReport& a, const LiftReport& b) {
    return a.verdict == b.verdict && a.chosen == b.chosen && a.witness == b.witness;
  };
  for (int n : {4, 8}) {
    const Functor p = projection(cyclic_group(n), product(walking_arrow(), cyclic_group(n)));
    row<LiftReport>("lifts", "Z/" + std::to_string(n) + " x (arrow x Z/" + std::to_string(n) + ")", reps,
                    [&] { return serial::cocartesian_lifts(p); }, [&] { return parallel::cocartesian_lifts(p); },
                    same_lifts);
  }
  return 0;
}
