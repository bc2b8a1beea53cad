// Times the serial reference against the parallel path on the two hot
// kernels and cross-checks that both produce the same bits. Run with
// --quick for a smoke-sized pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "vexl/kernels.hpp"

using namespace vexl::kernels;
using clock_type = std::chrono::steady_clock;

namespace {

struct Arrays {
  std::vector<double> v, p, q, m;
};

Arrays make_arrays(std::size_t n) {
  std::mt19937_64 eng(20240817);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_real_distribution<double> expo(1.2, 4.5);
  std::uniform_real_distribution<double> meas(0.01, 1.0);
  Arrays a;
  a.v.resize(n);
  a.p.resize(n);
  a.q.resize(n);
  a.m.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.v[i] = value(eng);
    a.p[i] = expo(eng);
    a.q[i] = expo(eng);
    a.m[i] = meas(eng);
  }
  return a;
}

template <typename F>
double time_reps(int reps, double& sink, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = clock_type::now();
    sink += f();
    const double s =
        std::chrono::duration<double>(clock_type::now() - start).count();
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;
  }

  const std::size_t n = quick ? (parallel_threshold * 2) : (1u << 22);
  const int reps = quick ? 2 : 5;
  const Arrays a = make_arrays(n);
  double sink = 0.0;

  std::printf("cells %zu, best of %d runs\n", n, reps);

  const double t_serial = time_reps(reps, sink, [&] {
    return modular_sum(a.v, a.p, a.m, 0.83, Exec::Serial);
  });
  const double t_parallel = time_reps(reps, sink, [&] {
    return modular_sum(a.v, a.p, a.m, 0.83, Exec::Parallel);
  });
  std::printf("modular_sum          serial %8.2f Mcell/s   parallel %8.2f Mcell/s   speedup %.2fx\n",
              n / t_serial / 1e6, n / t_parallel / 1e6, t_serial / t_parallel);

  const double s_serial = time_reps(reps, sink, [&] {
    return scaled_modular_sum(a.v, a.p, a.q, a.m, 1.1, 3.7, Exec::Serial);
  });
  const double s_parallel = time_reps(reps, sink, [&] {
    return scaled_modular_sum(a.v, a.p, a.q, a.m, 1.1, 3.7, Exec::Parallel);
  });
  std::printf("scaled_modular_sum   serial %8.2f Mcell/s   parallel %8.2f Mcell/s   speedup %.2fx\n",
              n / s_serial / 1e6, n / s_parallel / 1e6, s_serial / s_parallel);

  // The two paths must agree exactly, not approximately: accumulation
  // order is fixed, so any difference is a bug.
  const double d1 =
      std::fabs(modular_sum(a.v, a.p, a.m, 0.83, Exec::Serial) -
                modular_sum(a.v, a.p, a.m, 0.83, Exec::Parallel));
  const double d2 = std::fabs(
      scaled_modular_sum(a.v, a.p, a.q, a.m, 1.1, 3.7, Exec::Serial) -
      scaled_modular_sum(a.v, a.p, a.q, a.m, 1.1, 3.7, Exec::Parallel));
  std::printf("max |serial - parallel|: %g\n", std::max(d1, d2));
  if (d1 != 0.0 || d2 != 0.0) {
    std::printf("FAIL: execution paths disagree\n");
    return 1;
  }

  (void)sink;
  return 0;
}
