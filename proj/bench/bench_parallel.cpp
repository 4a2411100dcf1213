// Parallel kernels against their serial references: Hecke assembly and the congruence scan.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "cchain/graph/graph.hpp"
#include "cchain/modsym/modsym.hpp"

using namespace cchain;

namespace {

template <class Fn>
double seconds(Fn&& fn, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* what, double serial, double parallel, bool same) {
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", what, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  struct Case {
    u64 N;
    int k;
    u64 ell;
    u64 q;
  };
  for (const Case& c : {Case{2003, 2, 10007, 97}, Case{330, 4, 10007, 31}, Case{199, 12, 10007, 23}}) {
    auto s = build_space(c.N, c.k, c.ell);
    Matrix<PrimeField> a = s.hecke_full_serial(c.q), b = s.hecke_full(c.q);
    double ts = seconds([&] { a = s.hecke_full_serial(c.q); }, 3);
    double tp = seconds([&] { b = s.hecke_full(c.q); }, 3);
    char label[96];
    std::snprintf(label, sizeof label, "T_%llu on N=%llu k=%d (dim %zu)", static_cast<unsigned long long>(c.q),
                  static_cast<unsigned long long>(c.N), c.k, s.dimension());
    report(label, ts, tp, a == b);
  }

  // table bound 200 covers every cross bound among these levels
  std::vector<const NewformClass*> classes;
  for (u64 N : {11, 14, 15, 17, 19, 20, 21})
    for (const auto& c : newform_classes(N, 2, 200)) classes.push_back(&c);
  auto orbits = class_orbit_set(classes, 47);
  auto ells = primes_up_to(47);
  std::vector<CongruenceEdge> x, y;
  double ts = seconds([&] { x = scan_congruences_serial(orbits, ells); }, 3);
  double tp = seconds([&] { y = scan_congruences(orbits, ells); }, 3);
  bool same = x.size() == y.size();
  for (std::size_t i = 0; same && i < x.size(); ++i)
    same = x[i].left == y[i].left && x[i].right == y[i].right && x[i].ell == y[i].ell && x[i].tested_primes == y[i].tested_primes;
  char label[96];
  std::snprintf(label, sizeof label, "scan %zu orbits, %zu edges", orbits.size(), x.size());
  report(label, ts, tp, same);
  return 0;
}
