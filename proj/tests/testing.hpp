#ifndef SUPCUSP_TESTING_HPP
#define SUPCUSP_TESTING_HPP

// Minimal always-on test harness: failed checks print the location and
// terminate with exit code 1, so every binary doubles as a ctest case.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace testing_detail {
inline int& check_count() {
  static int n = 0;
  return n;
}
}  // namespace testing_detail

#define REQUIRE(cond, msg)                                                  \
  do {                                                                      \
    ++testing_detail::check_count();                                        \
    if (!(cond)) {                                                          \
      std::fprintf(stderr, "[FAIL] %s:%d %s\n", __FILE__, __LINE__, msg);   \
      std::exit(1);                                                         \
    }                                                                       \
  } while (0)

#define REQUIRE_THROWS(expr, msg)                                           \
  do {                                                                      \
    ++testing_detail::check_count();                                        \
    bool thrown = false;                                                    \
    try {                                                                   \
      (void)(expr);                                                         \
    } catch (const std::exception&) {                                       \
      thrown = true;                                                        \
    }                                                                       \
    if (!thrown) {                                                          \
      std::fprintf(stderr, "[FAIL] %s:%d expected exception: %s\n",         \
                   __FILE__, __LINE__, msg);                                \
      std::exit(1);                                                         \
    }                                                                       \
  } while (0)

inline void require_close_impl(double a, double b, double tol, const char* file,
                               int line, const char* msg) {
  ++testing_detail::check_count();
  double err = std::abs(a - b);
  if (!(err <= tol) || !std::isfinite(a) || !std::isfinite(b)) {
    std::fprintf(stderr, "[FAIL] %s:%d %s (got %.17g, want %.17g, err %.3g, tol %.3g)\n",
                 file, line, msg, a, b, err, tol);
    std::exit(1);
  }
}

inline void require_close_impl(std::complex<double> a, std::complex<double> b,
                               double tol, const char* file, int line,
                               const char* msg) {
  ++testing_detail::check_count();
  double err = std::abs(a - b);
  if (!(err <= tol)) {
    std::fprintf(stderr,
                 "[FAIL] %s:%d %s (got %.17g%+.17gi, want %.17g%+.17gi, err %.3g, tol %.3g)\n",
                 file, line, msg, a.real(), a.imag(), b.real(), b.imag(), err, tol);
    std::exit(1);
  }
}

#define REQUIRE_CLOSE(a, b, tol, msg) \
  require_close_impl((a), (b), (tol), __FILE__, __LINE__, (msg))

inline int test_summary(const char* name) {
  std::printf("[OK] %s: %d checks passed\n", name, testing_detail::check_count());
  return 0;
}

#endif
