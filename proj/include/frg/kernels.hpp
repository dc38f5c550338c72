#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// frg::kernels::serial and an OpenMP version in frg::kernels::parallel with
// the same signature. The library calls the parallel versions; the serial
// ones are kept for tests and the benchmark.
//
// Reductions in the parallel namespace are blocked with a fixed block size,
// so results do not depend on the number of threads.

#include <cstddef>
#include <span>

namespace frg {
class BoxFunction;
class DyadicGrid;
}

namespace frg::kernels {

inline constexpr std::size_t kReductionBlock = 4096;

namespace serial {

/// Compensated (Neumaier) sum of values[i] * weights[i].
double weighted_sum(std::span<const double> values, std::span<const double> weights);

/// Sum of a[i] * b[i] * w, w a uniform weight.
double uniform_dot(std::span<const double> a, std::span<const double> b, double w);

/// density[i] = alpha[i] cos^2(t/2 - beta[i]), kinetic[i] = alpha[i] sin^2(t/2 - beta[i]).
void geodesic_flow(std::span<const double> alpha, std::span<const double> beta, double t,
                   std::span<double> density, std::span<double> kinetic);

/// Exact cell averages of a box function on a dyadic grid, scattering box by box.
void project(const BoxFunction& f, const DyadicGrid& grid, std::span<double> out);

}  // namespace serial

namespace parallel {

double weighted_sum(std::span<const double> values, std::span<const double> weights);
double uniform_dot(std::span<const double> a, std::span<const double> b, double w);
void geodesic_flow(std::span<const double> alpha, std::span<const double> beta, double t,
                   std::span<double> density, std::span<double> kinetic);
/// Bitwise the same result as serial::project, one first-axis row per task.
void project(const BoxFunction& f, const DyadicGrid& grid, std::span<double> out);

}  // namespace parallel

}  // namespace frg::kernels
