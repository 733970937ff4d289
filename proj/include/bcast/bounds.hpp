// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace bcast::bounds {

/// Core constants of the loss model for a fixed loss fraction alpha.
struct Constants {
  double alpha = 0;
  double X = 0;     // 1 / (alpha (1 - alpha))
  double beta = 0;  // (1 - alpha)^2
  double c = 0;     // min{(1 - alpha)^2 / 4, (1 - alpha)^3 / 2}
  double Y = 0;     // 1 - alpha - 2 alpha^2 + alpha^3
};

Constants constants(double alpha);

/// Smaller root of k^2 - n k + X (n - 2); NaN when the roots are complex.
double f_root(std::size_t n, double alpha);

/// Simple rounds that contract 2(n-1)k + h from its a-priori maximum 3n(n-1)
/// below one: ceil(log_{1/(1-c)} 3n(n-1)).
std::size_t rounds_kn(std::size_t n, double alpha);

struct HypercubeRounds {
  std::size_t t1 = 0;  // rounds until a third of Q_d is informed
  std::size_t t2 = 0;  // rounds until the measure 2dk + h is exhausted
};

HypercubeRounds rounds_hypercube(std::size_t d, double alpha, double eps);

struct LoopLengths {
  std::size_t l1 = 0;  // extended rounds
  std::size_t l2 = 0;  // hyperactive-elimination iterations per extended round
  std::size_t l3 = 0;  // sending steps per iteration
  std::size_t l4 = 0;  // simple rounds per extended round
};

/// Loop lengths of the complete-broadcast algorithm without sense of direction.
/// Throws unsupported-alpha when Y(alpha) <= 0.
LoopLengths l_params(std::size_t n, double alpha, double eps);

/// Largest candidate set size, floor(3 X (1 + eps)); also the sender threshold
/// of the candidate report step.
std::size_t candidate_cap(double alpha, double eps);

/// The three size conditions used by the almost-complete argument on K_n.
bool kn_conditions_hold(std::size_t n, double alpha, double eps);
/// Smallest n from which kn_conditions_hold for n..n+100.
std::size_t n_min(double alpha, double eps);
/// n_min plus the extra size needed by the candidate protocols (X eps <= n/2,
/// pair sweeps always outnumber the threshold).
std::size_t n_min_sod(double alpha, double eps);

/// Every k-subset with X/(1-eps) < k <= 2^d - ceil((1-alpha)(2d-1)/2) has edge
/// boundary at least X (d - 1), using the isoperimetric bound on both sides.
bool qd_conditions_hold(std::size_t d, double alpha, double eps);
/// Smallest d <= 24 from which qd_conditions_hold up to 24; 25 if none.
std::size_t d_min(double alpha, double eps);

/// lg((x+1)/x) >= 1/x, valid for x >= 2.
bool log_inequality_holds(double x);

/// Lower bounds on the informed count after the two greedy steps.
double greedy_kn_floor(std::size_t n, double alpha);
double greedy_qd_floor(std::size_t d, double alpha);

void check_alpha(double alpha);

}  // namespace bcast::bounds
