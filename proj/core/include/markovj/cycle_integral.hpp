#pragma once

#include "markovj/bigint.hpp"
#include "markovj/continued_fractions.hpp"
#include "markovj/markov_tree.hpp"
#include "markovj/modular_j.hpp"
#include "markovj/quadrature.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>

namespace markovj {

/// Cycle integral of j at one tree node.
///
/// J is the unnormalised integral (2 log eps) j(w); j = J / (2 log eps) and
/// J_over_q = J / q. Values refer to the class of the node's Markov form
/// [c, 3c-2k, l-3k], whose root is -w; its minus continued fraction period is
/// the node's period read backwards.
struct CycleValue {
  std::string path;
  int level = 0;
  FareyFraction farey;
  BigInt c;
  std::complex<double> J;
  std::complex<double> j;
  std::complex<double> J_over_q;
  double log_eps = 0.0;
  /// Quadrature error estimate for J.
  double quad_error = 0.0;
};

inline constexpr double kDefaultQuadTol = 1e-10;

/// log eps with eps = (3c + sqrt(9c^2 - 4))/2, the fundamental unit of
/// discriminant 9c^2 - 4. Accurate to ~1e-16 relative for any size of c.
double log_epsilon(const BigInt& c);

/// sum_i 1/(e^{i theta} - w_i) - 1/(e^{i theta} - conj(w_i)).
std::complex<double> kernel_sum(std::span<const CycleState> states, double theta);

/// Integral over [pi/3, 2pi/3] of j(e^{i theta}) i e^{i theta} kernel_sum(theta).
/// `tol` bounds the absolute quadrature error per unit of `scale`
/// (the caller passes q so that tol applies to J/q).
QuadratureResult integrate_cycle(std::span<const CycleState> states, const JSeries& series,
                                 double tol, double scale = 1.0);

/// J, j and J/q for a node; tol is the absolute tolerance on J/q. Throws
/// QuadratureError if the tolerance cannot be met.
CycleValue integrate_J(const TreeNode& node, const JSeries& series, double tol = kDefaultQuadTol);

/// Integral of j(e^{i theta}) over [pi/3, 2pi/3] (~753.982), to 1e-10.
std::complex<double> average_integral(const JSeries& series);

}  // namespace markovj
