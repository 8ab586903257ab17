#pragma once

// Gauss-Bonnet integrands built from curvature double forms.
//
// Curvature enters with the sectional-positive convention of curvature.hpp;
// the Pfaffian is normalised so that the round S^m integrates to 2, and the
// boundary term so that a flat unit disc (normal pointing inwards) gives 1.

#include "rgb/curvature.hpp"
#include "rgb/double_form.hpp"
#include "rgb/metric.hpp"

namespace rgb {

/// Volume of the round unit sphere S^k; vol(S^0) = 2.
double sphere_volume(int k);

/// Pfaffian density (coefficient of dvol) of a (2,2) curvature form on an
/// even-dimensional frame.
double pfaffian_density(const DoubleForm& R);

/// Same value through the double-form power: Pff = c * (R^n)(full, full).
double pfaffian_density_via_power(const DoubleForm& R);

/// Boundary transgression density (coefficient of the induced volume) from
/// the tangential ambient curvature and the second fundamental form on an
/// (m-1)-dimensional tangent frame, m even.
double transgression_density(const DoubleForm& R_tangent, const DoubleForm& S);

/// The closed double sum for the finite part of the boundary term when
/// beta = eta - 1, with its summation bound read as the ambient dimension m:
/// (2 pi)^{-m/2} sum_{q < m/2} sum_{j <= q} (-1)^j beta^{m-1-2q} alpha^{m-1-2j}
///   / ((m-1-2q)!! j! (q-j)! 2^{q-j}) (Rbar^j gbar^{m-1-2j})(full, full).
/// Rbar is the intrinsic curvature of (∂M, h_0) on an h_0-orthonormal frame.
double tube_invariant_P(double eta, double beta, double alpha, const DoubleForm& R_bar_bdry);

/// x -> 0 limit of the boundary density (times dvol_{h_x}) obtained by
/// substituting the collar comparison formulas into the transgression
/// density; valid when beta = eta - 1:
/// transgression_density(Rbar - (alpha beta)^2 gbar^2 / 2, alpha beta gbar).
double tube_polynomial_limit(double eta, double beta, double alpha, const DoubleForm& R_bar_bdry);

enum class TubeFormula { Displayed, Limit };

/// Integral over (∂M, h_0) of one of the tube densities.
double boundary_tube_integral(const CollarMetric& cm, TubeFormula formula);

}  // namespace rgb
