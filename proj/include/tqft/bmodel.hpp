#pragma once

#include <map>
#include <string>
#include <vector>

#include "tqft/functional.hpp"
#include "tqft/rational_function.hpp"

namespace tqft {

using DifferentialFunctional = TwistedFunctional<RationalFunction>;

/// "t1", ..., "tn" (or with another prefix).
std::vector<std::string> coordinate_names(int n, const std::string& prefix = "t");

/// Spectral curve x = z + 1/z, y = -z and the coordinate maps from t.
struct SpectralCurve {
  RationalFunction x_of_z;  // in z
  RationalFunction y_of_z;
  RationalFunction z_of_t;  // (t+1)/(t-1)
  RationalFunction x_of_t;  // 2(t^2+1)/(t^2-1)
};
SpectralCurve spectral_curve();

/// w^D_{0,2}(t1, t2) = 1/(t1+t2)^2.
RationalFunction w02();
/// The twisted (0,2) form: w02 times eta on each class pair.
DifferentialFunctional twisted_w02(const AlgebraPtr& A);
/// dt1 dt2/(t1-t2)^2 - dx1 dx2/(x1-x2)^2 as a coefficient of dt1 dt2; equals w02().
RationalFunction w02_from_subtraction();

/// w_{0,1} in the x frame, -(t+1)/(t-1).
RationalFunction w01_x();

/// K^D(t, t1) = 1/2 (1/(t+t1) + 1/(t-t1)) (1/32) (t^2-1)^3/t^2 in variables (t, t1).
RationalFunction eo_kernel();
/// 1/2 int_t^{-t} W_{0,2}(., t1) / (W_{0,1}(-t) - W_{0,1}(t)) with W_{0,1} = y dx,
/// evaluated symbolically.
RationalFunction eo_kernel_from_integral();

/// w^D_{g,n}(t1..tn) from the assembled differential recursion. Memoized.
/// When the lower input is w02 (only for (0,3)) the +-t1 part of the j-term is
/// taken without assuming evenness. Throws for 2g - 2 + n <= 0.
RationalFunction wgn(int g, int n);

/// The same recursion over functionals: joins via m*, loops via delta*, splits
/// via the split delta*. Slot i carries variable t_{i+1}.
DifferentialFunctional twisted_wgn(int g, int n, const AlgebraPtr& A);

enum class Frame { T, X, Z };
Frame parse_frame(const std::string& name);  // "t", "x", "z"
/// Coefficient of the differential in the requested frame. For X the
/// coefficient of dx1..dxn is written in the z_i; for Z the coefficient of
/// dz1..dzn is written in the z_i.
RationalFunction convert_frame(const RationalFunction& wD, int n, Frame frame);
/// (-1)^n w^D prod (t_i^2-1)^2/(8 t_i): the dx coefficient written in t.
RationalFunction x_frame_in_t(const RationalFunction& wD, int n);

struct ResidueReport {
  bool in_budget = false;
  bool equal = false;
  RationalFunction residue_value;
  RationalFunction recursion_value;
  std::string message;
};
/// Recomputes w^D_{g,n} by explicit residues at +-t1 and +-tj of the contour
/// integrand (with the (0,2) pieces written out), for (1,1) and (0,3).
ResidueReport residue_check(int g, int n);

/// Residue of f at var = point, given the pole order bound.
RationalFunction residue_at(const RationalFunction& f, const std::string& var,
                            const RationalFunction& point, int order);

/// z(u) with x = 1/u on the branch z -> 0, as u + u^3 + 2u^5 + ..., up to u^order.
std::vector<Rational> z_series(int order);
/// Coefficients c(mu) of prod x_i^(-mu_i-1) in w_{g,n}(x), for 1 <= mu_i <= mu_max.
/// Accepts (0,2) and stable (g,n).
std::map<std::vector<int>, Rational> inverse_laplace_coeffs(int g, int n, int mu_max);

}  // namespace tqft
