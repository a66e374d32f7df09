#pragma once
// Index forms and averaged curvature inequalities along geodesics.

#include <functional>

#include "sphereform/fibrations.hpp"

namespace sphereform {

struct CurvatureProfile {
  std::function<double(double)> k;
  enum class Source { analytic, fibration } source = Source::analytic;

  static CurvatureProfile constant(double c) {
    return {[c](double) { return c; }, Source::analytic};
  }
};

// I(W, W) = int_a^b (w')^2 - K w^2 dt for W = w(t) E(t) with E parallel unit
// normal. w and its derivative are supplied analytically; w(a) = w(b) = 0.
double index_form(const CurvatureProfile& k, const std::function<double(double)>& w,
                  const std::function<double(double)>& dw, double a, double b, int steps = 256);

enum class AverageWeight { sin_sq_2t, cos_sq_2t };

struct WindowCheck {
  double lhs = 0.0;  // int K * weight
  double rhs = 0.0;  // 4 int weight
  bool pass = false;
};

// int K(t) weight(t) <= 4 int weight(t) over one of the paper's four windows
WindowCheck weighted_average_check(const CurvatureProfile& k, AverageWeight weight,
                                   double a, double b, int steps = 256);

// the four windows: [0,pi/2] sin^2, [pi/4,3pi/4] cos^2, [pi/2,pi] sin^2,
// [3pi/4,5pi/4] cos^2
std::vector<std::pair<std::pair<double, double>, AverageWeight>> average_windows();

struct AveragesReport {
  double ricci_integral = 0.0;       // int_0^pi sum_i K(xdot, E_i)
  bool ricci_bound_ok = false;       // <= 28 pi + tol
  double horizontal_sum = 0.0;       // int_0^pi sum ||A_xdot E_i||^2
  double vertical_sum = 0.0;         // int_0^pi sum ||A_xdot V_i||^2
  double eq54_residual = 0.0;        // max_t |horizontal frame sum - sum lambda_i^2|
  double vertical_frame_residual = 0.0;
  double horizontal_frame_residual = 0.0;
  bool window_checks_pass = false;   // all four Eq 1.10 windows on the profile
  double window_margin = 0.0;        // min over windows of rhs - lhs
};

// One pass along a lifted geodesic: Ricci average, both A-tensor averages,
// the Eq 5.4 pointwise crosscheck, and the frame-condition residuals.
// Octonionic fibration only (7 normal directions).
AveragesReport averages_report(const Fibration& f, const BaseGeodesic& gamma, int steps = 256);

// int_0^pi Ric(gammadot, gammadot) along the base geodesic
double ricci_average(const Fibration& f, const BaseGeodesic& gamma, int steps = 256);

// (horizontal_sum, vertical_sum) of the A-tensor integrals
std::pair<double, double> a_tensor_averages(const Fibration& f, const BaseGeodesic& gamma,
                                            int steps = 256);

}  // namespace sphereform
