#pragma once

// Analytic test-function profiles shared by the lattice observables and the
// continuum theory.

namespace wasep {

/// G_l(u) = (1 - u/l) on [0, l], zero elsewhere.
double ramp(double u, double l);

/// Normalized C-infinity bump of total width `width`, centred at 0:
/// proportional to exp(-1 / (1 - (2y/width)^2)) on |y| < width/2.
double bump(double y, double width);

/// Width of the mollifier used for the smoothed ramp: 1/l.
double smooth_ramp_width(double l);

/// G_l convolved with bump(., 1/l). Equal to G_l away from u = 0 and u = l;
/// support inside [-1/(2l), l + 1/(2l)] which lies in [-2l, 2l].
double smooth_ramp(double u, double l);

/// exp(-(u - center)^2 / (2 width^2)).
double gaussian_bump(double u, double center, double width);

}  // namespace wasep
