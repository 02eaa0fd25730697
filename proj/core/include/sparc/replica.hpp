#pragma once

// Replica potential Phi_B(E): evaluation (MC, or 1-d quadrature for B=2),
// maxima location on a refined grid, the two thresholds, and the
// closed-form asymptotic BP rate.

#include <cstdint>
#include <vector>

#include "sparc/de.hpp"

namespace sparc::replica {

struct PhiParams {
	int B = 2;
	double R = 1.0;
	double snr = 15.0;
	long mc_samples = 1'000'000;
	std::uint64_t seed = 0;
	bool quad_b2 = true;
	int quad_nodes = 64;
};

// Phi is defined up to an additive constant: only argmax locations and
// height differences at fixed (B, R, snr) are meaningful.
de::Estimate phi(double E, const PhiParams& p);

struct GridSpec {
	double e_min = 1e-8;
	double e_max = 1.0;
	int points = 200; // log-spaced
	double refine_tol = 1e-5;
};

struct GridPoint {
	double E;
	double ser;
	double phi;
	double stderr_;
};

struct MaxPoint {
	double E;
	double phi;
};

struct PotentialCurve {
	std::vector<GridPoint> grid;
	std::vector<MaxPoint> maxima; // sorted by E, golden-section refined
	PhiParams params;
};

// Common random numbers across the grid (one seed, counter-indexed
// draws) keep the sampled curve smooth in E.
PotentialCurve find_maxima(const PhiParams& p, const GridSpec& g = {}, bool with_ser = false);

// Rate at which the two maxima of Phi have equal height. Throws
// bracketing_error when fewer than two maxima exist in the bracket
// (snr below the tricritical point).
double optimal_threshold(double snr, int B, double r_lo, double r_hi, double tol_r,
                         const PhiParams& base = {});

// Rate at which the second (high-E) maximum appears.
double bp_threshold_appearance(double snr, int B, double r_lo, double r_hi, double tol_r,
                               const PhiParams& base = {});

// R_BP = [(1/snr + 1) 2 ln 2]^{-1}, bits per channel use, B -> inf.
double asymptotic_bp_rate(double snr);

struct SerCurvePoint {
	double x; // the swept value (B or snr)
	double E_star;
	double ser;
};

struct SerCurve {
	std::vector<SerCurvePoint> points;
	double exponent; // least-squares slope in log-log
};

enum class Sweep { OverB, OverSnr };

// Optimal SER (at the dominant maximum of Phi) along a sweep, with a
// log-log power-law fit.
SerCurve optimal_ser_curve(double R, double fixed_other, Sweep sweep,
                           const std::vector<double>& xs, const PhiParams& base = {},
                           long ser_mc_samples = 10'000'000);

} // namespace sparc::replica
