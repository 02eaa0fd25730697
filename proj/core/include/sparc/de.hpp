#pragma once

// Density evolution: the asymptotic recursion for the rescaled biased
// MSE E^t and the E -> SER mapping. Monte Carlo over the B-dimensional
// Gaussian measure for general B; exact 1-d Gauss-Hermite reduction for
// B = 2 (default).

#include <cstdint>
#include <span>
#include <vector>

#include "sparc/errors.hpp"

namespace sparc::de {

struct DeParams {
	int B = 2;
	double R = 1.0;
	double snr = 15.0;
	long mc_samples = 10'000'000;
	std::uint64_t seed = 0;
	int max_iter = 200;
	double tol = 1e-9;
	bool quad_b2 = true; // B=2: 1-d quadrature instead of MC
	int quad_nodes = 64;
};

struct Estimate {
	double value;
	double stderr_; // 0 on the quadrature path
};

// Sigma(E) = sqrt((1/snr + E) R / log2 B)
double sigma_eff(double E, int B, double R, double snr);

// Posterior weight of the true component (i = 1) given z ~ N(0, I_B).
double f1(double Sigma, std::span<const double> z);
// Posterior weight of wrong component i when j is true.
double f0(double Sigma, std::span<const double> z, int i, int j);

Estimate de_step(double E, const DeParams& p);
Estimate de_step_mc(double E, const DeParams& p); // MC path regardless of B

Estimate ser_from_E(double E, const DeParams& p); // closed form for B=2
Estimate ser_from_E_mc(double E, const DeParams& p);

double ser_closed_form_b2(double Sigma); // 0.5 erfc(1/(2 Sigma))

struct DePoint {
	int t;
	double E;
	double ser;
	double stderr_E;
	double stderr_ser;
};

struct DeTrajectory {
	std::vector<DePoint> points;
	bool converged = false;
	double fixed_point_E = 1.0;
};

// Iterates from E^0 = 1. With ser_each_iter=false only the final point
// carries a SER (cheaper inside threshold bisection).
DeTrajectory run_de(const DeParams& p, bool ser_each_iter = true);

inline double ser_cut(int B) { return 0.05 * (1.0 - 1.0 / B); }

// Bisection on R: below threshold DE reaches SER < ser_cut(B), above it
// stays high. Throws bracketing_error if both ends classify the same.
double bp_threshold_de(double snr, int B, double r_lo, double r_hi, double tol_r,
                       long mc_samples = 1'000'000, std::uint64_t seed = 0);

} // namespace sparc::de
