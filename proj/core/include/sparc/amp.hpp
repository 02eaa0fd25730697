#pragma once

// Bayesian AMP decoder: sectionwise posterior denoiser plus the full
// iteration (V, omega with Onsager correction, Sigma^2, R, denoise).

#include <optional>
#include <span>
#include <vector>

#include "sparc/model.hpp"

namespace sparc {

struct AmpOptions {
	int max_iter = 50;
	double tol = 1e-8; // on the change of the self-estimated MSE
};

struct TracePoint {
	int t;
	double E;        // (1/L) sum (a_i - x_i)^2, NaN without ground truth
	double ser;      // NaN without ground truth
	double mse_est;  // sum_i v_i / L
	bool diverged;
};

struct AmpState {
	std::vector<double> a, v;       // size N
	std::vector<double> omega, V;   // size M
	std::vector<double> R, Sigma2;  // size N
	int t = 0;
	bool diverged = false;
	std::vector<TracePoint> trace;
};

// Posterior mean/variance of one section given Gaussian fields (R_i, Sigma2_i).
// Log-domain with max subtraction; safe for |R|/Sigma2 up to ~1e6 and beyond.
void denoise_section(std::span<const double> Sigma2, std::span<const double> R,
                     std::span<double> a, std::span<double> v);

// a=0, v=1/(B snr), omega=y, V from v through the V-update.
AmpState amp_init(const CodingMatrix& F, std::span<const double> y, const CodeParams& p);

// One full iteration; throws divergence_error on NaN/Inf.
void amp_step(AmpState& s, const CodingMatrix& F, std::span<const double> y, double snr);

struct AmpResult {
	Message msg;
	AmpState state;
};

// Runs until |mse_est^t - mse_est^{t-1}| < tol or max_iter. With a ground
// truth signal the trace carries the true E^t and SER^t. On divergence the
// best state seen so far is returned, flagged.
AmpResult run_amp(const CodingMatrix& F, std::span<const double> y, const CodeParams& p,
                  const AmpOptions& opts = {},
                  const std::vector<double>* truth = nullptr);

} // namespace sparc
