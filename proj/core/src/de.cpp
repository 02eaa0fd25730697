#include "sparc/de.hpp"

#include <algorithm>
#include <cmath>

#include "sparc/quadrature.hpp"
#include "sparc/rng.hpp"

namespace sparc::de {

namespace {

// numerically stable logistic
double sigmoid(double x) {
	if (x >= 0.0)
		return 1.0 / (1.0 + std::exp(-x));
	const double e = std::exp(x);
	return e / (1.0 + e);
}

// 1/(1 + sum_k exp(e_k)) without overflow
double inv_one_plus_expsum(const double* e, int n) {
	double m = 0.0;
	for (int k = 0; k < n; ++k)
		m = std::max(m, e[k]);
	if (m < 700.0) {
		double s = 1.0;
		for (int k = 0; k < n; ++k)
			s += std::exp(e[k]);
		return 1.0 / s;
	}
	double s = std::exp(-m);
	for (int k = 0; k < n; ++k)
		s += std::exp(e[k] - m);
	return std::exp(-m - std::log(s));
}

double mc_stderr(double sum, double sumsq, long n) {
	const double mean = sum / n;
	const double var = std::max(0.0, sumsq / n - mean * mean);
	return std::sqrt(var / n);
}

double prop_stderr(double p, long n) {
	return std::max(std::sqrt(p * (1.0 - p) / n), 1.0 / static_cast<double>(n));
}

} // namespace

double sigma_eff(double E, int B, double R, double snr) {
	return std::sqrt((1.0 / snr + E) * R / std::log2(static_cast<double>(B)));
}

namespace {
void check_b(int B) {
	if (B < 2 || B > 64)
		throw parameter_error("DE: B must be in [2, 64]");
}
} // namespace

double f1(double Sigma, std::span<const double> z) {
	if (!(Sigma > 0.0))
		throw numeric_domain_error("f1: Sigma must be > 0");
	const int B = static_cast<int>(z.size());
	const double inv2 = 1.0 / (Sigma * Sigma), inv = 1.0 / Sigma;
	double e[64];
	int n = 0;
	for (int j = 1; j < B; ++j)
		e[n++] = -inv2 + (z[j] - z[0]) * inv;
	return inv_one_plus_expsum(e, n);
}

double f0(double Sigma, std::span<const double> z, int i, int j) {
	if (!(Sigma > 0.0))
		throw numeric_domain_error("f0: Sigma must be > 0");
	if (i == j)
		throw parameter_error("f0: i and j must differ");
	const int B = static_cast<int>(z.size());
	const double inv2 = 1.0 / (Sigma * Sigma), inv = 1.0 / Sigma;
	const double zi = z[i - 1];
	double e[64];
	int n = 0;
	e[n++] = inv2 + (z[j - 1] - zi) * inv;
	for (int k = 1; k <= B; ++k) {
		if (k == i || k == j)
			continue;
		e[n++] = (z[k - 1] - zi) * inv;
	}
	return inv_one_plus_expsum(e, n);
}

Estimate de_step_mc(double E, const DeParams& p) {
	check_b(p.B);
	const double Sigma = sigma_eff(E, p.B, p.R, p.snr);
	const std::uint64_t key = rng::derive(p.seed, rng::tag("de-z"));
	double z[64];
	double sum = 0.0, sumsq = 0.0;
	for (long s = 0; s < p.mc_samples; ++s) {
		rng::sample_normals(key, static_cast<std::uint64_t>(s), z, p.B);
		const std::span<const double> zz(z, static_cast<std::size_t>(p.B));
		const double d1 = f1(Sigma, zz) - 1.0;
		const double d0 = f0(Sigma, zz, 1, 2);
		const double g = d1 * d1 + (p.B - 1) * d0 * d0;
		sum += g;
		sumsq += g * g;
	}
	return {sum / p.mc_samples, mc_stderr(sum, sumsq, p.mc_samples)};
}

Estimate de_step(double E, const DeParams& p) {
	if (p.B == 2 && p.quad_b2) {
		// Both terms depend on z only through u = z2 - z1 ~ N(0, 2).
		const double Sigma = sigma_eff(E, 2, p.R, p.snr);
		const double inv2 = 1.0 / (Sigma * Sigma), inv = 1.0 / Sigma;
		const quad::Rule gh = quad::gauss_hermite(p.quad_nodes);
		const double v = quad::expect_n02(gh, [&](double u) {
			const double a1 = sigmoid(inv2 - u * inv); // f1
			const double a0 = sigmoid(-inv2 - u * inv); // f0_{1,2}
			return (a1 - 1.0) * (a1 - 1.0) + a0 * a0;
		});
		return {v, 0.0};
	}
	return de_step_mc(E, p);
}

double ser_closed_form_b2(double Sigma) {
	return 0.5 * std::erfc(1.0 / (2.0 * Sigma));
}

Estimate ser_from_E_mc(double E, const DeParams& p) {
	check_b(p.B);
	const double Sigma = sigma_eff(E, p.B, p.R, p.snr);
	const std::uint64_t key = rng::derive(p.seed, rng::tag("de-z"));
	double z[64];
	long errs = 0;
	for (long s = 0; s < p.mc_samples; ++s) {
		rng::sample_normals(key, static_cast<std::uint64_t>(s), z, p.B);
		const std::span<const double> zz(z, static_cast<std::size_t>(p.B));
		const double a1 = f1(Sigma, zz);
		for (int j = 2; j <= p.B; ++j) {
			if (f0(Sigma, zz, j, 1) > a1) {
				++errs;
				break;
			}
		}
	}
	const double ser = static_cast<double>(errs) / p.mc_samples;
	return {ser, prop_stderr(ser, p.mc_samples)};
}

Estimate ser_from_E(double E, const DeParams& p) {
	if (p.B == 2 && p.quad_b2)
		return {ser_closed_form_b2(sigma_eff(E, 2, p.R, p.snr)), 0.0};
	return ser_from_E_mc(E, p);
}

DeTrajectory run_de(const DeParams& p, bool ser_each_iter) {
	DeTrajectory traj;
	double E = 1.0;
	// SER^t is the error rate of the estimate produced at iteration t, whose
	// effective noise is Sigma(E^{t-1}); SER^0 = 1 by convention (the initial
	// estimate carries no information). This aligns DE rows with decoder
	// trace rows one-to-one.
	traj.points.push_back({0, E, 1.0, 0.0, 0.0});
	for (int t = 1; t <= p.max_iter; ++t) {
		const Estimate en = de_step(E, p);
		const double E_prev = E;
		E = en.value;
		if (ser_each_iter || std::abs(E - E_prev) < p.tol || t == p.max_iter) {
			const Estimate s = ser_from_E(E_prev, p);
			traj.points.push_back({t, E, s.value, en.stderr_, s.stderr_});
		} else {
			traj.points.push_back({t, E, std::nan(""), en.stderr_, std::nan("")});
		}
		if (std::abs(E - E_prev) < p.tol) {
			traj.converged = true;
			break;
		}
	}
	traj.fixed_point_E = E;
	return traj;
}

double bp_threshold_de(double snr, int B, double r_lo, double r_hi, double tol_r,
                       long mc_samples, std::uint64_t seed) {
	DeParams p;
	p.B = B;
	p.snr = snr;
	p.mc_samples = mc_samples;
	p.seed = seed;
	const double cut = ser_cut(B);
	auto below = [&](double R) {
		p.R = R;
		const DeTrajectory t = run_de(p, false);
		return t.points.back().ser < cut;
	};
	if (!below(r_lo) || below(r_hi))
		throw bracketing_error("bp_threshold_de: bracket does not straddle the transition");
	while (r_hi - r_lo > tol_r) {
		const double mid = 0.5 * (r_lo + r_hi);
		(below(mid) ? r_lo : r_hi) = mid;
	}
	return 0.5 * (r_lo + r_hi);
}

} // namespace sparc::de
