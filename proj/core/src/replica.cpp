#include "sparc/replica.hpp"

#include <algorithm>
#include <cmath>

#include "sparc/quadrature.hpp"
#include "sparc/rng.hpp"

namespace sparc::replica {

namespace {

double logsumexp2(double a, double b) {
	const double m = std::max(a, b);
	return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double grid_at(const GridSpec& g, int k) {
	const double t = static_cast<double>(k) / (g.points - 1);
	return g.e_min * std::pow(g.e_max / g.e_min, t);
}

// golden-section maximization of f on [lo, hi]
template <class F>
MaxPoint golden_max(F&& f, double lo, double hi, double tol) {
	const double gr = 0.6180339887498949;
	double a = lo, b = hi;
	double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
	double f1 = f(x1), f2 = f(x2);
	while (b - a > tol) {
		if (f1 < f2) {
			a = x1;
			x1 = x2;
			f1 = f2;
			x2 = a + gr * (b - a);
			f2 = f(x2);
		} else {
			b = x2;
			x2 = x1;
			f2 = f1;
			x1 = b - gr * (b - a);
			f1 = f(x1);
		}
	}
	const double xm = 0.5 * (a + b);
	return {xm, f(xm)};
}

} // namespace

de::Estimate phi(double E, const PhiParams& p) {
	const double q = 1.0 / p.snr + E;
	if (!(q > 0.0))
		throw numeric_domain_error("phi: 1/snr + E must be > 0");
	const double lb = std::log2(static_cast<double>(p.B));
	const double head = -lb / (2.0 * p.R) * (std::log(q) + (1.0 - E) / q);
	const double Sigma = std::sqrt(q * p.R / lb);
	const double A2 = 1.0 / (2.0 * Sigma * Sigma);
	const double inv = 1.0 / Sigma;

	if (p.B == 2 && p.quad_b2) {
		// ln(e^{A2+z1/S} + e^{-A2+z2/S}) = z1/S + ln(e^{A2} + e^{-A2+u/S}),
		// u = z2 - z1 ~ N(0,2); the z1/S term averages to zero.
		const quad::Rule gh = quad::gauss_hermite(p.quad_nodes);
		const double integral =
			quad::expect_n02(gh, [&](double u) { return logsumexp2(A2, -A2 + u * inv); });
		return {head + integral, 0.0};
	}

	if (p.B < 2 || p.B > 64)
		throw parameter_error("phi: B must be in [2, 64]");
	const std::uint64_t key = rng::derive(p.seed, rng::tag("phi-z"));
	double z[64];
	double sum = 0.0, sumsq = 0.0;
	for (long s = 0; s < p.mc_samples; ++s) {
		rng::sample_normals(key, static_cast<std::uint64_t>(s), z, p.B);
		double m = A2 + z[0] * inv;
		for (int i = 1; i < p.B; ++i)
			m = std::max(m, -A2 + z[i] * inv);
		double acc = std::exp(A2 + z[0] * inv - m);
		for (int i = 1; i < p.B; ++i)
			acc += std::exp(-A2 + z[i] * inv - m);
		const double val = m + std::log(acc);
		sum += val;
		sumsq += val * val;
	}
	const double mean = sum / p.mc_samples;
	const double var = std::max(0.0, sumsq / p.mc_samples - mean * mean);
	return {head + mean, std::sqrt(var / p.mc_samples)};
}

PotentialCurve find_maxima(const PhiParams& p, const GridSpec& g, bool with_ser) {
	PotentialCurve curve;
	curve.params = p;
	curve.grid.reserve(g.points);
	de::DeParams dp;
	dp.B = p.B;
	dp.R = p.R;
	dp.snr = p.snr;
	dp.mc_samples = p.mc_samples;
	dp.seed = p.seed;
	dp.quad_b2 = p.quad_b2;
	dp.quad_nodes = p.quad_nodes;
	for (int k = 0; k < g.points; ++k) {
		const double E = grid_at(g, k);
		const de::Estimate ph = phi(E, p);
		const double ser = with_ser ? de::ser_from_E(E, dp).value : std::nan("");
		curve.grid.push_back({E, ser, ph.value, ph.stderr_});
	}
	auto refine = [&](int lo_k, int hi_k) {
		return golden_max([&](double E) { return phi(E, p).value; },
		                  curve.grid[lo_k].E, curve.grid[hi_k].E, g.refine_tol);
	};
	const int n = g.points;
	for (int k = 0; k < n; ++k) {
		const double h = curve.grid[k].phi;
		const bool up = (k == 0) || h > curve.grid[k - 1].phi;
		const bool down = (k == n - 1) || h > curve.grid[k + 1].phi;
		if (up && down)
			curve.maxima.push_back(refine(std::max(0, k - 1), std::min(n - 1, k + 1)));
	}
	// merge refinements that collapsed onto the same point
	std::sort(curve.maxima.begin(), curve.maxima.end(),
	          [](const MaxPoint& a, const MaxPoint& b) { return a.E < b.E; });
	std::vector<MaxPoint> merged;
	for (const MaxPoint& m : curve.maxima) {
		if (!merged.empty() && m.E - merged.back().E < 2.0 * g.refine_tol) {
			if (m.phi > merged.back().phi)
				merged.back() = m;
		} else {
			merged.push_back(m);
		}
	}
	curve.maxima = std::move(merged);
	return curve;
}

double optimal_threshold(double snr, int B, double r_lo, double r_hi, double tol_r,
                         const PhiParams& base) {
	PhiParams p = base;
	p.B = B;
	p.snr = snr;
	// true iff the low-E maximum dominates
	auto low_dominates = [&](double R) {
		p.R = R;
		const PotentialCurve c = find_maxima(p);
		if (c.maxima.size() < 2)
			throw bracketing_error("optimal_threshold: fewer than two maxima at R=" +
			                       std::to_string(R));
		return c.maxima.front().phi > c.maxima.back().phi;
	};
	if (!low_dominates(r_lo) || low_dominates(r_hi))
		throw bracketing_error("optimal_threshold: bracket does not straddle the crossing");
	while (r_hi - r_lo > tol_r) {
		const double mid = 0.5 * (r_lo + r_hi);
		(low_dominates(mid) ? r_lo : r_hi) = mid;
	}
	return 0.5 * (r_lo + r_hi);
}

double bp_threshold_appearance(double snr, int B, double r_lo, double r_hi, double tol_r,
                               const PhiParams& base) {
	PhiParams p = base;
	p.B = B;
	p.snr = snr;
	auto single = [&](double R) {
		p.R = R;
		return find_maxima(p).maxima.size() < 2;
	};
	if (!single(r_lo) || single(r_hi))
		throw bracketing_error("bp_threshold_appearance: bracket does not straddle the onset");
	while (r_hi - r_lo > tol_r) {
		const double mid = 0.5 * (r_lo + r_hi);
		(single(mid) ? r_lo : r_hi) = mid;
	}
	return 0.5 * (r_lo + r_hi);
}

double asymptotic_bp_rate(double snr) {
	return 1.0 / ((1.0 / snr + 1.0) * 2.0 * std::log(2.0));
}

SerCurve optimal_ser_curve(double R, double fixed_other, Sweep sweep,
                           const std::vector<double>& xs, const PhiParams& base,
                           long ser_mc_samples) {
	SerCurve out;
	for (double x : xs) {
		PhiParams p = base;
		p.R = R;
		if (sweep == Sweep::OverB) {
			p.B = static_cast<int>(x);
			p.snr = fixed_other;
		} else {
			p.B = static_cast<int>(fixed_other);
			p.snr = x;
		}
		const PotentialCurve c = find_maxima(p);
		const MaxPoint dom = *std::max_element(
			c.maxima.begin(), c.maxima.end(),
			[](const MaxPoint& a, const MaxPoint& b) { return a.phi < b.phi; });
		de::DeParams dp;
		dp.B = p.B;
		dp.R = R;
		dp.snr = p.snr;
		dp.mc_samples = ser_mc_samples;
		dp.seed = p.seed;
		double ser = de::ser_from_E(dom.E, dp).value;
		if (ser <= 0.0)
			ser = 1.0 / static_cast<double>(ser_mc_samples); // MC floor, keeps the fit finite
		out.points.push_back({x, dom.E, ser});
	}
	// least-squares slope in log-log
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	const double n = static_cast<double>(out.points.size());
	for (const SerCurvePoint& pt : out.points) {
		const double lx = std::log(pt.x), ly = std::log(pt.ser);
		sx += lx;
		sy += ly;
		sxx += lx * lx;
		sxy += lx * ly;
	}
	out.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
	return out;
}

} // namespace sparc::replica
