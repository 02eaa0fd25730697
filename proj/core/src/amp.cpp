#include "sparc/amp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparc {

void denoise_section(std::span<const double> Sigma2, std::span<const double> R,
                     std::span<double> a, std::span<double> v) {
	const std::size_t B = Sigma2.size();
	double m = -std::numeric_limits<double>::infinity();
	for (std::size_t i = 0; i < B; ++i) {
		if (!(Sigma2[i] > 0.0))
			throw numeric_domain_error("denoise_section: Sigma2 must be > 0");
		const double e = (2.0 * R[i] - 1.0) / (2.0 * Sigma2[i]);
		a[i] = e; // stash exponent
		m = std::max(m, e);
	}
	double z = 0.0;
	for (std::size_t i = 0; i < B; ++i) {
		a[i] = std::exp(a[i] - m);
		z += a[i];
	}
	for (std::size_t i = 0; i < B; ++i) {
		a[i] /= z;
		v[i] = a[i] * (1.0 - a[i]);
	}
}

namespace {

// Column reduction with four independent accumulator chains; the naive
// loop is latency-bound on the serial add chain.
inline void col_reduce(const float* c, const double* h, const double* g, long M, double& s1,
                       double& s2) {
	double s1a = 0.0, s1b = 0.0, s1c = 0.0, s1d = 0.0;
	double s2a = 0.0, s2b = 0.0, s2c = 0.0, s2d = 0.0;
	long mu = 0;
	for (; mu + 4 <= M; mu += 4) {
		const double f0 = c[mu], f1 = c[mu + 1], f2 = c[mu + 2], f3 = c[mu + 3];
		s1a += f0 * f0 * h[mu];
		s1b += f1 * f1 * h[mu + 1];
		s1c += f2 * f2 * h[mu + 2];
		s1d += f3 * f3 * h[mu + 3];
		s2a += f0 * g[mu];
		s2b += f1 * g[mu + 1];
		s2c += f2 * g[mu + 2];
		s2d += f3 * g[mu + 3];
	}
	for (; mu < M; ++mu) {
		const double f = c[mu];
		s1a += f * f * h[mu];
		s2a += f * g[mu];
	}
	s1 = (s1a + s1b) + (s1c + s1d);
	s2 = (s2a + s2b) + (s2c + s2d);
}

} // namespace

AmpState amp_init(const CodingMatrix& F, std::span<const double> y, const CodeParams& p) {
	AmpState s;
	// v^0 is the second moment of the prior about a^0 = 0, E[x_i^2] = 1/B, so
	// the first step's V equals the true initial error E^0 = 1 and the first
	// denoise is Bayes-consistent; this is what makes the trajectory track
	// density evolution from t = 1 on.
	const double v0 = 1.0 / p.B;
	s.a.assign(p.N, 0.0);
	s.v.assign(p.N, v0);
	s.omega.assign(y.begin(), y.end());
	s.V.assign(p.M, 0.0);
	s.R.assign(p.N, 0.0);
	s.Sigma2.assign(p.N, 1.0);
	for (long i = 0; i < F.N; ++i) {
		const float* c = F.col(i);
		for (long mu = 0; mu < F.M; ++mu) {
			const double f = c[mu];
			s.V[mu] += f * f * v0;
		}
	}
	return s;
}

void amp_step(AmpState& s, const CodingMatrix& F, std::span<const double> y, double snr) {
	const long M = F.M, N = F.N;
	const double nv = 1.0 / snr;

	// Pass 1 over F: V^{t+1} and F a^t
	std::vector<double> Vn(M, 0.0), Fa(M, 0.0);
	for (long i = 0; i < N; ++i) {
		const float* c = F.col(i);
		const double ai = s.a[i], vi = s.v[i];
		for (long mu = 0; mu < M; ++mu) {
			const double f = c[mu];
			Vn[mu] += f * f * vi;
			Fa[mu] += f * ai;
		}
	}
	// omega^{t+1} with Onsager term (uses V^t in the denominator)
	std::vector<double> g(M), h(M);
	for (long mu = 0; mu < M; ++mu) {
		const double om = Fa[mu] - (y[mu] - s.omega[mu]) * Vn[mu] / (nv + s.V[mu]);
		s.omega[mu] = om;
		s.V[mu] = Vn[mu];
		h[mu] = 1.0 / (nv + Vn[mu]);
		g[mu] = (y[mu] - om) * h[mu];
	}
	// Pass 2 over F: Sigma^2 and R
	for (long i = 0; i < N; ++i) {
		const float* c = F.col(i);
		double s1, s2;
		col_reduce(c, h.data(), g.data(), M, s1, s2);
		s.Sigma2[i] = 1.0 / s1;
		s.R[i] = s.a[i] + s.Sigma2[i] * s2;
	}
	const int B = static_cast<int>(N / F.L);
	for (long l = 0; l < F.L; ++l) {
		const std::size_t off = static_cast<std::size_t>(l) * B;
		denoise_section({s.Sigma2.data() + off, static_cast<std::size_t>(B)},
		                {s.R.data() + off, static_cast<std::size_t>(B)},
		                {s.a.data() + off, static_cast<std::size_t>(B)},
		                {s.v.data() + off, static_cast<std::size_t>(B)});
	}
	++s.t;
	for (long i = 0; i < N; ++i)
		if (!std::isfinite(s.a[i]))
			throw divergence_error(s.t);
	for (long mu = 0; mu < M; ++mu)
		if (!std::isfinite(s.omega[mu]) || !std::isfinite(s.V[mu]))
			throw divergence_error(s.t);
}

namespace {

TracePoint observe(const AmpState& s, const CodeParams& p, const std::vector<double>* truth) {
	TracePoint tp;
	tp.t = s.t;
	tp.diverged = s.diverged;
	double sv = 0.0;
	for (double vi : s.v)
		sv += vi;
	tp.mse_est = sv / static_cast<double>(p.L);
	if (truth) {
		tp.E = biased_mse(s.a, *truth, p.B).second;
		tp.ser = section_error_rate(s.a, *truth, p.B);
	} else {
		tp.E = std::numeric_limits<double>::quiet_NaN();
		tp.ser = std::numeric_limits<double>::quiet_NaN();
	}
	return tp;
}

} // namespace

namespace {

// One boxed iteration, single sweep over F: the Sigma^2/R half of step t
// shares each column read with the V/omega accumulation for step t+1.
// Bit-identical to amp_step (same accumulation order).
void fused_step(AmpState& s, const CodingMatrix& F, std::span<const double> y, double snr,
                std::vector<double>& Vn, std::vector<double>& Fa) {
	const long M = F.M, N = F.N;
	const int B = static_cast<int>(N / F.L);
	const double nv = 1.0 / snr;
	std::vector<double> g(M), h(M), Vn2(M, 0.0), Fa2(M, 0.0);
	for (long mu = 0; mu < M; ++mu) {
		const double om = Fa[mu] - (y[mu] - s.omega[mu]) * Vn[mu] / (nv + s.V[mu]);
		s.omega[mu] = om;
		s.V[mu] = Vn[mu];
		h[mu] = 1.0 / (nv + Vn[mu]);
		g[mu] = (y[mu] - om) * h[mu];
	}
	for (long l = 0; l < F.L; ++l) {
		const long off = l * B;
		for (int b = 0; b < B; ++b) {
			const long i = off + b;
			const float* c = F.col(i);
			double s1, s2;
			col_reduce(c, h.data(), g.data(), M, s1, s2);
			s.Sigma2[i] = 1.0 / s1;
			s.R[i] = s.a[i] + s.Sigma2[i] * s2;
		}
		denoise_section({s.Sigma2.data() + off, static_cast<std::size_t>(B)},
		                {s.R.data() + off, static_cast<std::size_t>(B)},
		                {s.a.data() + off, static_cast<std::size_t>(B)},
		                {s.v.data() + off, static_cast<std::size_t>(B)});
		for (int b = 0; b < B; ++b) {
			const long i = off + b;
			const float* __restrict c = F.col(i);
			const double ai = s.a[i], vi = s.v[i];
			double* __restrict vp = Vn2.data();
			double* __restrict fp = Fa2.data();
			for (long mu = 0; mu < M; ++mu) {
				const double f = c[mu];
				vp[mu] += f * f * vi;
				fp[mu] += f * ai;
			}
		}
	}
	Vn.swap(Vn2);
	Fa.swap(Fa2);
	++s.t;
	for (long i = 0; i < N; ++i)
		if (!std::isfinite(s.a[i]))
			throw divergence_error(s.t);
	for (long mu = 0; mu < M; ++mu)
		if (!std::isfinite(s.omega[mu]) || !std::isfinite(s.V[mu]))
			throw divergence_error(s.t);
}

} // namespace

AmpResult run_amp(const CodingMatrix& F, std::span<const double> y, const CodeParams& p,
                  const AmpOptions& opts, const std::vector<double>* truth) {
	AmpState s = amp_init(F, y, p);
	// a^0 = 0 and v^0 is uniform, so V^{t=1} equals the V of amp_init and
	// F a^0 vanishes; no extra prologue sweep needed.
	std::vector<double> Vn = s.V, Fa(p.M, 0.0);
	s.trace.push_back(observe(s, p, truth));
	AmpState best = s;
	double best_score = std::numeric_limits<double>::infinity();
	double prev_mse = s.trace.back().mse_est;
	for (int t = 0; t < opts.max_iter; ++t) {
		try {
			fused_step(s, F, y, p.snr, Vn, Fa);
		} catch (const divergence_error&) {
			best.diverged = true;
			best.trace = s.trace;
			for (auto& tp : best.trace)
				tp.diverged = true;
			return {section_decode(best.a, p.B), std::move(best)};
		}
		const TracePoint tp = observe(s, p, truth);
		s.trace.push_back(tp);
		const double score = truth ? tp.ser : tp.mse_est;
		if (score < best_score) {
			best_score = score;
			best = s;
		}
		if (std::abs(tp.mse_est - prev_mse) < opts.tol)
			break;
		prev_mse = tp.mse_est;
	}
	return {section_decode(s.a, p.B), std::move(s)};
}

} // namespace sparc
