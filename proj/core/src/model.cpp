#include "sparc/model.hpp"

#include <cmath>

#include "sparc/rng.hpp"

namespace sparc {

Dims derive_dims(long L, int B, double R) {
	if (L < 1)
		throw parameter_error("derive_dims: L must be >= 1");
	if (B < 2)
		throw parameter_error("derive_dims: B must be >= 2");
	if (!(R > 0.0))
		throw parameter_error("derive_dims: R must be > 0");
	const double bits = static_cast<double>(L) * std::log2(static_cast<double>(B));
	long M = std::lround(bits / R);
	if (M < 1)
		M = 1;
	return {L * B, M, bits / static_cast<double>(M)};
}

CodeParams CodeParams::make(long L, int B, double R, double snr) {
	if (!(snr > 0.0))
		throw parameter_error("CodeParams: snr must be > 0");
	const Dims d = derive_dims(L, B, R);
	return {L, B, R, snr, d.N, d.M, d.R_eff};
}

std::vector<double> section_encode(const Message& msg, int B) {
	if (B < 2)
		throw parameter_error("section_encode: B must be >= 2");
	std::vector<double> x(msg.size() * static_cast<std::size_t>(B), 0.0);
	for (std::size_t l = 0; l < msg.size(); ++l) {
		const int s = msg[l];
		if (s < 1 || s > B)
			throw parameter_error("section_encode: section value out of range");
		x[l * B + (s - 1)] = 1.0;
	}
	return x;
}

Message section_decode(std::span<const double> x, int B) {
	if (B < 2 || x.size() % static_cast<std::size_t>(B) != 0)
		throw parameter_error("section_decode: length not divisible by B");
	const std::size_t L = x.size() / B;
	Message msg(L);
	for (std::size_t l = 0; l < L; ++l) {
		int best = 0;
		double bv = x[l * B];
		for (int i = 1; i < B; ++i) {
			// ties keep the lowest index
			if (x[l * B + i] > bv) {
				bv = x[l * B + i];
				best = i;
			}
		}
		msg[l] = best + 1;
	}
	return msg;
}

CodingMatrix sample_coding_matrix(std::uint64_t seed, const CodeParams& p) {
	CodingMatrix F;
	F.seed = seed;
	F.M = p.M;
	F.N = p.N;
	F.L = p.L;
	F.data.resize(static_cast<std::size_t>(p.M) * static_cast<std::size_t>(p.N));
	const float sd = 1.0f / std::sqrt(static_cast<float>(p.L));
	std::vector<std::uint64_t> row_key(p.M);
	for (long mu = 0; mu < p.M; ++mu)
		row_key[mu] = rng::derive(seed, rng::tag("F"), static_cast<std::uint64_t>(mu));
	// Column pairs share a Box-Muller pair so we can write column-major
	// sequentially while keeping row-indexed streams.
	for (long i = 0; i < p.N; i += 2) {
		float* c0 = F.data.data() + static_cast<std::size_t>(i) * p.M;
		float* c1 = (i + 1 < p.N) ? c0 + p.M : nullptr;
		const std::uint64_t pair = static_cast<std::uint64_t>(i) / 2;
		for (long mu = 0; mu < p.M; ++mu) {
			const rng::NormalPairF g = rng::normal_pair_f(row_key[mu], pair);
			c0[mu] = sd * g.n0;
			if (c1)
				c1[mu] = sd * g.n1;
		}
	}
	return F;
}

std::vector<double> encode(const CodingMatrix& F, std::span<const double> x) {
	if (static_cast<long>(x.size()) != F.N)
		throw parameter_error("encode: dimension mismatch");
	std::vector<double> y(F.M, 0.0);
	for (long i = 0; i < F.N; ++i) {
		const double xi = x[i];
		if (xi == 0.0)
			continue;
		const float* c = F.col(i);
		for (long mu = 0; mu < F.M; ++mu)
			y[mu] += xi * static_cast<double>(c[mu]);
	}
	return y;
}

double section_error_rate(std::span<const double> est, std::span<const double> truth, int B) {
	if (est.size() != truth.size())
		throw parameter_error("section_error_rate: dimension mismatch");
	const Message me = section_decode(est, B);
	const Message mt = section_decode(truth, B);
	long wrong = 0;
	for (std::size_t l = 0; l < me.size(); ++l)
		wrong += (me[l] != mt[l]);
	return static_cast<double>(wrong) / static_cast<double>(me.size());
}

std::pair<double, double> biased_mse(std::span<const double> a, std::span<const double> x, int B) {
	if (a.size() != x.size())
		throw parameter_error("biased_mse: dimension mismatch");
	double s = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i) {
		const double d = a[i] - x[i];
		s += d * d;
	}
	const double et = s / static_cast<double>(a.size());
	return {et, et * B};
}

} // namespace sparc
