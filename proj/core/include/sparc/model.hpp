#pragma once

// Code ensemble: dimensions, message <-> signal mapping, i.i.d. Gaussian
// coding matrix (variance 1/L, regenerated from its seed), encoding and
// the error / biased-MSE estimators.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sparc/errors.hpp"

namespace sparc {

using Message = std::vector<int>; // L section indices, 1-based in {1,...,B}

struct Dims {
	long N;
	long M;
	double R_eff;
};

Dims derive_dims(long L, int B, double R);

struct CodeParams {
	long L;
	int B;
	double R;   // target rate, bits per channel use
	double snr; // linear
	long N;
	long M;
	double R_eff;

	static CodeParams make(long L, int B, double R, double snr);
};

std::vector<double> section_encode(const Message& msg, int B);
Message section_decode(std::span<const double> x, int B);

// M x N i.i.d. N(0, 1/L) matrix, column-major float storage.
// Entry (mu, i) is a pure function of (seed, mu, i): row streams are
// derived as (seed, "F", mu) so any generation order agrees bit-exactly.
struct CodingMatrix {
	std::uint64_t seed = 0;
	long M = 0, N = 0, L = 0;
	std::vector<float> data; // column-major

	float operator()(long mu, long i) const { return data[i * M + mu]; }
	const float* col(long i) const { return data.data() + i * M; }
};

CodingMatrix sample_coding_matrix(std::uint64_t seed, const CodeParams& p);

// y = F x  (double accumulation; zero entries of x are skipped)
std::vector<double> encode(const CodingMatrix& F, std::span<const double> x);

double section_error_rate(std::span<const double> est, std::span<const double> truth, int B);

// (Etilde, E): Etilde = (1/N) sum (a_i - x_i)^2, E = B * Etilde
std::pair<double, double> biased_mse(std::span<const double> a, std::span<const double> x, int B);

} // namespace sparc
