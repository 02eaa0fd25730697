#pragma once

// Counter-based random streams. Every draw is a pure function of
// (seed, tag, index), so sharded generation equals serial generation
// bit for bit and common random numbers across parameter sweeps come
// for free by reusing the same seed.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sparc::rng {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

// fnv1a-64 of a label, usable as a stream tag at compile time
constexpr std::uint64_t tag(const char* s) {
	std::uint64_t h = 1469598103934665603ULL;
	for (; *s; ++s)
		h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
	return h;
}

// Stream key for (seed, tag, index), e.g. derive(seed, tag("F"), row).
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t t, std::uint64_t index = 0) {
	std::uint64_t h = splitmix64(seed + kGamma);
	h = splitmix64(h ^ t);
	return splitmix64(h + index * kGamma);
}

inline double to_unit(std::uint64_t x) {  // [0,1)
	return static_cast<double>(x >> 11) * 0x1.0p-53;
}
inline double to_unit_pos(std::uint64_t x) {  // (0,1)
	return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

inline std::uint64_t bits(std::uint64_t key, std::uint64_t ctr) {
	return splitmix64(key + ctr * kGamma);
}

inline double uniform(std::uint64_t key, std::uint64_t ctr) {
	return to_unit(bits(key, ctr));
}

// Uniform integer in {1,...,n} (n << 2^64, modulo bias negligible).
inline int uniform_index1(std::uint64_t key, std::uint64_t ctr, int n) {
	return 1 + static_cast<int>(bits(key, ctr) % static_cast<std::uint64_t>(n));
}

struct NormalPair {
	double n0, n1;
};

// Box-Muller on counters 2*ctr and 2*ctr+1 of the stream.
inline NormalPair normal_pair(std::uint64_t key, std::uint64_t ctr) {
	const std::uint64_t s = key + (2 * ctr) * kGamma;
	const double u1 = to_unit_pos(splitmix64(s));
	const double u2 = to_unit(splitmix64(s + kGamma));
	const double r = std::sqrt(-2.0 * std::log(u1));
	const double th = 2.0 * std::numbers::pi * u2;
	return {r * std::cos(th), r * std::sin(th)};
}

struct NormalPairF {
	float n0, n1;
};

// Single-precision Box-Muller, for bulk generation of float-stored
// matrices. Tail truncates at ~5.8 sigma (24-bit uniform), immaterial
// at matrix scale.
inline NormalPairF normal_pair_f(std::uint64_t key, std::uint64_t ctr) {
	const std::uint64_t s = key + (2 * ctr) * kGamma;
	const std::uint64_t x1 = splitmix64(s);
	const std::uint64_t x2 = splitmix64(s + kGamma);
	const float u1 = (static_cast<float>(x1 >> 40) + 0.5f) * 0x1.0p-24f;
	const float u2 = static_cast<float>(x2 >> 40) * 0x1.0p-24f;
	const float r = std::sqrt(-2.0f * std::log(u1));
	const float th = 6.2831853f * u2;
	return {r * std::cos(th), r * std::sin(th)};
}

// dim standard normals for sample `sample_index` of a stream.
inline void sample_normals(std::uint64_t key, std::uint64_t sample_index, double* z, int dim) {
	const int pairs = (dim + 1) / 2;
	for (int p = 0; p < pairs; ++p) {
		const NormalPair g = normal_pair(key, sample_index * pairs + p);
		z[2 * p] = g.n0;
		if (2 * p + 1 < dim)
			z[2 * p + 1] = g.n1;
	}
}

inline void fill_normal(std::uint64_t key, double* out, std::size_t n) {
	std::size_t p = 0;
	for (; p + 1 < n; p += 2) {
		const NormalPair g = normal_pair(key, p / 2);
		out[p] = g.n0;
		out[p + 1] = g.n1;
	}
	if (p < n)
		out[p] = normal_pair(key, p / 2).n0;
}

} // namespace sparc::rng
