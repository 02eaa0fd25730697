#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sparc {

struct ChannelOutput {
	std::vector<double> y;
	std::uint64_t noise_seed;
	double snr;
};

// y = codeword + xi, xi i.i.d. N(0, 1/snr); noise stream (seed, "noise", instance).
ChannelOutput transmit(std::span<const double> codeword, double snr, std::uint64_t seed,
                       std::uint64_t instance = 0);

// AWGN capacity, bits per channel use
double capacity(double snr);

} // namespace sparc
