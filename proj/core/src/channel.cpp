#include "sparc/channel.hpp"

#include <cmath>

#include "sparc/errors.hpp"
#include "sparc/rng.hpp"

namespace sparc {

ChannelOutput transmit(std::span<const double> codeword, double snr, std::uint64_t seed,
                       std::uint64_t instance) {
	if (!(snr > 0.0))
		throw parameter_error("transmit: snr must be > 0");
	const std::uint64_t key = rng::derive(seed, rng::tag("noise"), instance);
	const double sigma = 1.0 / std::sqrt(snr);
	ChannelOutput out{std::vector<double>(codeword.size()), key, snr};
	std::vector<double> xi(codeword.size());
	rng::fill_normal(key, xi.data(), xi.size());
	for (std::size_t mu = 0; mu < codeword.size(); ++mu)
		out.y[mu] = codeword[mu] + sigma * xi[mu];
	return out;
}

double capacity(double snr) {
	if (snr < 0.0)
		throw parameter_error("capacity: snr must be >= 0");
	return 0.5 * std::log2(1.0 + snr);
}

} // namespace sparc
