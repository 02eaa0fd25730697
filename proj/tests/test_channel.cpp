#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sparc/channel.hpp"
#include "sparc/errors.hpp"
#include "sparc/model.hpp"
#include "sparc/rng.hpp"

using namespace sparc;

TEST_CASE("capacity reference values") {
	CHECK(capacity(15.0) == doctest::Approx(2.0).epsilon(1e-9));
	CHECK(capacity(30.0) == doctest::Approx(2.4771).epsilon(1e-4));
	CHECK(capacity(0.0) == 0.0);
	CHECK_THROWS_AS(capacity(-0.1), parameter_error);
	double prev = 0.0;
	for (double snr = 0.5; snr < 40.0; snr += 0.5) {
		const double c = capacity(snr);
		CHECK(c > prev);
		prev = c;
	}
}

TEST_CASE("transmit determinism and noise statistics") {
	const long M = 10000;
	std::vector<double> cw(M, 0.0);
	const std::uint64_t key = rng::derive(9, rng::tag("cw"), 0);
	for (long mu = 0; mu < M; ++mu)
		cw[mu] = rng::uniform(key, mu) - 0.5;

	const ChannelOutput c1 = transmit(cw, 15.0, 77, 3);
	const ChannelOutput c2 = transmit(cw, 15.0, 77, 3);
	CHECK(c1.y == c2.y);
	const ChannelOutput c3 = transmit(cw, 15.0, 77, 4);
	CHECK(c1.y != c3.y);

	double pw = 0.0, corr = 0.0;
	for (long mu = 0; mu < M; ++mu) {
		const double xi = c1.y[mu] - cw[mu];
		pw += xi * xi;
		corr += xi * cw[mu];
	}
	pw /= M;
	const double s2 = 1.0 / 15.0;
	CHECK(std::abs(pw - s2) < 5.0 * s2 * std::sqrt(2.0 / M));
	// noise independent of the codeword
	CHECK(std::abs(corr / M) < 4.0 * std::sqrt(s2 / 12.0 / M));
}

TEST_CASE("huge snr is transparent") {
	std::vector<double> cw{0.3, -1.2, 0.0, 2.5};
	const ChannelOutput c = transmit(cw, 1e9, 1, 0);
	for (std::size_t mu = 0; mu < cw.size(); ++mu)
		CHECK(std::abs(c.y[mu] - cw[mu]) < 1e-4);
	CHECK_THROWS_AS(transmit(cw, 0.0, 1, 0), parameter_error);
	CHECK_THROWS_AS(transmit(cw, -3.0, 1, 0), parameter_error);
}
