#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sparc/channel.hpp"
#include "sparc/de.hpp"

using namespace sparc;
using namespace sparc::de;

TEST_CASE("sigma_eff reference values") {
	CHECK(sigma_eff(0.0, 2, 1.0, 15.0) == doctest::Approx(0.25820).epsilon(1e-4));
	CHECK(sigma_eff(1.0, 2, 1.0, 15.0) == doctest::Approx(1.03280).epsilon(1e-4));
	CHECK(sigma_eff(0.0, 4, 2.0, 1e12) == doctest::Approx(0.0).scale(1).epsilon(1e-5));
}

TEST_CASE("f1 limits and reference value") {
	{
		const std::vector<double> z(2, 0.0);
		CHECK(f1(1e6, z) == doctest::Approx(0.5).epsilon(1e-6));
		CHECK(f1(1.0, z) == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-10)); // 0.7311
		CHECK(f1(0.1, z) == doctest::Approx(1.0).epsilon(1e-10));
	}
	{
		const std::vector<double> z(4, 0.0);
		CHECK(f1(1e6, z) == doctest::Approx(0.25).epsilon(1e-5));
	}
	CHECK_THROWS_AS(f1(0.0, std::vector<double>(2, 0.0)), numeric_domain_error);
}

TEST_CASE("f0 limits and consistency") {
	const std::vector<double> z(4, 0.0);
	CHECK(f0(1e6, z, 2, 1) == doctest::Approx(0.25).epsilon(1e-5));
	CHECK(f0(0.1, z, 2, 1) == doctest::Approx(0.0).scale(1).epsilon(1e-10));
	// at z = 0 all wrong components are exchangeable
	CHECK(f0(0.7, z, 2, 1) == doctest::Approx(f0(0.7, z, 3, 1)).epsilon(1e-12));
	CHECK_THROWS_AS(f0(0.7, z, 2, 2), parameter_error);
	CHECK_THROWS_AS(f0(-1.0, z, 2, 1), numeric_domain_error);
}

namespace {

DeParams params_for_sigma(double Sigma, int B, long mc, std::uint64_t seed) {
	// R = log2(B), snr = 1/(Sigma^2 - E) trick avoided: pick E via snr=1e12
	DeParams p;
	p.B = B;
	p.R = std::log2(double(B));
	p.snr = 1e12;
	p.mc_samples = mc;
	p.seed = seed;
	return p; // then use E = Sigma^2 so sigma_eff(E) = Sigma
}

} // namespace

TEST_CASE("B=2 quadrature step agrees with Monte Carlo across Sigma") {
	for (int k = 0; k < 10; ++k) {
		const double Sigma = 0.15 + 0.28 * k; // spans [0.15, 2.67]
		DeParams p = params_for_sigma(Sigma, 2, 1'000'000, 100 + k);
		const double E = Sigma * Sigma;
		const Estimate q = de_step(E, p);
		p.quad_b2 = false;
		const Estimate m = de_step_mc(E, p);
		CHECK(std::abs(q.value - m.value) < 3.0 * m.stderr_ + 1e-9);
	}
}

TEST_CASE("step limits") {
	{
		DeParams p;
		p.B = 2;
		p.R = 0.5;
		p.snr = 1e6;
		CHECK(de_step(0.0, p).value < 1e-6);
	}
	{
		// Sigma ~ 1000: posterior is flat, E' -> 1 - 1/B = 0.5
		DeParams p = params_for_sigma(1000.0, 2, 200'000, 7);
		CHECK(de_step(1000.0 * 1000.0, p).value == doctest::Approx(0.5).epsilon(0.01));
	}
}

TEST_CASE("closed-form B=2 SER against the Monte Carlo indicator") {
	for (int k = 0; k < 6; ++k) {
		const double Sigma = 0.2 + 0.5 * k;
		DeParams p = params_for_sigma(Sigma, 2, 1'000'000, 200 + k);
		const double E = Sigma * Sigma;
		const Estimate cf = ser_from_E(E, p);
		const Estimate mc = ser_from_E_mc(E, p);
		CHECK(cf.value == doctest::Approx(ser_closed_form_b2(Sigma)).epsilon(1e-12));
		CHECK(std::abs(cf.value - mc.value) < 3.0 * mc.stderr_ + 1e-7);
	}
}

TEST_CASE("SER limits") {
	CHECK(ser_closed_form_b2(1e-3) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
	for (int B : {2, 4, 8}) {
		DeParams p = params_for_sigma(1000.0, B, 200'000, 300 + B);
		const Estimate s = ser_from_E_mc(1000.0 * 1000.0, p);
		CHECK(s.value == doctest::Approx(1.0 - 1.0 / B).epsilon(0.02));
	}
}

TEST_CASE("SER is monotone in E") {
	{
		DeParams p;
		p.B = 2;
		p.R = 1.3;
		p.snr = 15.0;
		double prev = -1.0;
		for (int k = 0; k <= 50; ++k) {
			const double E = k / 50.0;
			const double s = ser_from_E(E, p).value;
			CHECK(s >= prev);
			prev = s;
		}
	}
	{
		DeParams p;
		p.B = 4;
		p.R = 1.3;
		p.snr = 15.0;
		p.mc_samples = 100'000;
		p.seed = 9; // common random numbers across the grid
		double prev = -1.0;
		for (int k = 1; k <= 20; ++k) {
			const Estimate s = ser_from_E_mc(k / 20.0, p);
			CHECK(s.value >= prev - 3.0 * s.stderr_);
			prev = s.value;
		}
	}
}

TEST_CASE("trajectories descend and settle at self-consistent fixed points") {
	DeParams p;
	p.B = 4;
	p.R = 1.3;
	p.snr = 15.0;
	p.mc_samples = 200'000;
	p.seed = 11;
	const DeTrajectory tr = run_de(p);
	REQUIRE(tr.points.size() >= 2);
	CHECK(tr.points.front().E == 1.0);
	CHECK(tr.converged);
	for (std::size_t k = 1; k < tr.points.size(); ++k)
		CHECK(tr.points[k].E <= tr.points[k - 1].E + 3.0 * tr.points[k].stderr_E + 1e-12);
	CHECK(tr.points.back().ser < 1e-2);
	const Estimate again = de_step(tr.fixed_point_E, p);
	CHECK(std::abs(again.value - tr.fixed_point_E) < 3.0 * again.stderr_ + 1e-6);
}

TEST_CASE("above threshold the trajectory stalls at high error") {
	DeParams p;
	p.B = 4;
	p.R = 1.7;
	p.snr = 15.0;
	p.mc_samples = 100'000;
	p.seed = 12;
	const DeTrajectory tr = run_de(p);
	CHECK(tr.points.back().ser > 0.2);
	CHECK(tr.fixed_point_E > 0.3);
}

TEST_CASE("tiny rates converge almost immediately") {
	DeParams p;
	p.B = 2;
	p.R = 0.05;
	p.snr = 15.0;
	const DeTrajectory tr = run_de(p);
	CHECK(tr.converged);
	CHECK(static_cast<int>(tr.points.size()) <= 4); // t = 0 plus <= 3 iterations
	CHECK(tr.points.back().ser == doctest::Approx(ser_from_E(0.0, p).value).epsilon(1e-3));
}

TEST_CASE("BP threshold via bisection, B=2 quadrature path") {
	const double r = bp_threshold_de(30.0, 2, 1.4, 1.9, 0.005);
	CHECK(r == doctest::Approx(1.68).epsilon(0.012));
	CHECK(r < capacity(30.0));
	CHECK_THROWS_AS(bp_threshold_de(30.0, 2, 0.3, 0.5, 0.01), bracketing_error);
}
