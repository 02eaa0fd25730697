#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sparc/bench.hpp"
#include "sparc/channel.hpp"

using namespace sparc;
using namespace sparc::bench;

TEST_CASE("trial seeds are deterministic and distinct") {
	CHECK(trial_seed(1, 0) == trial_seed(1, 0));
	CHECK(trial_seed(1, 0) != trial_seed(1, 1));
	CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("instances regenerate bit-exactly from their seed") {
	const CodeParams p = CodeParams::make(64, 2, 1.0, 15.0);
	const Instance a = make_instance(p, 12345);
	const Instance b = make_instance(p, 12345);
	CHECK(a.msg == b.msg);
	CHECK(a.F.data == b.F.data);
	CHECK(a.y == b.y);
	CHECK(a.x == section_encode(a.msg, p.B));
	CHECK(static_cast<long>(a.y.size()) == p.M);
	const Instance c = make_instance(p, 12346);
	CHECK(a.y != c.y);
}

TEST_CASE("protocol1 is reproducible and monotone in R") {
	const std::vector<double> grid{0.6, 1.0, 1.9};
	ProtocolOptions o;
	o.trials = 100;
	const ProtocolResult r1 = protocol1(100, 2, 15.0, grid, 77, o);
	const ProtocolResult r2 = protocol1(100, 2, 15.0, grid, 77, o);
	REQUIRE(r1.records.size() == 3);
	for (std::size_t k = 0; k < 3; ++k) {
		CHECK(r1.records[k].failures == r2.records[k].failures);
		CHECK(r1.records[k].p_epsilon == r2.records[k].p_epsilon);
		CHECK(r1.records[k].p_epsilon >= 0.0);
		CHECK(r1.records[k].p_epsilon <= 1.0);
		// shared instances across rates keep the curve monotone
		if (k > 0)
			CHECK(r1.records[k].failures >= r1.records[k - 1].failures);
	}
	CHECK(r1.records[0].failures == 0);
	CHECK(r1.records[2].p_epsilon > 0.3);
	CHECK(r1.achieved_rate == doctest::Approx(1.0));
}

TEST_CASE("protocol2 demands ten first-try successes") {
	const std::vector<double> grid{0.5, 1.9};
	const ProtocolResult r = protocol2(100, 2, 15.0, grid, 5);
	REQUIRE(r.records.size() == 2);
	CHECK(r.records[0].trials == 10);
	CHECK(r.records[0].pass);
	CHECK_FALSE(r.records[1].pass);
	CHECK(r.achieved_rate == doctest::Approx(0.5));
}

TEST_CASE("fixed-N sweep at B=2 reduces to protocol1") {
	ProtocolOptions o;
	o.trials = 60;
	const std::vector<FixedNPoint> sweep = fixed_N_sweep(256, {2, 4}, 15.0, 1.0, o.trials, 31, o);
	REQUIRE(sweep.size() == 2);
	CHECK(sweep[0].L == 128);
	CHECK(sweep[1].L == 64);
	const ProtocolResult p1 = protocol1(128, 2, 15.0, {1.0}, 31, o);
	CHECK(sweep[0].failures == p1.records[0].failures);
	CHECK_THROWS_AS(fixed_N_sweep(100, {8}, 15.0, 1.0, 10, 1), parameter_error);
}

TEST_CASE("phase point at snr=30, B=2") {
	const std::vector<PhasePoint> pts = phase_diagram(2.0, PhaseMode::SweepSnr, {30.0}, 100'000, 1, 0.01);
	REQUIRE(pts.size() == 1);
	CHECK(pts[0].bp == doctest::Approx(1.68).epsilon(0.015));
	CHECK(pts[0].optimal == doctest::Approx(1.775).epsilon(0.01));
	CHECK(pts[0].cap == doctest::Approx(capacity(30.0)));
	CHECK(pts[0].bp < pts[0].optimal);
	CHECK(pts[0].optimal < pts[0].cap);
	CHECK(pts[0].bp_gap_db > 0.0);
	CHECK(pts[0].optimal_gap_db > 0.0);
	CHECK(pts[0].bp_gap_db > pts[0].optimal_gap_db);
}

TEST_CASE("no equal-height transition at low snr is flagged, not fatal") {
	const std::vector<PhasePoint> pts = phase_diagram(2.0, PhaseMode::SweepSnr, {10.0}, 100'000, 1, 0.01);
	REQUIRE(pts.size() == 1);
	CHECK(std::isnan(pts[0].optimal));
	CHECK(std::isfinite(pts[0].bp)); // DE crossover still exists
}

TEST_CASE("config hash is stable and collision-free on simple edits") {
	const std::uint64_t h = config_hash("mode=de B=2 R=1.3");
	CHECK(h == config_hash("mode=de B=2 R=1.3"));
	CHECK(h != config_hash("mode=de B=2 R=1.4"));
}
