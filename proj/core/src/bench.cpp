#include "sparc/bench.hpp"

#include <cmath>
#include <limits>

#include "sparc/de.hpp"
#include "sparc/replica.hpp"
#include "sparc/rng.hpp"

namespace sparc::bench {

std::uint64_t trial_seed(std::uint64_t master_seed, long trial_index) {
	return rng::derive(master_seed, rng::tag("trial"), static_cast<std::uint64_t>(trial_index));
}

Instance make_instance(const CodeParams& p, std::uint64_t ts) {
	Instance inst;
	inst.F = sample_coding_matrix(ts, p);
	inst.msg.resize(p.L);
	const std::uint64_t msg_key = rng::derive(ts, rng::tag("msg"));
	for (long l = 0; l < p.L; ++l)
		inst.msg[l] = rng::uniform_index1(msg_key, static_cast<std::uint64_t>(l), p.B);
	inst.x = section_encode(inst.msg, p.B);
	inst.y = transmit(encode(inst.F, inst.x), p.snr, ts).y;
	return inst;
}

namespace {

double trial_ser(const CodeParams& p, std::uint64_t ts, int max_iter) {
	const Instance inst = make_instance(p, ts);
	AmpOptions opts;
	opts.max_iter = max_iter;
	const AmpResult res = run_amp(inst.F, inst.y, p, opts, &inst.x);
	return res.state.trace.back().ser;
}

double largest_passing(const std::vector<RateRecord>& recs) {
	double best = std::numeric_limits<double>::quiet_NaN();
	for (const RateRecord& r : recs)
		if (r.pass && (std::isnan(best) || r.R > best))
			best = r.R;
	return best;
}

} // namespace

ProtocolResult protocol1(long L, int B, double snr, const std::vector<double>& R_grid,
                         std::uint64_t master_seed, const ProtocolOptions& opts) {
	ProtocolResult out;
	for (double R : R_grid) {
		const CodeParams p = CodeParams::make(L, B, R, snr);
		long failures = 0;
		for (long t = 0; t < opts.trials; ++t)
			failures += (trial_ser(p, trial_seed(master_seed, t), opts.max_iter) > opts.ser_fail);
		const double pe = static_cast<double>(failures) / opts.trials;
		out.records.push_back({R, opts.trials, failures, pe, pe < opts.p_cut});
	}
	out.achieved_rate = largest_passing(out.records);
	return out;
}

ProtocolResult protocol2(long L, int B, double snr, const std::vector<double>& R_grid,
                         std::uint64_t master_seed, const ProtocolOptions& opts) {
	ProtocolResult out;
	for (double R : R_grid) {
		const CodeParams p = CodeParams::make(L, B, R, snr);
		long failures = 0;
		for (long t = 0; t < 10; ++t) {
			if (trial_ser(p, trial_seed(master_seed, t), opts.max_iter) > opts.ser_fail) {
				++failures;
				break; // first failure ends the attempt
			}
		}
		out.records.push_back({R, 10, failures, failures > 0 ? 1.0 : 0.0, failures == 0});
	}
	out.achieved_rate = largest_passing(out.records);
	return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// dB distance from capacity: how much snr exceeds what the threshold rate needs
double gap_db(double snr, double rate) {
	if (std::isnan(rate))
		return kNaN;
	const double snr_needed = std::pow(2.0, 2.0 * rate) - 1.0;
	return 10.0 * std::log10(snr / snr_needed);
}

// scan for a classification change, then refine by the given bisector
template <class Classify, class Bisect>
double scan_threshold(Classify&& below, Bisect&& bisect, double lo, double hi, int scan_points) {
	bool have_prev = false;
	bool prev = false;
	double prev_r = lo;
	for (int k = 0; k <= scan_points; ++k) {
		const double r = lo + (hi - lo) * k / scan_points;
		bool b;
		try {
			b = below(r);
		} catch (const bracketing_error&) {
			continue;
		}
		if (have_prev && prev && !b)
			return bisect(prev_r, r);
		have_prev = true;
		prev = b;
		prev_r = r;
	}
	return kNaN;
}

PhasePoint phase_point(int B, double snr, long mc_samples, std::uint64_t seed, double tol_r) {
	PhasePoint pt;
	pt.cap = capacity(snr);
	const double hi = pt.cap * 0.99;
	const double lo = 0.15 * pt.cap;

	de::DeParams dp;
	dp.B = B;
	dp.snr = snr;
	dp.mc_samples = mc_samples;
	dp.seed = seed;
	pt.bp = scan_threshold(
		[&](double R) {
			dp.R = R;
			return de::run_de(dp, false).points.back().ser < de::ser_cut(B);
		},
		[&](double a, double b) { return de::bp_threshold_de(snr, B, a, b, tol_r, mc_samples, seed); },
		lo, hi, 10);

	replica::PhiParams pp;
	pp.B = B;
	pp.snr = snr;
	pp.mc_samples = mc_samples;
	pp.seed = seed;
	pt.optimal = scan_threshold(
		[&](double R) {
			pp.R = R;
			const replica::PotentialCurve c = replica::find_maxima(pp);
			if (c.maxima.size() < 2)
				throw bracketing_error("single maximum");
			return c.maxima.front().phi > c.maxima.back().phi;
		},
		[&](double a, double b) { return replica::optimal_threshold(snr, B, a, b, tol_r, pp); },
		// the low-branch-dominates window can be much narrower than the
		// [lo, hi] span, so scan finely before bisecting
		lo, hi, 64);

	pt.bp_gap_db = gap_db(snr, pt.bp);
	pt.optimal_gap_db = gap_db(snr, pt.optimal);
	return pt;
}

} // namespace

std::vector<PhasePoint> phase_diagram(double fixed, PhaseMode mode, const std::vector<double>& xs,
                                      long mc_samples, std::uint64_t seed, double tol_r) {
	std::vector<PhasePoint> out;
	for (double x : xs) {
		const int B = mode == PhaseMode::SweepB ? static_cast<int>(x) : static_cast<int>(fixed);
		const double snr = mode == PhaseMode::SweepB ? fixed : x;
		PhasePoint pt = phase_point(B, snr, mc_samples, seed, tol_r);
		pt.x = x;
		out.push_back(pt);
	}
	return out;
}

std::vector<FixedNPoint> fixed_N_sweep(long N, const std::vector<int>& B_list, double snr,
                                       double R, long trials, std::uint64_t master_seed,
                                       const ProtocolOptions& opts) {
	std::vector<FixedNPoint> out;
	for (int B : B_list) {
		if (N % B != 0)
			throw parameter_error("fixed_N_sweep: N must be divisible by every B");
		const long L = N / B;
		const CodeParams p = CodeParams::make(L, B, R, snr);
		long failures = 0;
		for (long t = 0; t < trials; ++t)
			failures += (trial_ser(p, trial_seed(master_seed, t), opts.max_iter) > opts.ser_fail);
		out.push_back({B, L, trials, failures, static_cast<double>(failures) / trials});
	}
	return out;
}

std::uint64_t config_hash(const std::string& canonical) {
	std::uint64_t h = rng::tag(canonical.c_str());
	return rng::splitmix64(h);
}

} // namespace sparc::bench
