// sparc: encoder / AMP decoder / density-evolution / replica-potential
// experiment CLI for sparse superposition codes over the AWGN channel.
//
// Exit codes: 0 success, 2 parameter error, 3 bracketing/divergence error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparc/bench.hpp"
#include "sparc/de.hpp"
#include "sparc/oracle.hpp"
#include "sparc/replica.hpp"
#include "sparc/rng.hpp"

using json = nlohmann::json;

namespace {

struct Common {
	long L = 1024;
	int B = 2;
	double R = 1.0;
	double snr = 15.0;
	std::uint64_t seed = 0;
	long trials = 1000;
	long mc_samples = 1'000'000;
	int max_iter = 50;
	std::string out;
	std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c) {
	sub->add_option("--L", c.L, "number of sections");
	sub->add_option("--B", c.B, "section size (>= 2)");
	sub->add_option("--R", c.R, "target rate, bits per channel use");
	sub->add_option("--snr", c.snr, "signal-to-noise ratio (linear)");
	sub->add_option("--seed", c.seed, "master seed");
	sub->add_option("--trials", c.trials, "number of trials");
	sub->add_option("--mc-samples", c.mc_samples, "Monte Carlo sample count");
	sub->add_option("--max-iter", c.max_iter, "iteration cap");
	sub->add_option("--out", c.out, "output path (default stdout)");
	sub->add_option("--format", c.format, "csv | json")
		->check(CLI::IsMember({"csv", "json"}));
	sub->set_config("--config", "", "config file, key=value lines; flags override");
}

std::string fmt(double v) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.10g", v);
	return buf;
}

void emit(const Common& c, const std::string& text) {
	if (c.out.empty()) {
		std::cout << text;
	} else {
		std::ofstream f(c.out, std::ios::binary);
		if (!f)
			throw sparc::parameter_error("cannot open output file: " + c.out);
		f << text;
	}
}

std::string header_line(const std::string& mode, const std::string& canonical) {
	char buf[96];
	std::snprintf(buf, sizeof buf, "# sparc-v1 mode=%s config=%016llx\n", mode.c_str(),
	              static_cast<unsigned long long>(sparc::bench::config_hash(canonical)));
	return buf;
}

void warn_b(int B) {
	if (B >= 2 && (B & (B - 1)) != 0)
		std::cerr << "warning: B=" << B << " is not a power of 2; message mapping is still exact\n";
}

sparc::Message read_message_file(const std::string& path) {
	std::ifstream f(path);
	if (!f)
		throw sparc::parameter_error("cannot open message file: " + path);
	sparc::Message m;
	int v;
	while (f >> v)
		m.push_back(v);
	return m;
}

std::vector<double> parse_list(const std::string& s) {
	std::vector<double> out;
	std::stringstream ss(s);
	std::string tok;
	while (std::getline(ss, tok, ','))
		if (!tok.empty())
			out.push_back(std::stod(tok));
	if (out.empty())
		throw sparc::parameter_error("empty list: " + s);
	return out;
}

std::string canonical_common(const std::string& mode, const Common& c) {
	std::ostringstream os;
	os << "mode=" << mode << " L=" << c.L << " B=" << c.B << " R=" << fmt(c.R)
	   << " snr=" << fmt(c.snr) << " seed=" << c.seed << " trials=" << c.trials
	   << " mc=" << c.mc_samples << " max_iter=" << c.max_iter;
	return os.str();
}

json matrix_header(const sparc::CodeParams& p, std::uint64_t seed) {
	return json{{"seed", seed}, {"M", p.M}, {"N", p.N}, {"L", p.L},
	            {"B", p.B},     {"R", p.R}, {"R_eff", p.R_eff}, {"snr", p.snr}};
}

int cmd_encode(const Common& c, const std::string& msg_file) {
	warn_b(c.B);
	const sparc::CodeParams p = sparc::CodeParams::make(c.L, c.B, c.R, c.snr);
	sparc::Message msg;
	if (!msg_file.empty()) {
		msg = read_message_file(msg_file);
		if (static_cast<long>(msg.size()) != p.L)
			throw sparc::parameter_error("message length does not match L");
	} else {
		const std::uint64_t key = sparc::rng::derive(c.seed, sparc::rng::tag("msg"));
		msg.resize(p.L);
		for (long l = 0; l < p.L; ++l)
			msg[l] = sparc::rng::uniform_index1(key, static_cast<std::uint64_t>(l), p.B);
	}
	const sparc::CodingMatrix F = sparc::sample_coding_matrix(c.seed, p);
	const std::vector<double> x = sparc::section_encode(msg, p.B);
	const std::vector<double> y = sparc::encode(F, x);
	std::ostringstream os;
	os << matrix_header(p, c.seed).dump() << "\n";
	for (double v : y)
		os << fmt(v) << "\n";
	emit(c, os.str());
	return 0;
}

// header JSON + one value per line
std::pair<json, std::vector<double>> read_values_file(const std::string& path) {
	std::ifstream f(path);
	if (!f)
		throw sparc::parameter_error("cannot open input file: " + path);
	std::string first;
	std::getline(f, first);
	json hdr = json::parse(first);
	std::vector<double> vals;
	double v;
	while (f >> v)
		vals.push_back(v);
	return {hdr, vals};
}

int cmd_decode(const Common& c, const std::string& in_file, const std::string& trace_file) {
	auto [hdr, y] = read_values_file(in_file);
	const sparc::CodeParams p = sparc::CodeParams::make(
		hdr.at("L").get<long>(), hdr.at("B").get<int>(), hdr.at("R").get<double>(),
		hdr.at("snr").get<double>());
	if (static_cast<long>(y.size()) != p.M)
		throw sparc::parameter_error("decode: input length does not match M");
	const sparc::CodingMatrix F =
		sparc::sample_coding_matrix(hdr.at("seed").get<std::uint64_t>(), p);
	sparc::AmpOptions opts;
	opts.max_iter = c.max_iter;
	const sparc::AmpResult res = sparc::run_amp(F, y, p, opts);
	std::ostringstream os;
	for (int s : res.msg)
		os << s << "\n";
	emit(c, os.str());
	if (!trace_file.empty()) {
		std::ofstream tf(trace_file, std::ios::binary);
		tf << "t,E,SER,mse_estimate,diverged\n";
		for (const sparc::TracePoint& tp : res.state.trace)
			tf << tp.t << "," << fmt(tp.E) << "," << fmt(tp.ser) << "," << fmt(tp.mse_est)
			   << "," << (tp.diverged ? 1 : 0) << "\n";
	}
	return res.state.diverged ? 3 : 0;
}

int cmd_simulate(const Common& c) {
	warn_b(c.B);
	const sparc::CodeParams p = sparc::CodeParams::make(c.L, c.B, c.R, c.snr);
	const sparc::bench::Instance inst =
		sparc::bench::make_instance(p, sparc::bench::trial_seed(c.seed, 0));
	sparc::AmpOptions opts;
	opts.max_iter = c.max_iter;
	const sparc::AmpResult res = sparc::run_amp(inst.F, inst.y, p, opts, &inst.x);
	std::ostringstream os;
	os << header_line("simulate", canonical_common("simulate", c));
	os << "t,E,SER,mse_estimate,diverged\n";
	for (const sparc::TracePoint& tp : res.state.trace)
		os << tp.t << "," << fmt(tp.E) << "," << fmt(tp.ser) << "," << fmt(tp.mse_est) << ","
		   << (tp.diverged ? 1 : 0) << "\n";
	emit(c, os.str());
	std::cerr << "final SER=" << res.state.trace.back().ser
	          << " iterations=" << res.state.t << (res.state.diverged ? " (diverged)" : "")
	          << "\n";
	return res.state.diverged ? 3 : 0;
}

int cmd_de(const Common& c, int de_max_iter, double tol, bool threshold, double r_lo, double r_hi,
           double tol_r) {
	sparc::de::DeParams p;
	p.B = c.B;
	p.R = c.R;
	p.snr = c.snr;
	p.mc_samples = c.mc_samples;
	p.seed = c.seed;
	p.max_iter = de_max_iter;
	p.tol = tol;
	if (threshold) {
		const double rbp =
			sparc::de::bp_threshold_de(c.snr, c.B, r_lo, r_hi, tol_r, c.mc_samples, c.seed);
		json j{{"snr", c.snr},   {"B", c.B},
		       {"R_bp", rbp},    {"tol_r", tol_r},
		       {"ser_cut", sparc::de::ser_cut(c.B)},
		       {"mc_samples", c.mc_samples},
		       {"seed", c.seed}};
		emit(c, j.dump(2) + "\n");
		return 0;
	}
	const sparc::de::DeTrajectory traj = sparc::de::run_de(p);
	std::ostringstream os;
	os << header_line("de", canonical_common("de", c));
	os << "t,E,SER,stderr_E,stderr_SER\n";
	for (const sparc::de::DePoint& pt : traj.points)
		os << pt.t << "," << fmt(pt.E) << "," << fmt(pt.ser) << "," << fmt(pt.stderr_E) << ","
		   << fmt(pt.stderr_ser) << "\n";
	emit(c, os.str());
	std::cerr << "fixed_point_E=" << traj.fixed_point_E << " converged=" << traj.converged
	          << "\n";
	return 0;
}

int cmd_replica(const Common& c, const std::string& threshold_kind, double r_lo, double r_hi,
                double tol_r) {
	sparc::replica::PhiParams p;
	p.B = c.B;
	p.R = c.R;
	p.snr = c.snr;
	p.mc_samples = c.mc_samples;
	p.seed = c.seed;
	if (!threshold_kind.empty()) {
		double r;
		std::string key;
		if (threshold_kind == "optimal") {
			r = sparc::replica::optimal_threshold(c.snr, c.B, r_lo, r_hi, tol_r, p);
			key = "R_opt";
		} else if (threshold_kind == "bp") {
			r = sparc::replica::bp_threshold_appearance(c.snr, c.B, r_lo, r_hi, tol_r, p);
			key = "R_bp";
		} else {
			throw sparc::parameter_error("--threshold must be bp or optimal");
		}
		json j{{"snr", c.snr}, {"B", c.B}, {key, r}, {"tol_r", tol_r},
		       {"mc_samples", c.mc_samples}, {"seed", c.seed}};
		emit(c, j.dump(2) + "\n");
		return 0;
	}
	const sparc::replica::PotentialCurve curve =
		sparc::replica::find_maxima(p, sparc::replica::GridSpec{}, /*with_ser=*/true);
	std::ostringstream os;
	os << header_line("replica", canonical_common("replica", c));
	os << "E,SER,phi,stderr\n";
	for (const sparc::replica::GridPoint& g : curve.grid)
		os << fmt(g.E) << "," << fmt(g.ser) << "," << fmt(g.phi) << "," << fmt(g.stderr_)
		   << "\n";
	emit(c, os.str());
	for (const sparc::replica::MaxPoint& m : curve.maxima)
		std::cerr << "maximum at E=" << m.E << " phi=" << m.phi << "\n";
	return 0;
}

std::vector<double> rate_grid(double r_min, double r_max, double r_step) {
	std::vector<double> g;
	for (double r = r_min; r <= r_max + 1e-12; r += r_step)
		g.push_back(r);
	return g;
}

int cmd_protocol(const Common& c, int which, double r_min, double r_max, double r_step,
                 double p_cut) {
	warn_b(c.B);
	const std::vector<double> grid = rate_grid(r_min, r_max, r_step);
	sparc::bench::ProtocolOptions opts;
	opts.trials = c.trials;
	opts.max_iter = c.max_iter;
	opts.p_cut = p_cut;
	const std::string mode = which == 1 ? "protocol1" : "protocol2";
	const sparc::bench::ProtocolResult res =
		which == 1 ? sparc::bench::protocol1(c.L, c.B, c.snr, grid, c.seed, opts)
		           : sparc::bench::protocol2(c.L, c.B, c.snr, grid, c.seed, opts);
	std::ostringstream os;
	os << header_line(mode, canonical_common(mode, c) + " r_min=" + fmt(r_min) +
	                            " r_max=" + fmt(r_max) + " r_step=" + fmt(r_step));
	os << "# achieved_rate=" << fmt(res.achieved_rate) << "\n";
	if (c.format == "json") {
		json arr = json::array();
		for (const sparc::bench::RateRecord& r : res.records)
			arr.push_back({{"R", r.R}, {"trials", r.trials}, {"failures", r.failures},
			               {"p_epsilon", r.p_epsilon}, {"pass", r.pass}});
		os << json{{"achieved_rate", res.achieved_rate}, {"records", arr}}.dump(2) << "\n";
	} else {
		os << "R,trials,failures,p_epsilon,pass\n";
		for (const sparc::bench::RateRecord& r : res.records)
			os << fmt(r.R) << "," << r.trials << "," << r.failures << "," << fmt(r.p_epsilon)
			   << "," << (r.pass ? 1 : 0) << "\n";
	}
	emit(c, os.str());
	return 0;
}

int cmd_phase_diagram(const Common& c, const std::string& b_list, const std::string& snr_list,
                      double tol_r) {
	std::vector<double> xs;
	sparc::bench::PhaseMode mode;
	double fixed;
	if (!snr_list.empty()) {
		mode = sparc::bench::PhaseMode::SweepSnr;
		xs = parse_list(snr_list);
		fixed = c.B;
	} else {
		mode = sparc::bench::PhaseMode::SweepB;
		xs = b_list.empty() ? std::vector<double>{2, 4, 8, 16} : parse_list(b_list);
		fixed = c.snr;
	}
	const std::vector<sparc::bench::PhasePoint> pts =
		sparc::bench::phase_diagram(fixed, mode, xs, c.mc_samples, c.seed, tol_r);
	std::ostringstream os;
	os << header_line("phase-diagram", canonical_common("phase-diagram", c) + " xs=" +
	                                       (snr_list.empty() ? b_list : snr_list));
	os << "x,bp_threshold,optimal_threshold,capacity,bp_gap_db,optimal_gap_db\n";
	for (const sparc::bench::PhasePoint& p : pts) {
		auto cell = [](double v) { return std::isnan(v) ? std::string("no-transition") : fmt(v); };
		os << fmt(p.x) << "," << cell(p.bp) << "," << cell(p.optimal) << "," << fmt(p.cap)
		   << "," << cell(p.bp_gap_db) << "," << cell(p.optimal_gap_db) << "\n";
	}
	emit(c, os.str());
	return 0;
}

int cmd_ser_curve(const Common& c, const std::string& sweep, const std::string& list) {
	sparc::replica::PhiParams base;
	base.mc_samples = c.mc_samples;
	base.seed = c.seed;
	const std::vector<double> xs = parse_list(list);
	sparc::replica::Sweep sw;
	double fixed_other;
	if (sweep == "B") {
		sw = sparc::replica::Sweep::OverB;
		fixed_other = c.snr;
	} else if (sweep == "snr") {
		sw = sparc::replica::Sweep::OverSnr;
		fixed_other = c.B;
	} else {
		throw sparc::parameter_error("--sweep must be B or snr");
	}
	const sparc::replica::SerCurve curve =
		sparc::replica::optimal_ser_curve(c.R, fixed_other, sw, xs, base);
	std::ostringstream os;
	os << header_line("ser-curve",
	                  canonical_common("ser-curve", c) + " sweep=" + sweep + " xs=" + list);
	os << "# exponent=" << fmt(curve.exponent) << "\n";
	os << "x,E_star,SER\n";
	for (const sparc::replica::SerCurvePoint& p : curve.points)
		os << fmt(p.x) << "," << fmt(p.E_star) << "," << fmt(p.ser) << "\n";
	emit(c, os.str());
	return 0;
}

int cmd_fixed_n(const Common& c, long N, const std::string& b_list) {
	const std::vector<double> bs =
		b_list.empty() ? std::vector<double>{2, 4, 8, 16} : parse_list(b_list);
	std::vector<int> B_list(bs.begin(), bs.end());
	sparc::bench::ProtocolOptions opts;
	opts.max_iter = c.max_iter;
	const std::vector<sparc::bench::FixedNPoint> pts =
		sparc::bench::fixed_N_sweep(N, B_list, c.snr, c.R, c.trials, c.seed, opts);
	std::ostringstream os;
	os << header_line("fixed-n", canonical_common("fixed-n", c) + " N=" + std::to_string(N));
	os << "B,L,trials,failures,p_epsilon\n";
	for (const sparc::bench::FixedNPoint& p : pts)
		os << p.B << "," << p.L << "," << p.trials << "," << p.failures << ","
		   << fmt(p.p_epsilon) << "\n";
	emit(c, os.str());
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"sparse superposition codes over AWGN: codec and analysis toolkit"};
	app.require_subcommand(1);

	Common c;
	std::string msg_file, in_file, trace_file, threshold_kind, b_list, snr_list, sweep_kind,
		sweep_list;
	bool de_threshold = false;
	int de_max_iter = 200;
	double de_tol = 1e-9;
	double r_lo = 0.5, r_hi = 1.9, tol_r = 0.01;
	double r_min = 0.5, r_max = 1.9, r_step = 0.05, p_cut = 1e-2;
	long fixed_N = 4096;

	auto* enc = app.add_subcommand("encode", "encode a message to a codeword");
	add_common(enc, c);
	enc->add_option("--msg-file", msg_file, "newline-delimited 1-based section indices");

	auto* dec = app.add_subcommand("decode", "AMP-decode a received vector file");
	add_common(dec, c);
	dec->add_option("--in", in_file, "input: JSON header line then one value per line")
		->required();
	dec->add_option("--trace", trace_file, "write the decoder trace CSV here");

	auto* sim = app.add_subcommand("simulate", "end-to-end seeded instance, trace CSV");
	add_common(sim, c);

	auto* de_cmd = app.add_subcommand("de", "density-evolution trajectory or BP threshold");
	add_common(de_cmd, c);
	de_cmd->add_option("--de-max-iter", de_max_iter, "DE iteration cap");
	de_cmd->add_option("--tol", de_tol, "DE fixed-point tolerance");
	de_cmd->add_flag("--threshold", de_threshold, "bisect the BP threshold instead");
	de_cmd->add_option("--r-lo", r_lo, "bracket low rate");
	de_cmd->add_option("--r-hi", r_hi, "bracket high rate");
	de_cmd->add_option("--tol-r", tol_r, "bisection tolerance on R");

	auto* rep = app.add_subcommand("replica", "potential curve or replica thresholds");
	add_common(rep, c);
	rep->add_option("--threshold", threshold_kind, "bp | optimal");
	rep->add_option("--r-lo", r_lo, "bracket low rate");
	rep->add_option("--r-hi", r_hi, "bracket high rate");
	rep->add_option("--tol-r", tol_r, "bisection tolerance on R");

	auto* pd = app.add_subcommand("phase-diagram", "threshold sweep over B or snr");
	add_common(pd, c);
	pd->add_option("--B-list", b_list, "comma-separated section sizes");
	pd->add_option("--snr-list", snr_list, "comma-separated snr values (inset mode, fixed B)");
	pd->add_option("--tol-r", tol_r, "bisection tolerance on R");

	auto* p1 = app.add_subcommand("protocol1", "failure-probability transition over an R grid");
	add_common(p1, c);
	p1->add_option("--r-min", r_min);
	p1->add_option("--r-max", r_max);
	p1->add_option("--r-step", r_step);
	p1->add_option("--p-cut", p_cut, "p_epsilon cut for the transition");

	auto* p2 = app.add_subcommand("protocol2", "10-in-a-row first-try success over an R grid");
	add_common(p2, c);
	p2->add_option("--r-min", r_min);
	p2->add_option("--r-max", r_max);
	p2->add_option("--r-step", r_step);

	auto* sc = app.add_subcommand("ser-curve", "optimal SER sweep with power-law fit");
	add_common(sc, c);
	sc->add_option("--sweep", sweep_kind, "B | snr")->required();
	sc->add_option("--list", sweep_list, "comma-separated sweep values")->required();

	auto* fn = app.add_subcommand("fixed-n", "fix N, sweep B (L = N/B)");
	add_common(fn, c);
	fn->add_option("--N", fixed_N, "total signal dimension");
	fn->add_option("--B-list", b_list, "comma-separated section sizes");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 2;
	}

	try {
		if (enc->parsed())
			return cmd_encode(c, msg_file);
		if (dec->parsed())
			return cmd_decode(c, in_file, trace_file);
		if (sim->parsed())
			return cmd_simulate(c);
		if (de_cmd->parsed())
			return cmd_de(c, de_max_iter, de_tol, de_threshold, r_lo, r_hi, tol_r);
		if (rep->parsed())
			return cmd_replica(c, threshold_kind, r_lo, r_hi, tol_r);
		if (pd->parsed())
			return cmd_phase_diagram(c, b_list, snr_list, tol_r);
		if (p1->parsed())
			return cmd_protocol(c, 1, r_min, r_max, r_step, p_cut);
		if (p2->parsed())
			return cmd_protocol(c, 2, r_min, r_max, r_step, p_cut);
		if (sc->parsed())
			return cmd_ser_curve(c, sweep_kind, sweep_list);
		if (fn->parsed())
			return cmd_fixed_n(c, fixed_N, b_list);
	} catch (const sparc::parameter_error& e) {
		std::cerr << "parameter error: " << e.what() << "\n";
		return 2;
	} catch (const sparc::numeric_domain_error& e) {
		std::cerr << "numeric domain error: " << e.what() << "\n";
		return 2;
	} catch (const sparc::bracketing_error& e) {
		std::cerr << "bracketing error: " << e.what() << "\n";
		return 3;
	} catch (const sparc::divergence_error& e) {
		std::cerr << "divergence: " << e.what() << "\n";
		return 3;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
