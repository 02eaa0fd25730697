#pragma once

// Finite-size experiment machinery: seeded instance generation, the two
// decoding protocols, phase-diagram sweeps and the fixed-N sweep.

#include <cstdint>
#include <string>
#include <vector>

#include "sparc/amp.hpp"
#include "sparc/channel.hpp"
#include "sparc/model.hpp"

namespace sparc::bench {

struct Instance {
	CodingMatrix F;
	Message msg;
	std::vector<double> x;
	std::vector<double> y;
};

// All randomness of one trial derives from trial_seed (matrix rows,
// message, noise each on their own tagged stream).
Instance make_instance(const CodeParams& p, std::uint64_t trial_seed);

// Per-trial seed; independent of the rate index so rates share
// instances (common random numbers across a protocol's R grid).
std::uint64_t trial_seed(std::uint64_t master_seed, long trial_index);

struct ProtocolOptions {
	long trials = 1000;    // publication scale is 1e4; desk default is 1e3
	double ser_fail = 0.1; // a trial fails when SER > ser_fail
	double p_cut = 1e-2;   // transition cut on p_epsilon (1e-3 at publication scale)
	int max_iter = 50;
};

struct RateRecord {
	double R;
	long trials;
	long failures;
	double p_epsilon;
	bool pass;
};

struct ProtocolResult {
	std::vector<RateRecord> records;
	double achieved_rate; // largest passing R, NaN if none
};

// Per rate: fresh (F, X, xi) per trial, count SER > ser_fail, pass iff
// p_epsilon < p_cut.
ProtocolResult protocol1(long L, int B, double snr, const std::vector<double>& R_grid,
                         std::uint64_t master_seed, const ProtocolOptions& opts = {});

// Per rate: pass iff 10 consecutive fresh instances all reach
// SER < ser_fail at the first attempt.
ProtocolResult protocol2(long L, int B, double snr, const std::vector<double>& R_grid,
                         std::uint64_t master_seed, const ProtocolOptions& opts = {});

enum class PhaseMode { SweepB, SweepSnr };

struct PhasePoint {
	double x; // B or snr
	double bp;      // DE threshold, NaN if no transition found
	double optimal; // replica threshold, NaN if no transition
	double cap;
	double bp_gap_db;      // 10 log10(snr / snr_needed(threshold))
	double optimal_gap_db;
};

// SweepB: fixed = snr, xs = section sizes. SweepSnr: fixed = B, xs = snr values.
std::vector<PhasePoint> phase_diagram(double fixed, PhaseMode mode, const std::vector<double>& xs,
                                      long mc_samples, std::uint64_t seed, double tol_r = 0.01);

struct FixedNPoint {
	int B;
	long L;
	long trials;
	long failures;
	double p_epsilon;
};

std::vector<FixedNPoint> fixed_N_sweep(long N, const std::vector<int>& B_list, double snr,
                                       double R, long trials, std::uint64_t master_seed,
                                       const ProtocolOptions& opts = {});

// Hash of the canonical config string, printed in every output header.
std::uint64_t config_hash(const std::string& canonical);

} // namespace sparc::bench
