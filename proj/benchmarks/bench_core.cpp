#include <benchmark/benchmark.h>

#include <vector>

#include "sparc/amp.hpp"
#include "sparc/bench.hpp"
#include "sparc/de.hpp"
#include "sparc/model.hpp"
#include "sparc/replica.hpp"

using namespace sparc;

static void BM_matrix_generation(benchmark::State& state) {
	const CodeParams p = CodeParams::make(state.range(0), 2, 1.0, 15.0);
	for (auto _ : state) {
		CodingMatrix F = sample_coding_matrix(1, p);
		benchmark::DoNotOptimize(F.data.data());
	}
	state.SetItemsProcessed(state.iterations() * p.M * p.N);
}
BENCHMARK(BM_matrix_generation)->Arg(256)->Arg(1024);

static void BM_encode(benchmark::State& state) {
	const CodeParams p = CodeParams::make(state.range(0), 4, 1.0, 15.0);
	const bench::Instance in = bench::make_instance(p, 1);
	for (auto _ : state) {
		auto y = encode(in.F, in.x);
		benchmark::DoNotOptimize(y.data());
	}
}
BENCHMARK(BM_encode)->Arg(256)->Arg(1024);

static void BM_amp_step(benchmark::State& state) {
	const CodeParams p = CodeParams::make(state.range(0), 4, 1.3, 15.0);
	const bench::Instance in = bench::make_instance(p, 1);
	AmpState s = amp_init(in.F, in.y, p);
	for (auto _ : state) {
		amp_step(s, in.F, in.y, p.snr);
		benchmark::DoNotOptimize(s.a.data());
	}
	state.SetItemsProcessed(state.iterations() * p.M * p.N);
}
BENCHMARK(BM_amp_step)->Arg(256)->Arg(1024);

static void BM_denoise_section(benchmark::State& state) {
	const int B = static_cast<int>(state.range(0));
	std::vector<double> S2(B, 0.05), R(B, 0.1), a(B), v(B);
	R[0] = 0.9;
	for (auto _ : state) {
		denoise_section(S2, R, a, v);
		benchmark::DoNotOptimize(a.data());
	}
}
BENCHMARK(BM_denoise_section)->Arg(2)->Arg(8)->Arg(32);

static void BM_de_step_quad(benchmark::State& state) {
	de::DeParams p;
	p.B = 2;
	p.R = 1.3;
	p.snr = 15.0;
	for (auto _ : state)
		benchmark::DoNotOptimize(de::de_step(0.3, p).value);
}
BENCHMARK(BM_de_step_quad);

static void BM_de_step_mc(benchmark::State& state) {
	de::DeParams p;
	p.B = static_cast<int>(state.range(0));
	p.R = 1.3;
	p.snr = 15.0;
	p.mc_samples = 100'000;
	for (auto _ : state)
		benchmark::DoNotOptimize(de::de_step_mc(0.3, p).value);
	state.SetItemsProcessed(state.iterations() * p.mc_samples);
}
BENCHMARK(BM_de_step_mc)->Arg(2)->Arg(8);

static void BM_phi_mc(benchmark::State& state) {
	replica::PhiParams p;
	p.B = 4;
	p.R = 1.4;
	p.snr = 15.0;
	p.mc_samples = 100'000;
	for (auto _ : state)
		benchmark::DoNotOptimize(replica::phi(0.3, p).value);
	state.SetItemsProcessed(state.iterations() * p.mc_samples);
}
BENCHMARK(BM_phi_mc);

BENCHMARK_MAIN();
