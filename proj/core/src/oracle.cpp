#include "sparc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sparc/quadrature.hpp"

namespace sparc::oracle {

Message ml_decode(const CodingMatrix& F, std::span<const double> y, const CodeParams& p) {
	double count = 1.0;
	for (long l = 0; l < p.L; ++l) {
		count *= p.B;
		if (count > static_cast<double>(1 << 20))
			throw enumeration_error("ml_decode: B^L exceeds the 2^20 enumeration budget");
	}
	const long L = p.L, M = p.M;
	const int B = p.B;

	// reflected mixed-radix Gray enumeration: one digit changes by +-1
	// per step, so the residual needs just one column swap
	std::vector<int> a(L, 0), o(L, 1), f(L + 1);
	for (long j = 0; j <= L; ++j)
		f[j] = static_cast<int>(j);

	std::vector<double> r(y.begin(), y.end());
	for (long l = 0; l < L; ++l) {
		const float* c = F.col(l * B);
		for (long mu = 0; mu < M; ++mu)
			r[mu] -= c[mu];
	}

	std::vector<int> best;
	double best_norm = 0.0;
	auto visit = [&]() {
		double n2 = 0.0;
		for (long mu = 0; mu < M; ++mu)
			n2 += r[mu] * r[mu];
		if (best.empty() || n2 < best_norm || (n2 == best_norm && a < best)) {
			best = a;
			best_norm = n2;
		}
	};

	visit();
	for (;;) {
		const int j = f[0];
		f[0] = 0;
		if (j == L)
			break;
		const int old_d = a[j];
		a[j] += o[j];
		const int new_d = a[j];
		if (new_d == 0 || new_d == B - 1) {
			o[j] = -o[j];
			f[j] = f[j + 1];
			f[j + 1] = j + 1;
		}
		const float* c_old = F.col(static_cast<long>(j) * B + old_d);
		const float* c_new = F.col(static_cast<long>(j) * B + new_d);
		for (long mu = 0; mu < M; ++mu)
			r[mu] += c_old[mu] - c_new[mu];
		visit();
	}

	Message msg(L);
	for (long l = 0; l < L; ++l)
		msg[l] = best[l] + 1;
	return msg;
}

namespace {

double lse2(double x, double y) {
	const double m = x > y ? x : y;
	return m + std::log1p(std::exp((x > y ? y : x) - m));
}

} // namespace

double quad_reference_b2(Kind kind, double E, double R, double snr, int nodes) {
	const double q = 1.0 / snr + E;
	const double Sigma = std::sqrt(q * R); // log2(2) = 1
	const double inv = 1.0 / Sigma, inv2 = inv * inv;

	// Composite Gauss-Legendre against the N(0,2) density, with panel
	// boundaries at the sigmoid transition points +-Sigma^{-1}; the
	// Gauss-Hermite rule stalls near 1e-8 here because the integrands
	// have poles within pi*Sigma of the real axis.
	const double U = 14.0; // exp(-U^2/4) ~ 5e-22
	const double c2 = 1.0 / std::sqrt(4.0 * std::acos(-1.0));
	auto expect = [&](auto&& f, double lo, double hi, std::vector<double> cuts) {
		cuts.push_back(lo);
		cuts.push_back(hi);
		std::sort(cuts.begin(), cuts.end());
		double s = 0.0;
		for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
			const double a = std::max(lo, cuts[p]), b = std::min(hi, cuts[p + 1]);
			if (b <= a)
				continue;
			const quad::Rule gl = quad::gauss_legendre(nodes, a, b);
			for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
				const double u = gl.nodes[k];
				s += gl.weights[k] * c2 * std::exp(-u * u / 4.0) * f(u);
			}
		}
		return s;
	};

	switch (kind) {
	case Kind::DeStep:
		return expect(
		    [&](double u) {
			    const double a1 = 1.0 / (1.0 + std::exp(-inv2 + u * inv));
			    const double a0 = 1.0 / (1.0 + std::exp(inv2 + u * inv));
			    return (a1 - 1.0) * (a1 - 1.0) + a0 * a0;
		    },
		    -U, U, {-inv, 0.0, inv});
	case Kind::Ser:
		// P(u > 1/Sigma), u ~ N(0,2), by direct tail integration
		return expect([](double) { return 1.0; }, inv, inv + 20.0,
		              {inv + 4.0, inv + 8.0, inv + 14.0});
	case Kind::Phi: {
		const double head = -1.0 / (2.0 * R) * (std::log(q) + (1.0 - E) / q);
		const double A2 = 0.5 * inv2;
		return head +
		       expect([&](double u) { return lse2(A2, -A2 + u * inv); }, -U, U, {-inv, 0.0, inv});
	}
	}
	return 0.0;
}

} // namespace sparc::oracle
