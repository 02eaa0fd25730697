#pragma once

#include <vector>

namespace sparc::quad {

struct Rule {
	std::vector<double> nodes;
	std::vector<double> weights;
};

// Gauss-Hermite rule for weight exp(-x^2) on (-inf, inf).
Rule gauss_hermite(int n);

// Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);

// E[f(u)] for u ~ N(0, 2) via a Gauss-Hermite rule (u = 2 x).
template <class F>
double expect_n02(const Rule& gh, F&& f) {
	double s = 0.0;
	for (std::size_t k = 0; k < gh.nodes.size(); ++k)
		s += gh.weights[k] * f(2.0 * gh.nodes[k]);
	return s * 0.5641895835477562869; // 1/sqrt(pi)
}

} // namespace sparc::quad
