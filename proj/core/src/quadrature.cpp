#include "sparc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sparc::quad {

// Roots of H_n by Newton iteration on the normalized recurrence.
Rule gauss_hermite(int n) {
	if (n < 1)
		throw std::invalid_argument("gauss_hermite: n must be >= 1");
	const double eps = 1e-14;
	const double pim4 = 0.7511255444649425; // pi^{-1/4}
	Rule r;
	r.nodes.assign(n, 0.0);
	r.weights.assign(n, 0.0);
	const int m = (n + 1) / 2;
	double z = 0.0;
	for (int i = 0; i < m; ++i) {
		if (i == 0)
			z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
		else if (i == 1)
			z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
		else if (i == 2)
			z = 1.86 * z - 0.86 * r.nodes[0];
		else if (i == 3)
			z = 1.91 * z - 0.91 * r.nodes[1];
		else
			z = 2.0 * z - r.nodes[i - 2];
		double pp = 0.0;
		for (int it = 0; it < 100; ++it) {
			double p1 = pim4, p2 = 0.0;
			for (int j = 0; j < n; ++j) {
				const double p3 = p2;
				p2 = p1;
				p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
			}
			pp = std::sqrt(2.0 * n) * p2;
			const double z1 = z;
			z = z1 - p1 / pp;
			if (std::abs(z - z1) <= eps)
				break;
		}
		r.nodes[i] = z;
		r.nodes[n - 1 - i] = -z;
		r.weights[i] = 2.0 / (pp * pp);
		r.weights[n - 1 - i] = r.weights[i];
	}
	return r;
}

Rule gauss_legendre(int n, double a, double b) {
	if (n < 1)
		throw std::invalid_argument("gauss_legendre: n must be >= 1");
	const double eps = 1e-14;
	Rule r;
	r.nodes.assign(n, 0.0);
	r.weights.assign(n, 0.0);
	const int m = (n + 1) / 2;
	const double xm = 0.5 * (b + a);
	const double xl = 0.5 * (b - a);
	for (int i = 0; i < m; ++i) {
		double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
		double pp = 0.0;
		for (int it = 0; it < 100; ++it) {
			double p1 = 1.0, p2 = 0.0;
			for (int j = 0; j < n; ++j) {
				const double p3 = p2;
				p2 = p1;
				p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
			}
			pp = n * (z * p1 - p2) / (z * z - 1.0);
			const double z1 = z;
			z = z1 - p1 / pp;
			if (std::abs(z - z1) <= eps)
				break;
		}
		r.nodes[i] = xm - xl * z;
		r.nodes[n - 1 - i] = xm + xl * z;
		r.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
		r.weights[n - 1 - i] = r.weights[i];
	}
	return r;
}

} // namespace sparc::quad
