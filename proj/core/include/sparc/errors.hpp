#pragma once

#include <stdexcept>
#include <string>

namespace sparc {

struct parameter_error : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

struct numeric_domain_error : std::domain_error {
	using std::domain_error::domain_error;
};

struct bracketing_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct enumeration_error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct divergence_error : std::runtime_error {
	int iteration;
	explicit divergence_error(int t)
		: std::runtime_error("AMP diverged (NaN/Inf) at iteration " + std::to_string(t)),
		  iteration(t) {}
};

} // namespace sparc
