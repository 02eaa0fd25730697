#pragma once

// Test-support ground truth: exhaustive maximum-likelihood decoding of
// tiny instances (Gray-code enumeration, one column swap per step) and
// deterministic 1-d quadrature references for the B=2 reductions.

#include <span>

#include "sparc/model.hpp"

namespace sparc::oracle {

// argmin over all B^L messages of ||y - F section_encode(m)||^2,
// ties broken lowest-lexicographic. Requires B^L <= 2^20.
Message ml_decode(const CodingMatrix& F, std::span<const double> y, const CodeParams& p);

enum class Kind { DeStep, Ser, Phi };

// Independent B=2 reference values computed by direct 1-d integration.
double quad_reference_b2(Kind kind, double E, double R, double snr, int nodes = 64);

} // namespace sparc::oracle
