#pragma once

#include <iosfwd>
#include <string>

#include "lasgap/sdp/problem.hpp"

namespace lasgap::sdp {

// SDPA sparse format (".dat-s"). The problem is canonicalized to minimization
// first; entry lines use 1-based upper-triangular indices and constraint 0
// holds the objective. SDPA's objective matrix is read as a maximization
// target, so the minimized objective is written negated and parse undoes it.
void export_sdpa(const SdpProblem& p, std::ostream& sink);
std::string export_sdpa_string(const SdpProblem& p);

SdpProblem parse_sdpa(std::istream& source);
SdpProblem parse_sdpa_string(const std::string& text);

}  // namespace lasgap::sdp
