#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kreinlab/io.hpp"

namespace kreinlab::demos {

const std::vector<std::string>& names();

// Throws InternalError when a reproduced identity fails.
json run(const std::string& name, std::uint64_t seed, double tol);

json appendix_b(std::uint64_t seed, double tol);
json maxwell(std::uint64_t seed, double tol, int n = 64);
json pt_spectrum(double tol);
json homotopy(double tol, int points = 50);

}  // namespace kreinlab::demos
