#pragma once

#include <cstddef>
#include <vector>

#include "mgb/montecarlo.hpp"

// Reference computations that share no code with the library beyond its
// data types.
namespace oracle {

/// (e^t - 1 - t)/t^2 = sum_k t^k/(k+2)!, summed in long double.
long double series_g(long double t);
/// (cosh t - 1)/t^2 = sum_k t^{2k}/(2k+2)!, summed in long double.
long double series_c(long double t);

struct Atom {
    double value;
    double probability;
};

/// Exact P(event) for an i.i.d. finite-support walk, by walking every one
/// of |atoms|^n paths. Characteristics are rebuilt from their definitions.
/// SOME_K and MAX_TERMINAL only.
long double enumerate_event(const std::vector<Atom>& atoms, const mgb::EventSpec& spec);

}  // namespace oracle
