#pragma once

#include "levytail/coupling.hpp"
#include "levytail/csv.hpp"
#include "levytail/errors.hpp"
#include "levytail/estimator.hpp"
#include "levytail/measures.hpp"
#include "levytail/parallel.hpp"
#include "levytail/quadrature.hpp"
#include "levytail/reference.hpp"
#include "levytail/rng.hpp"
#include "levytail/simulate.hpp"
#include "levytail/wasserstein.hpp"

namespace levytail {
inline constexpr const char* kVersion = "0.1.0";
}
