#pragma once

// Umbrella header.

#include "qwd/bench.hpp"
#include "qwd/clifford.hpp"
#include "qwd/connectivity.hpp"
#include "qwd/dense.hpp"
#include "qwd/diagonalizer.hpp"
#include "qwd/gf2.hpp"
#include "qwd/partition.hpp"
#include "qwd/pauli.hpp"
#include "qwd/version.hpp"
