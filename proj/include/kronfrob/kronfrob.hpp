#pragma once

// Umbrella header for the Kronecker-quiver Frobenius manifold toolkit.

#include "charts.hpp"
#include "fd.hpp"
#include "frobenius.hpp"
#include "io.hpp"
#include "mat2.hpp"
#include "root_lattice.hpp"
#include "spectral.hpp"
#include "verify.hpp"
