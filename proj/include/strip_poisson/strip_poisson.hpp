#pragma once

// Umbrella header for the periodic-strip Poisson library.

#include "strip_poisson/convolution.hpp"
#include "strip_poisson/derivatives.hpp"
#include "strip_poisson/diagnostics.hpp"
#include "strip_poisson/errors.hpp"
#include "strip_poisson/fft.hpp"
#include "strip_poisson/green.hpp"
#include "strip_poisson/grid.hpp"
#include "strip_poisson/io.hpp"
#include "strip_poisson/mft.hpp"
#include "strip_poisson/parallel.hpp"
#include "strip_poisson/presets.hpp"
#include "strip_poisson/quadrature.hpp"
#include "strip_poisson/solver.hpp"
#include "strip_poisson/verify.hpp"
#include "strip_poisson/weight_spaces.hpp"
