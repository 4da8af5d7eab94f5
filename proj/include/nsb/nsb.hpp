#pragma once

#include "nsb/analytic.hpp"
#include "nsb/constants.hpp"
#include "nsb/diagnostics.hpp"
#include "nsb/errors.hpp"
#include "nsb/fft.hpp"
#include "nsb/integrator.hpp"
#include "nsb/io.hpp"
#include "nsb/pde.hpp"
#include "nsb/runner.hpp"
#include "nsb/scenarios.hpp"
