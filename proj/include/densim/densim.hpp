#pragma once

// Umbrella header for the core library. The file and command-line layers
// (scenario_io.hpp, cli.hpp) are included separately by the tools that need
// them so library users do not pay for the JSON and CLI dependencies.

#include "densim/composition.hpp"
#include "densim/dynamics.hpp"
#include "densim/errors.hpp"
#include "densim/hilbert.hpp"
#include "densim/measurement.hpp"
#include "densim/observables.hpp"
#include "densim/phase_space.hpp"
#include "densim/scenarios.hpp"
#include "densim/states.hpp"
