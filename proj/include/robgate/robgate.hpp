#pragma once

#include "robgate/analysis.hpp"
#include "robgate/composite.hpp"
#include "robgate/csv.hpp"
#include "robgate/error.hpp"
#include "robgate/ising.hpp"
#include "robgate/phase_solver.hpp"
#include "robgate/pulse.hpp"
#include "robgate/pulse_program.hpp"
#include "robgate/rotor.hpp"
#include "robgate/spin_ops.hpp"
#include "robgate/tolerances.hpp"
