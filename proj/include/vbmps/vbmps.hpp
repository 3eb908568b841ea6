#pragma once

// Umbrella header: pulls in the whole library.

#include "vbmps/angular_momentum.hpp"
#include "vbmps/config.hpp"
#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"
#include "vbmps/mps.hpp"
#include "vbmps/parent_hamiltonian.hpp"
#include "vbmps/report.hpp"
#include "vbmps/spherical_tensors.hpp"
#include "vbmps/valence_bond.hpp"
#include "vbmps/verification.hpp"
