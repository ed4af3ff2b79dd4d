#pragma once

// Umbrella header: QUBO instances, the linearization catalog, the LP/MILP
// solvers, verification oracles and the comparison harness.

#include "qubolin/acceptance.hpp"
#include "qubolin/branch_bound.hpp"
#include "qubolin/build.hpp"
#include "qubolin/common.hpp"
#include "qubolin/generate.hpp"
#include "qubolin/harness.hpp"
#include "qubolin/io.hpp"
#include "qubolin/lp_format.hpp"
#include "qubolin/milp.hpp"
#include "qubolin/model_id.hpp"
#include "qubolin/mps_format.hpp"
#include "qubolin/oracle.hpp"
#include "qubolin/qubo.hpp"
#include "qubolin/simplex.hpp"
#include "qubolin/weights.hpp"
