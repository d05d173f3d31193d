#pragma once

#include "assignment.hpp"
#include "blockmat.hpp"
#include "charpoly.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "ode.hpp"
#include "reduction.hpp"
#include "scalar.hpp"
#include "solvents.hpp"
#include "system.hpp"
