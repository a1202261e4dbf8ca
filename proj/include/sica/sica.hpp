#pragma once

// Umbrella header. roots.hpp is excluded on purpose: it drags in Eigen and
// exists only to cross-check the stability criterion in the test suite.

#include "data.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "lyapunov.hpp"
#include "model.hpp"
#include "nsfd.hpp"
#include "reference.hpp"
#include "stability.hpp"
