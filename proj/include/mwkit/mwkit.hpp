// mwkit.hpp — umbrella header

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/decompose.hpp"
#include "mwkit/gaussian.hpp"
#include "mwkit/grid.hpp"
#include "mwkit/json_io.hpp"
#include "mwkit/maslov.hpp"
#include "mwkit/matrix_elements.hpp"
#include "mwkit/mw_descriptor.hpp"
#include "mwkit/quadrature.hpp"
#include "mwkit/sampling.hpp"
#include "mwkit/symplectic.hpp"
#include "mwkit/verify.hpp"
