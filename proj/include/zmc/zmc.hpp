#pragma once

#include "bjorling.hpp"
#include "catalog.hpp"
#include "chebyshev.hpp"
#include "descriptors.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "fluid.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "jet.hpp"
#include "lorentz.hpp"
#include "null_curve.hpp"
#include "quadrature.hpp"
#include "typechange.hpp"
#include "verify.hpp"
#include "weierstrass.hpp"
