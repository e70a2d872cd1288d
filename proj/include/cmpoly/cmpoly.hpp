#pragma once

// Umbrella header for the library (the CLI lives in cmpoly/cli.hpp).

#include "cmpoly/errors.hpp"
#include "cmpoly/facet_family.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/inequality.hpp"
#include "cmpoly/matchings.hpp"
#include "cmpoly/msi.hpp"
#include "cmpoly/polytope.hpp"
#include "cmpoly/rational.hpp"
#include "cmpoly/simplex.hpp"
#include "cmpoly/solver.hpp"
