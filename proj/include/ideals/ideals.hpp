#pragma once

#include "ideals/bits.hpp"
#include "ideals/counting.hpp"
#include "ideals/families.hpp"
#include "ideals/hypergraph.hpp"
#include "ideals/rational.hpp"
#include "ideals/series.hpp"
#include "ideals/solver.hpp"
#include "ideals/tame.hpp"
#include "ideals/trees.hpp"
