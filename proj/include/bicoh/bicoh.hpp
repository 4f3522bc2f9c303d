#pragma once

// Everything in one include.

#include "arith.hpp"
#include "cohomology.hpp"
#include "duality.hpp"
#include "error.hpp"
#include "ext.hpp"
#include "groebner.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "profile.hpp"
#include "resolve.hpp"
#include "strand.hpp"
#include "table.hpp"
#include "tame.hpp"
