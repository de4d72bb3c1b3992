#pragma once

#include "ladderpoly/family.hpp"
#include "ladderpoly/io.hpp"
#include "ladderpoly/ladder.hpp"
#include "ladderpoly/limits.hpp"
#include "ladderpoly/matrix.hpp"
#include "ladderpoly/normalized.hpp"
#include "ladderpoly/oracle.hpp"
#include "ladderpoly/poly_engine.hpp"
#include "ladderpoly/polynomial.hpp"
#include "ladderpoly/quadrature.hpp"
#include "ladderpoly/rational.hpp"
