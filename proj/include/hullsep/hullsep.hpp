#ifndef HULLSEP_HULLSEP_HPP
#define HULLSEP_HULLSEP_HPP

#include "bodies.hpp"
#include "cli.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "gram.hpp"
#include "instance.hpp"
#include "oracles.hpp"
#include "qp.hpp"
#include "report.hpp"
#include "simplex_lp.hpp"
#include "state.hpp"
#include "triangle_i.hpp"
#include "triangle_ii.hpp"

#endif
