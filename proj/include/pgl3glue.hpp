#pragma once

#include "pgl3glue/analysis.hpp"
#include "pgl3glue/census.hpp"
#include "pgl3glue/decoration.hpp"
#include "pgl3glue/exact.hpp"
#include "pgl3glue/gluing.hpp"
#include "pgl3glue/io.hpp"
#include "pgl3glue/lattice.hpp"
#include "pgl3glue/model.hpp"
#include "pgl3glue/peripheral.hpp"
#include "pgl3glue/report.hpp"
#include "pgl3glue/solver.hpp"
#include "pgl3glue/triangulation.hpp"
