#pragma once

#include "digisurf/canonical.hpp"
#include "digisurf/cliques.hpp"
#include "digisurf/cover.hpp"
#include "digisurf/cover_io.hpp"
#include "digisurf/errors.hpp"
#include "digisurf/graph.hpp"
#include "digisurf/graph_io.hpp"
#include "digisurf/homotopy.hpp"
#include "digisurf/manifold.hpp"
#include "digisurf/rational.hpp"
