#pragma once

#include "arbcolor/ampc.hpp"
#include "arbcolor/arboricity.hpp"
#include "arbcolor/coin_game.hpp"
#include "arbcolor/coloring.hpp"
#include "arbcolor/derand.hpp"
#include "arbcolor/generators.hpp"
#include "arbcolor/graph.hpp"
#include "arbcolor/graph_io.hpp"
#include "arbcolor/kuhn_wattenhofer.hpp"
#include "arbcolor/linial.hpp"
#include "arbcolor/partition.hpp"
#include "arbcolor/pipelines.hpp"
#include "arbcolor/recolor.hpp"
#include "arbcolor/report.hpp"
#include "arbcolor/types.hpp"
