#pragma once

#include "clk/exact_linalg.hpp"
#include "clk/geometry_render.hpp"
#include "clk/graph_model.hpp"
#include "clk/ktheory.hpp"
#include "clk/presentation.hpp"
#include "clk/semigroup_engine.hpp"
