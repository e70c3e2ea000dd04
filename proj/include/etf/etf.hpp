#pragma once

#include "etf/constructions.hpp"
#include "etf/digraph.hpp"
#include "etf/eisenstein.hpp"
#include "etf/errors.hpp"
#include "etf/feasibility.hpp"
#include "etf/frames.hpp"
#include "etf/search.hpp"
#include "etf/seidel.hpp"
