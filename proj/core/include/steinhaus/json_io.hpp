#pragma once

#include <string>

#include "steinhaus/dyadic.hpp"
#include "steinhaus/intervals.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/params.hpp"

namespace steinhaus {

// Parse failures throw ParameterError carrying "line L, column C".

// {"dim", "resolution", "cells": [[i, j, ...], ...], "scale": "1", "anchor": ["0", ...]}
std::string to_json(const GridSet& e);
GridSet grid_set_from_json(const std::string& text);

// {"dim", "resolution", "cells": [[i, j, ..., weight], ...], "origin": [...], "scale"}
std::string to_json(const CellMeasure& mu);
CellMeasure cell_measure_from_json(const std::string& text);

// {"intervals": [{"lo_sq", "hi_sq", "lo", "hi"}, ...]}
std::string to_json(const IntervalSet& s);

// Inputs {"d", "kappa", "rho", "N", "alpha", "C0"}; output adds every derived constant and check.
std::string to_json(const ParamBundle& b);
ParamBundle param_bundle_from_json(const std::string& text);

// Location of a byte offset as "line L, column C" (1-based).
std::string text_position(const std::string& text, std::size_t offset);

}  // namespace steinhaus
