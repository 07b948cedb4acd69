#pragma once

// SVG 1.1 figures for halfplane patterns: boundary lines, outward/inward
// normals on the unit circle, and the covering arcs of the spanning
// triples, in the style of the pattern figures.

#include <string>

#include "linepin/pattern.hpp"

namespace linepin::svg {

std::string pattern_figure(const HalfplanePattern& P, const PatternVerdict& verdict);

void write_pattern_figure(const std::string& path, const HalfplanePattern& P,
                          const PatternVerdict& verdict);

} // namespace linepin::svg
