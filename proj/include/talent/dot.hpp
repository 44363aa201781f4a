#pragma once

#include <optional>
#include <string>

#include "talent/element.hpp"
#include "talent/graph.hpp"

namespace talent {

/// DOT digraph. Omega groups render as single bold edges labeled "ω".
/// With an element supplied, its core generators are colored distinctly from
/// its exit generators.
std::string export_dot(const Graph& g, const std::optional<Element>& annotate = std::nullopt);

}  // namespace talent
