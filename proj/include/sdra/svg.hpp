#pragma once

// Minimal self-contained SVG writers for sweep curves and field maps.

#include <cstddef>
#include <string>
#include <vector>

#include "sdra/fields.hpp"

namespace sdra::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series);

enum class Component { h_z, e_phi, e_r, e_total };

/// Heat map of |component| on the z-plane iz, drawn as annular wedges in
/// the sector's own (r, phi) shape.
std::string field_heatmap(const FieldGrid& grid, std::size_t iz, Component component);

}  // namespace sdra::svg
