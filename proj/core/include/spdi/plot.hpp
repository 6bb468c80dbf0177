#pragma once

#include <optional>
#include <string>

#include "spdi/explorer.hpp"
#include "spdi/model.hpp"

namespace spdi {

struct PlotLayers {
  const ReachTask* task = nullptr;
  const Witness* witness = nullptr;
};

// Standalone SVG; y grows upwards as in the model. Throws Error when the
// witness references edges outside the SPDI.
std::string render_plot(const Spdi& spdi, const PlotLayers& layers = {});

}  // namespace spdi
