#pragma once

#include <string>

#include "vigil/scenario.hpp"
#include "vigil/sensor_types.hpp"

namespace vigil {

// Columnar text serialization of a SensorBundle: one CSV file per stream
// (frames.csv, accel.csv, ppg.csv, pir.csv; header line then rows) plus
// meta.cfg, a scenario-format dump that makes the bundle self-contained for
// replay. Frame pixels are a single uppercase-hex column, two digits per
// pixel, row-major. Floating-point columns round-trip exactly.
void write_bundle(const SensorBundle& bundle, const ScenarioSpec& spec, const std::string& dir);

struct LoadedBundle {
    SensorBundle bundle;
    ScenarioSpec spec;
};

// Throws FormatError on malformed files or when the frame/accel/ppg streams
// do not all span the scripted duration (within one sample period).
LoadedBundle load_bundle(const std::string& dir);

}  // namespace vigil
