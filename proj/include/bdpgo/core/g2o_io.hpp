#pragma once

#include "bdpgo/core/pose_graph.hpp"

#include <filesystem>
#include <istream>
#include <ostream>

namespace bdpgo {

/// Reads VERTEX_SE3:QUAT / EDGE_SE3:QUAT and VERTEX_SE2 / EDGE_SE2 records.
/// SE(2) records are lifted to SE(3) (yaw about z, zero height). Information
/// matrices collapse to omega_t = sqrt(mean translation diagonal) and
/// omega_R = sqrt(mean rotation diagonal), so omega^2 carries the information.
/// `FIX` records are accepted and ignored; '#' starts a comment line.
PoseGraph parse_g2o(std::istream& in);
PoseGraph load_g2o(const std::filesystem::path& path);

/// Writes VERTEX_SE3:QUAT / EDGE_SE3:QUAT records with a diagonal information
/// matrix (omega^2 on the diagonal). Doubles are written with full precision.
void write_g2o(std::ostream& out, const PoseGraph& graph);
void save_g2o(const std::filesystem::path& path, const PoseGraph& graph);

}  // namespace bdpgo
