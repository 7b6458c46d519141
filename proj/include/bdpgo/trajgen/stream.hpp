#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/trajgen/paths.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bdpgo {

struct KeyframeEvent {
  std::size_t tick = 0;
  int robot = 0;
  std::size_t seq = 0;  ///< position in the robot's path
  KeyframeId id;
  /// Dataset edge indices whose other endpoint was delivered earlier.
  std::vector<std::size_t> edges;
};

enum class StreamTiming {
  round_robin,  ///< keyframe j of every robot at tick j
  stretched,    ///< keyframe j of robot r at tick floor(j * H / L_r), H the longest path
};

StreamTiming parse_stream_timing(const std::string& s);
std::string to_string(StreamTiming t);

/// Orders all keyframes by (tick, robot) and attaches every dataset edge to
/// the later-delivered endpoint. Fills paths[r].ticks.
std::vector<KeyframeEvent> schedule_stream(const PoseGraph& graph, std::vector<RobotPath>& paths,
                                           StreamTiming timing = StreamTiming::round_robin);

/// CSV with header "robot,tick,keyframe_id", in stream order.
void write_paths_csv(std::ostream& os, std::span<const KeyframeEvent> events);

}  // namespace bdpgo
