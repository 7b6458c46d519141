#include "bdpgo/trajgen/stream.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace bdpgo {

StreamTiming parse_stream_timing(const std::string& s) {
  if (s == "round_robin") return StreamTiming::round_robin;
  if (s == "stretched") return StreamTiming::stretched;
  throw ParameterError("unknown stream timing '" + s + "'");
}

std::string to_string(StreamTiming t) {
  return t == StreamTiming::round_robin ? "round_robin" : "stretched";
}

std::vector<KeyframeEvent> schedule_stream(const PoseGraph& graph, std::vector<RobotPath>& paths,
                                           StreamTiming timing) {
  std::size_t horizon = 0;
  for (const auto& p : paths) horizon = std::max(horizon, p.keyframes.size());

  std::vector<KeyframeEvent> events;
  for (auto& p : paths) {
    p.ticks.clear();
    const std::size_t len = p.keyframes.size();
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t tick = timing == StreamTiming::round_robin ? j : j * horizon / len;
      p.ticks.push_back(tick);
      KeyframeEvent ev;
      ev.tick = tick;
      ev.robot = p.robot;
      ev.seq = j;
      ev.id = p.keyframes[j];
      events.push_back(std::move(ev));
    }
  }
  std::sort(events.begin(), events.end(), [](const KeyframeEvent& a, const KeyframeEvent& b) {
    return std::tie(a.tick, a.robot, a.seq) < std::tie(b.tick, b.robot, b.seq);
  });

  std::vector<std::size_t> position(graph.num_vertices(), events.size());
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto i = graph.index_of(events[k].id);
    if (position[i] != events.size()) throw DataError("keyframe appears in two paths");
    position[i] = k;
  }
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const auto [a, b] = graph.endpoints(e);
    const std::size_t later = std::max(position[a], position[b]);
    if (later == events.size()) continue;  // an endpoint is never delivered
    events[later].edges.push_back(e);
  }
  return events;
}

void write_paths_csv(std::ostream& os, std::span<const KeyframeEvent> events) {
  os << "robot,tick,keyframe_id\n";
  for (const auto& ev : events) os << ev.robot << ',' << ev.tick << ',' << ev.id.value << '\n';
}

}  // namespace bdpgo
