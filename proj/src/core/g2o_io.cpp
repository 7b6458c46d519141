#include "bdpgo/core/g2o_io.hpp"

#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/so3.hpp"

#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace bdpgo {
namespace {

Mat3 quat_to_matrix(double qx, double qy, double qz, double qw, std::size_t line) {
  const double n = std::sqrt(qx * qx + qy * qy + qz * qz + qw * qw);
  if (!(n >= 1e-12)) {
    throw DataError("line " + std::to_string(line) + ": quaternion cannot be normalized");
  }
  Eigen::Quaterniond q(qw / n, qx / n, qy / n, qz / n);
  return q.toRotationMatrix();
}

template <std::size_t N>
std::array<double, N> read_numbers(std::istringstream& in, std::size_t line, const char* tag) {
  std::array<double, N> out{};
  for (auto& x : out) {
    if (!(in >> x)) throw ParseError(line, std::string("truncated ") + tag + " record");
  }
  std::string extra;
  if (in >> extra) throw ParseError(line, std::string("trailing tokens in ") + tag + " record");
  return out;
}

KeyframeId read_id(std::istringstream& in, std::size_t line) {
  long long raw = 0;
  if (!(in >> raw) || raw < 0) throw ParseError(line, "expected a non-negative vertex id");
  return KeyframeId{static_cast<std::uint64_t>(raw)};
}

EdgeKind kind_for(KeyframeId a, KeyframeId b) {
  const auto d = a.value > b.value ? a.value - b.value : b.value - a.value;
  return d == 1 ? EdgeKind::odometry : EdgeKind::loop;
}

double weight_from(double mean_info, std::size_t line) {
  if (!(mean_info > 0.0)) throw DataError("line " + std::to_string(line) + ": non-positive information");
  return std::sqrt(mean_info);
}

}  // namespace

PoseGraph parse_g2o(std::istream& in) {
  PoseGraph graph;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ls(text);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;

    if (tag == "VERTEX_SE3:QUAT") {
      const KeyframeId id = read_id(ls, line);
      const auto v = read_numbers<7>(ls, line, "VERTEX_SE3:QUAT");
      Pose p{quat_to_matrix(v[3], v[4], v[5], v[6], line), Vec3(v[0], v[1], v[2])};
      if (!graph.add_vertex(id, p)) throw ParseError(line, "duplicate vertex id");
    } else if (tag == "VERTEX_SE2") {
      const KeyframeId id = read_id(ls, line);
      const auto v = read_numbers<3>(ls, line, "VERTEX_SE2");
      Pose p{rot_z(v[2]), Vec3(v[0], v[1], 0.0)};
      if (!graph.add_vertex(id, p)) throw ParseError(line, "duplicate vertex id");
    } else if (tag == "EDGE_SE3:QUAT") {
      const KeyframeId a = read_id(ls, line);
      const KeyframeId b = read_id(ls, line);
      const auto v = read_numbers<7 + 21>(ls, line, "EDGE_SE3:QUAT");
      // Upper-triangular 6x6 information, row-major: diagonal at 0, 6, 11, 15, 18, 20.
      const double info_t = (v[7 + 0] + v[7 + 6] + v[7 + 11]) / 3.0;
      const double info_r = (v[7 + 15] + v[7 + 18] + v[7 + 20]) / 3.0;
      PoseGraphEdge e{a, b, quat_to_matrix(v[3], v[4], v[5], v[6], line), Vec3(v[0], v[1], v[2]),
                      weight_from(info_t, line), weight_from(info_r, line), kind_for(a, b)};
      try {
        graph.add_edge(e);
      } catch (const ReferenceError& err) {
        throw ReferenceError("line " + std::to_string(line) + ": " + err.what());
      }
    } else if (tag == "EDGE_SE2") {
      const KeyframeId a = read_id(ls, line);
      const KeyframeId b = read_id(ls, line);
      const auto v = read_numbers<3 + 6>(ls, line, "EDGE_SE2");
      // Upper-triangular 3x3 information: diagonal at 0, 3, 5.
      const double info_t = (v[3 + 0] + v[3 + 3]) / 2.0;
      const double info_r = v[3 + 5];
      PoseGraphEdge e{a, b, rot_z(v[2]), Vec3(v[0], v[1], 0.0), weight_from(info_t, line),
                      weight_from(info_r, line), kind_for(a, b)};
      try {
        graph.add_edge(e);
      } catch (const ReferenceError& err) {
        throw ReferenceError("line " + std::to_string(line) + ": " + err.what());
      }
    } else if (tag == "FIX") {
      continue;
    } else {
      throw ParseError(line, "unsupported record '" + tag + "'");
    }
  }
  return graph;
}

PoseGraph load_g2o(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_g2o(in);
}

void write_g2o(std::ostream& out, const PoseGraph& graph) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  auto write_quat = [&](const Mat3& r) {
    Eigen::Quaterniond q(r);
    q.normalize();
    out << ' ' << q.x() << ' ' << q.y() << ' ' << q.z() << ' ' << q.w();
  };
  for (std::size_t i = 0; i < graph.num_vertices(); ++i) {
    const auto& p = graph.pose_at(static_cast<PoseGraph::Index>(i));
    out << "VERTEX_SE3:QUAT " << graph.id_at(static_cast<PoseGraph::Index>(i)).value << ' '
        << p.translation.x() << ' ' << p.translation.y() << ' ' << p.translation.z();
    write_quat(p.rotation);
    out << '\n';
  }
  for (const auto& e : graph.edges()) {
    out << "EDGE_SE3:QUAT " << e.from.value << ' ' << e.to.value << ' ' << e.rel_translation.x()
        << ' ' << e.rel_translation.y() << ' ' << e.rel_translation.z();
    write_quat(e.rel_rotation);
    const double it = e.weight_t * e.weight_t;
    const double ir = e.weight_R * e.weight_R;
    for (int r = 0; r < 6; ++r) {
      for (int c = r; c < 6; ++c) out << ' ' << (r == c ? (r < 3 ? it : ir) : 0.0);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

void save_g2o(const std::filesystem::path& path, const PoseGraph& graph) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_g2o(out, graph);
}

}  // namespace bdpgo
