#pragma once

// Shared test fixtures and independent reference implementations. The
// oracles here deliberately avoid the library's own code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "landuse/core.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(LANDUSE_DATA_DIR); }

/// Fresh, empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("landuse-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

inline void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the CLI binary with `args`, discarding its output; returns the exit
/// status.
inline int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LANDUSE_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

// ---- Bayes oracle ---------------------------------------------------------

/// Posterior of each class for `query` under multinomial NB with Laplace
/// smoothing, from raw per-document term counts. Works in plain
/// probabilities with explicit products, independent of any log-space
/// implementation.
inline std::vector<double> brute_force_posterior(const std::vector<std::vector<double>>& doc_counts,
                                                 const std::vector<int>& doc_class, int n_classes,
                                                 const std::vector<double>& query, double alpha) {
  const std::size_t n_terms = query.size();
  std::vector<double> joint(static_cast<std::size_t>(n_classes), 0.0);
  for (int c = 0; c < n_classes; ++c) {
    double docs_in_class = 0;
    std::vector<double> term_sum(n_terms, 0.0);
    for (std::size_t d = 0; d < doc_counts.size(); ++d) {
      if (doc_class[d] != c) continue;
      docs_in_class += 1;
      for (std::size_t t = 0; t < n_terms; ++t) term_sum[t] += doc_counts[d][t];
    }
    double total = 0;
    for (double v : term_sum) total += v;
    double p = docs_in_class / static_cast<double>(doc_counts.size());
    for (std::size_t t = 0; t < n_terms; ++t) {
      const double theta = (term_sum[t] + alpha) / (total + alpha * static_cast<double>(n_terms));
      p *= std::pow(theta, query[t]);
    }
    joint[static_cast<std::size_t>(c)] = p;
  }
  double z = 0;
  for (double v : joint) z += v;
  for (double& v : joint) v /= z;
  return joint;
}

// ---- winding-number oracle --------------------------------------------

struct XY {
  double x;
  double y;
};

/// Winding number of a closed ring around (px, py) by summing signed angle
/// increments. Nonzero means inside; undefined on the boundary.
inline int winding_number(const std::vector<XY>& ring, double px, double py) {
  double total = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const XY& a = ring[i];
    const XY& b = ring[(i + 1) % ring.size()];
    const double ax = a.x - px;
    const double ay = a.y - py;
    const double bx = b.x - px;
    const double by = b.y - py;
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

/// Distance from (px, py) to segment ab.
inline double segment_distance(XY a, XY b, double px, double py) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 == 0 ? 0 : ((px - a.x) * dx + (py - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  const double qx = a.x + t * dx - px;
  const double qy = a.y + t * dy - py;
  return std::sqrt(qx * qx + qy * qy);
}

inline double ring_distance(const std::vector<XY>& ring, double px, double py) {
  double best = INFINITY;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    best = std::min(best, segment_distance(ring[i], ring[(i + 1) % ring.size()], px, py));
  }
  return best;
}

/// Random simple polygon: vertices at sorted random angles around a centre
/// with random radii (star-shaped, so concave in general but never
/// self-intersecting). With `convex` all radii are equal.
inline std::vector<XY> random_star_polygon(std::mt19937_64& rng, bool convex) {
  std::uniform_int_distribution<int> count(3, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(unit(rng) * 2.0 * M_PI);
  std::sort(angles.begin(), angles.end());
  // Reject near-duplicate angles, which give needle-thin spikes.
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 < n ? angles[static_cast<std::size_t>(i) + 1] : angles[0] + 2.0 * M_PI;
    if (next - angles[static_cast<std::size_t>(i)] < 1e-3) return random_star_polygon(rng, convex);
  }
  const double cx = unit(rng) * 10 - 5;
  const double cy = unit(rng) * 10 - 5;
  std::vector<XY> ring;
  for (double a : angles) {
    const double r = convex ? 3.0 : 0.5 + 3.0 * unit(rng);
    ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return ring;
}

}  // namespace testsupport
