// core/src/visual.cc

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include "sre/visual.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sre/backend/scoring.h"
#include "sre/random.h"

namespace sre::visual {

namespace {

// Correctly rounded sum (Shewchuk's partials), so a centroid does not
// depend on the order of its members.
double exact_sum(std::span<const double> xs) {
  std::vector<double> partials;
  for (double x : xs) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      double hi = x + y;
      double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  std::size_t n = partials.size();
  if (n == 0) return 0.0;
  double hi = partials[--n];
  double lo = 0.0;
  while (n > 0) {
    double x = hi;
    double y = partials[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
    double y = lo * 2.0;
    double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

double sq_dist(const Encoding &a, const Encoding &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::size_t nearest(const Encoding &p, std::span<const Encoding> centroids) {
  std::size_t best = 0;
  double best_d = sq_dist(p, centroids[0]);
  for (std::size_t j = 1; j < centroids.size(); ++j) {
    double d = sq_dist(p, centroids[j]);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

std::vector<std::size_t> seed_centers(std::span<const Encoding> pts, std::size_t k, Rng &rng) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  chosen.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  taken[chosen.back()] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(pts[i], pts[chosen[0]]);
  while (chosen.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += d2[i];
    std::size_t pick = n;
    if (total > 0.0) {
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        cum += d2[i];
        pick = i;
        if (cum > r) break;
      }
    } else {
      // Every point coincides with a center; take an unused one uniformly.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i)
        if (!taken[i]) free.push_back(i);
      pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    }
    chosen.push_back(pick);
    taken[pick] = true;
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(pts[i], pts[pick]));
  }
  return chosen;
}

struct Lloyd {
  std::vector<Encoding> centroids;
  std::vector<std::size_t> assignment;
  std::vector<double> trace;
  double inertia = 0.0;
};

void update_centroids(std::span<const Encoding> pts, Lloyd &s) {
  const std::size_t k = s.centroids.size(), dim = pts[0].size();
  std::vector<std::size_t> size(k, 0);
  for (std::size_t c : s.assignment) ++size[c];
  // An empty cluster takes the point farthest from its centroid among
  // clusters that can spare one.
  for (std::size_t c = 0; c < k; ++c) {
    if (size[c] != 0) continue;
    std::size_t far = pts.size();
    double far_d = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t a = s.assignment[i];
      if (size[a] < 2) continue;
      double d = sq_dist(pts[i], s.centroids[a]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    --size[s.assignment[far]];
    s.assignment[far] = c;
    size[c] = 1;
  }
  std::vector<double> column;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < dim; ++j) {
      column.clear();
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (s.assignment[i] == c) column.push_back(pts[i][j]);
      s.centroids[c][j] = exact_sum(column) / static_cast<double>(size[c]);
    }
  }
}

double assigned_inertia(std::span<const Encoding> pts, const Lloyd &s) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    total += sq_dist(pts[i], s.centroids[s.assignment[i]]);
  return total;
}

Lloyd run_lloyd(std::span<const Encoding> pts, std::vector<Encoding> centers) {
  Lloyd s;
  s.centroids = std::move(centers);
  s.assignment.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) s.assignment[i] = nearest(pts[i], s.centroids);
  s.trace.push_back(assigned_inertia(pts, s));
  constexpr int kMaxIterations = 1000;
  for (int it = 0; it < kMaxIterations; ++it) {
    update_centroids(pts, s);
    s.trace.push_back(assigned_inertia(pts, s));
    bool changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t best = s.assignment[i];
      double best_d = sq_dist(pts[i], s.centroids[best]);
      for (std::size_t j = 0; j < s.centroids.size(); ++j) {
        double d = sq_dist(pts[i], s.centroids[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best != s.assignment[i]) {
        s.assignment[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  s.inertia = s.trace.back();
  return s;
}

}  // namespace

double inertia(std::span<const Encoding> points, std::span<const Encoding> centroids) {
  if (centroids.empty()) throw std::invalid_argument("inertia: no centroids");
  double total = 0.0;
  for (const Encoding &p : points) total += sq_dist(p, centroids[nearest(p, centroids)]);
  return total;
}

PseudoEncodings kmeanspp_cluster(std::span<const Encoding> encodings, std::size_t k,
                                 std::uint64_t seed, std::size_t n_restarts) {
  if (encodings.empty()) throw std::invalid_argument("k-means++: no encodings");
  if (k == 0) throw std::invalid_argument("k-means++: k must be at least 1");
  if (k > encodings.size())
    throw std::invalid_argument("k-means++: k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(encodings.size()) + " encodings");
  if (n_restarts == 0) throw std::invalid_argument("k-means++: n_restarts must be at least 1");
  const std::size_t dim = encodings[0].size();
  if (dim == 0) throw std::invalid_argument("k-means++: zero-dimensional encodings");
  for (const Encoding &e : encodings) {
    if (e.size() != dim) throw std::invalid_argument("k-means++: encodings differ in dimension");
    for (double v : e)
      if (!std::isfinite(v)) throw std::invalid_argument("k-means++: non-finite encoding");
  }

  std::vector<Encoding> pts(encodings.begin(), encodings.end());
  std::sort(pts.begin(), pts.end());

  Lloyd best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < n_restarts; ++r) {
    Rng rng = make_rng(seed, r);
    std::vector<Encoding> centers;
    for (std::size_t i : seed_centers(pts, k, rng)) centers.push_back(pts[i]);
    Lloyd s = run_lloyd(pts, std::move(centers));
    if (s.inertia < best.inertia) best = std::move(s);
  }
  PseudoEncodings out;
  out.centroids = std::move(best.centroids);
  out.assignment = std::move(best.assignment);
  out.inertia = best.inertia;
  out.inertia_trace = std::move(best.trace);
  return out;
}

VideoScore video_trial_score(std::span<const double> enroll, const PseudoEncodings &pseudo) {
  VideoScore out;
  out.k_used = pseudo.k();
  if (pseudo.centroids.empty()) {
    bool nonzero = std::any_of(enroll.begin(), enroll.end(), [](double v) { return v != 0.0; });
    if (!nonzero) throw std::invalid_argument("video score: zero enrollment vector");
    out.empty_video = true;
    return out;
  }
  out.score = -std::numeric_limits<double>::infinity();
  for (const Encoding &c : pseudo.centroids)
    out.score = std::max(out.score, backend::cosine_score(enroll, c));
  return out;
}

VideoScore video_trial_score(std::span<const double> enroll, const FrameEncodings &frames,
                             std::size_t k, std::uint64_t seed, std::size_t n_restarts) {
  if (frames.encodings.empty()) return video_trial_score(enroll, PseudoEncodings{});
  std::size_t used = std::clamp<std::size_t>(k, 1, frames.encodings.size());
  return video_trial_score(enroll, kmeanspp_cluster(frames.encodings, used, seed, n_restarts));
}

std::map<std::string, FrameEncodings> group_frames(const EmbeddingTable &table) {
  std::map<std::string, FrameEncodings> out;
  for (const EmbeddingRow &row : table.rows()) {
    if (!row.speaker)
      throw std::invalid_argument("frame '" + row.segment_id + "' has no video id");
    FrameEncodings &f = out[*row.speaker];
    f.video_id = *row.speaker;
    f.encodings.push_back(row.vector);
  }
  return out;
}

std::uint64_t video_seed(std::uint64_t seed, std::string_view video_id) {
  return derive_seed(seed, tag_hash(video_id));
}

}  // namespace sre::visual
