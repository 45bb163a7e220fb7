// sre/visual.h

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


#ifndef SRE_VISUAL_H_
#define SRE_VISUAL_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sre/trial_data.h"

namespace sre::visual {

inline constexpr std::size_t kDefaultK = 5;
inline constexpr std::size_t kDefaultRestarts = 10;
/// Score of a video with no frame encodings.
inline constexpr double kEmptyVideoScore = -1.0;

using Encoding = std::vector<double>;

/// Per-frame face encodings of one video.
struct FrameEncodings {
  std::string video_id;
  std::vector<Encoding> encodings;
};

/// Cluster centroids of a video's frames.
struct PseudoEncodings {
  std::vector<Encoding> centroids;
  /// Cluster of each input encoding, in canonical (sorted) input order.
  std::vector<std::size_t> assignment;
  double inertia = 0.0;
  /// Inertia after seeding and after each Lloyd step of the kept restart.
  std::vector<double> inertia_trace;

  std::size_t k() const { return centroids.size(); }
};

/// Sum of squared distances from each point to its nearest centroid.
double inertia(std::span<const Encoding> points, std::span<const Encoding> centroids);

/// k-means++ seeding then Lloyd iterations to an assignment fixpoint, best
/// of n_restarts. The input is sorted lexicographically first, so the
/// result does not depend on input order. Throws std::invalid_argument on
/// empty input, ragged dimensions, k == 0, k > #encodings or
/// n_restarts == 0.
PseudoEncodings kmeanspp_cluster(std::span<const Encoding> encodings, std::size_t k,
                                 std::uint64_t seed, std::size_t n_restarts = kDefaultRestarts);

struct VideoScore {
  double score = kEmptyVideoScore;
  bool empty_video = false;
  std::size_t k_used = 0;
};

/// Max cosine between the enrollment encoding and the video's centroids,
/// with k clamped to the frame count. An empty video scores -1 and is
/// flagged. Throws std::invalid_argument on a zero enrollment vector.
VideoScore video_trial_score(std::span<const double> enroll, const FrameEncodings &frames,
                             std::size_t k, std::uint64_t seed,
                             std::size_t n_restarts = kDefaultRestarts);
VideoScore video_trial_score(std::span<const double> enroll, const PseudoEncodings &pseudo);

/// Frames grouped by the speaker column (the video id). Throws
/// std::invalid_argument if a row has no video id.
std::map<std::string, FrameEncodings> group_frames(const EmbeddingTable &table);

/// Per-video clustering seed, independent of the order videos are scored in.
std::uint64_t video_seed(std::uint64_t seed, std::string_view video_id);

}  // namespace sre::visual

#endif  // SRE_VISUAL_H_
