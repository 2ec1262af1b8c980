#pragma once

// Randomized property checks shared by the unit tests (small counts) and the acceptance
// binary (full counts). Each returns how many cases ran and the first failure, if any.

#include <cstddef>
#include <string>
#include <vector>

#include "suborb/scene.hpp"

namespace suborb::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::vector<std::string> failures;
  /// Free-form counters for the summary line ("saturated=120 ...").
  std::string stats;

  bool passed() const { return failures.empty(); }
  void fail(std::string what) {
    if (failures.size() < 5) failures.push_back(std::move(what));
  }
};

PropertyResult intersect_dimension_property(unsigned seed, std::size_t cases);
PropertyResult preimage_dimension_property(unsigned seed, std::size_t cases);
PropertyResult fibered_dimension_property(unsigned seed, std::size_t cases);

/// check_saturated against the sampling oracle, and check_full against the definition.
PropertyResult saturation_oracle_property(unsigned seed, std::size_t cases);

/// Both isotropy routes on every saturated candidate of the scenes and on random ones.
PropertyResult isotropy_paths_property(const std::vector<Scene>& scenes, unsigned seed, std::size_t random_cases);

/// Every complement or effective Δ returned by check_embedded re-verified from scratch.
PropertyResult splitting_property(const std::vector<Scene>& scenes, unsigned seed, std::size_t random_cases);

/// Graph candidates of random maps: saturated and embedded always, full iff the image avoids Fix(g).
PropertyResult graph_property(unsigned seed, std::size_t cases);

/// Scenes of the built-in corpus.
std::vector<Scene> corpus_scenes();

}  // namespace suborb::testing
