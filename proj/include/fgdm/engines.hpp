#pragma once

#include "fgdm/fuzzy.hpp"
#include "fgdm/resources.hpp"

namespace fgdm {

/// Voting [0,100] x total sentiment [-1,1] -> total preference [0,10].
inline fuzzy::InferenceEngine make_total_preference_engine() {
  return fuzzy::engine_from_string(resources::kTotalPreferenceEngine);
}

/// Same variables and rule table under min/max/clip with shoulder output sets.
inline fuzzy::InferenceEngine make_classic_total_preference_engine() {
  return fuzzy::engine_from_string(resources::kTotalPreferenceClassicEngine);
}

/// Agreement [0,10] x confidence [0,10] -> feedback value [0,10].
inline fuzzy::InferenceEngine make_feedback_engine() {
  return fuzzy::engine_from_string(resources::kFeedbackEngine);
}

}  // namespace fgdm
