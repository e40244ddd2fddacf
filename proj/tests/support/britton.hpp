#pragma once

#include <span>
#include <vector>

#include "hnnwalk/normal_form.hpp"

namespace hnnwalk::testing {

// Independent word-problem oracle by Britton reduction: repeatedly collapse
// base-letter runs and remove pinches t w t^-1 (w in B) / t^-1 w t (w in A).
// By Britton's lemma a word equals the identity iff it reduces to a t-free
// word whose base product is e0. Shares no code path with push_letter.
std::vector<Letter> britton_reduce(const HnnPresentation& pres, std::vector<Letter> word);

bool britton_is_identity(const HnnPresentation& pres, std::span<const Letter> word);

bool britton_equal(const HnnPresentation& pres, std::span<const Letter> u,
                   std::span<const Letter> v);

} // namespace hnnwalk::testing
