// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace provstamp::jsonld::detail {

/// (file name, file contents) of every context under contexts/, compiled in.
const std::vector<std::pair<std::string_view, std::string_view>>& bundled_contexts();

}  // namespace provstamp::jsonld::detail
