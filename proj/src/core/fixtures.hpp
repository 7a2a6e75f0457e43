#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace slln {

// Built-in named models. Names are stable identifiers used by configs,
// CSV rows, and the fixture listing.
const std::vector<std::string>& fixture_names();
SequenceModel fixture_model(const std::string& name);
bool is_fixture_name(const std::string& name);

} // namespace slln
