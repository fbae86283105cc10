#pragma once

#include <string>
#include <vector>

#include "anbar/io.hpp"

namespace anbar {

const std::vector<std::string>& fixture_names();
/// Canonical fixture document. All but square_cloud are complex/cocycle
/// files; square_cloud is metric data for the geometrize front end.
json fixture_json(const std::string& name);
bool fixture_is_metric(const std::string& name);
/// Complex/cocycle fixtures parsed back.
CocycleInput fixture_input(const std::string& name);

} // namespace anbar
