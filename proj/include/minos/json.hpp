#pragma once

// Vendored single-header nlohmann/json (see vendor/).
#include <json.hpp>
