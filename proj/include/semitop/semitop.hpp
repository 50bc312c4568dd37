#pragma once

// Everything. json_io.hpp pulls in nlohmann/json from vendor/.

#include "semitop/error.hpp"
#include "semitop/semigroup.hpp"
#include "semitop/inverse.hpp"
#include "semitop/congruence.hpp"
#include "semitop/topo.hpp"
#include "semitop/transforms.hpp"
#include "semitop/fixtures.hpp"
#include "semitop/embed.hpp"
#include "semitop/obstruct.hpp"
#include "semitop/json_io.hpp"
