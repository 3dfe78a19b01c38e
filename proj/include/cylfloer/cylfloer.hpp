#pragma once

#include "cylfloer/action.hpp"
#include "cylfloer/arrangement.hpp"
#include "cylfloer/bound.hpp"
#include "cylfloer/checks.hpp"
#include "cylfloer/generator.hpp"
#include "cylfloer/instance.hpp"
#include "cylfloer/lunes.hpp"
#include "cylfloer/persistence.hpp"
#include "cylfloer/rational.hpp"
#include "cylfloer/render.hpp"
#include "cylfloer/surgery.hpp"
