#pragma once

// Umbrella header for the gpsyn library.

#include "gpsyn/core.hpp"
#include "gpsyn/program.hpp"
#include "gpsyn/interpreter.hpp"
#include "gpsyn/compiler.hpp"
#include "gpsyn/planner.hpp"
#include "gpsyn/domains.hpp"
#include "gpsyn/evaluation.hpp"
#include "gpsyn/io.hpp"
#include "gpsyn/commands.hpp"
