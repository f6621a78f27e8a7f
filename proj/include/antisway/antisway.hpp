#pragma once

// Convenience umbrella for the full anti-sway toolkit: Gaussian
// partitions, rule tables, the fuzzy inference engine, the pendulum
// plant, closed-loop simulation, CSV export, and configuration loading.

#include "antisway/membership.hpp"
#include "antisway/rulebase.hpp"
#include "antisway/inference.hpp"
#include "antisway/plant.hpp"
#include "antisway/simulation.hpp"
#include "antisway/csv.hpp"
#include "antisway/config.hpp"
