#pragma once

// Umbrella header for the whole library.

#include <admissa/admissibility.hpp>
#include <admissa/campaign.hpp>
#include <admissa/criteria.hpp>
#include <admissa/csv_io.hpp>
#include <admissa/datagen.hpp>
#include <admissa/dataset.hpp>
#include <admissa/emoc.hpp>
#include <admissa/errors.hpp>
#include <admissa/eval.hpp>
#include <admissa/geometry.hpp>
#include <admissa/init.hpp>
#include <admissa/json_io.hpp>
#include <admissa/pareto.hpp>
#include <admissa/report.hpp>
#include <admissa/rng.hpp>
