#pragma once

// Umbrella header.
#include "cdelta/batch.hpp"
#include "cdelta/coefficient.hpp"
#include "cdelta/config.hpp"
#include "cdelta/csv.hpp"
#include "cdelta/divergence.hpp"
#include "cdelta/error.hpp"
#include "cdelta/null.hpp"
#include "cdelta/reference.hpp"
#include "cdelta/report.hpp"
#include "cdelta/series.hpp"
