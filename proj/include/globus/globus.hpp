#pragma once

// Umbrella header for the engine. cli.hpp additionally needs OpenSSL.
#include "globus/dataset.hpp"
#include "globus/domain.hpp"
#include "globus/error.hpp"
#include "globus/ingest.hpp"
#include "globus/interpolate.hpp"
#include "globus/metrics.hpp"
#include "globus/projection.hpp"
#include "globus/report.hpp"
#include "globus/survival.hpp"
#include "globus/turnover.hpp"
