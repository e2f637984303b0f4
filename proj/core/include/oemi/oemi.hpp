#pragma once

#include "oemi/analysis.hpp"
#include "oemi/config.hpp"
#include "oemi/dynamics.hpp"
#include "oemi/error.hpp"
#include "oemi/linalg.hpp"
#include "oemi/params.hpp"
#include "oemi/reduced.hpp"
#include "oemi/spectrum.hpp"
#include "oemi/stability.hpp"
