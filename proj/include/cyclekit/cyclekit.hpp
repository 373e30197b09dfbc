#pragma once

#include "cyclekit/bandpass.hpp"
#include "cyclekit/chronology.hpp"
#include "cyclekit/defaults.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/hp_filter.hpp"
#include "cyclekit/io.hpp"
#include "cyclekit/nonlinear_medium.hpp"
#include "cyclekit/spectrum.hpp"
#include "cyclekit/time_series.hpp"
#include "cyclekit/version.hpp"
