#pragma once

#include "kohn/curve.hpp"
#include "kohn/eigen.hpp"
#include "kohn/error.hpp"
#include "kohn/io.hpp"
#include "kohn/modes.hpp"
#include "kohn/spectrum.hpp"
#include "kohn/whittaker_hill.hpp"
