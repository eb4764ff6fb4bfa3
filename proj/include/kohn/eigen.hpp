#pragma once

#include "kohn/eigen/banded.hpp"
#include "kohn/eigen/hessenberg.hpp"
#include "kohn/eigen/matrices.hpp"
#include "kohn/eigen/sector.hpp"
#include "kohn/eigen/symmetric.hpp"
