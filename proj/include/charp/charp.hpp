#pragma once

#include "charp/arith.hpp"
#include "charp/divisor.hpp"
#include "charp/error.hpp"
#include "charp/frobenius.hpp"
#include "charp/groebner.hpp"
#include "charp/ideal.hpp"
#include "charp/parse.hpp"
#include "charp/poly.hpp"
#include "charp/stability.hpp"
#include "charp/test_ideal.hpp"
