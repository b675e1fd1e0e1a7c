#pragma once

#include "thom/error.hpp"
#include "thom/rational.hpp"
#include "thom/partition.hpp"
#include "thom/polynomial.hpp"
#include "thom/linalg.hpp"
#include "thom/symfunc.hpp"
#include "thom/chern.hpp"
#include "thom/jets.hpp"
#include "thom/grassmann.hpp"
#include "thom/verify.hpp"
#include "thom/io.hpp"
