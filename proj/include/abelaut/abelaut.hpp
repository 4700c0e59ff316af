#pragma once

#include "abelaut/aut.hpp"
#include "abelaut/bigint.hpp"
#include "abelaut/counting.hpp"
#include "abelaut/endo.hpp"
#include "abelaut/error.hpp"
#include "abelaut/group.hpp"
#include "abelaut/io.hpp"
#include "abelaut/matrix.hpp"
#include "abelaut/oracle.hpp"
#include "abelaut/rng.hpp"
