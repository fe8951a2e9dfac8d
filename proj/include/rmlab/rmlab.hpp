#pragma once

#include "rmlab/word.hpp"
#include "rmlab/code.hpp"
#include "rmlab/subspace.hpp"
#include "rmlab/hadamard.hpp"
#include "rmlab/rpa.hpp"
#include "rmlab/bounds.hpp"
#include "rmlab/rng.hpp"
#include "rmlab/sim.hpp"
