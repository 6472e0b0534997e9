#pragma once

#include "seqlab/concentration.hpp"
#include "seqlab/error.hpp"
#include "seqlab/estimators.hpp"
#include "seqlab/geometry.hpp"
#include "seqlab/model.hpp"
#include "seqlab/risk.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/search.hpp"
