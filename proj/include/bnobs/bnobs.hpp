#pragma once

#include "bnobs/bounds.hpp"
#include "bnobs/claimcheck.hpp"
#include "bnobs/classify.hpp"
#include "bnobs/families.hpp"
#include "bnobs/function.hpp"
#include "bnobs/io.hpp"
#include "bnobs/network.hpp"
#include "bnobs/observability.hpp"
#include "bnobs/state_space.hpp"
