#pragma once

#include "core.hpp"
#include "corpus.hpp"
#include "cnf.hpp"
#include "dfa_io.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "gadgets.hpp"
#include "greedy.hpp"
#include "harness.hpp"
#include "pairs.hpp"
