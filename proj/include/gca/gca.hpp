#pragma once

// Umbrella header.

#include "gca/graph.hpp"
#include "gca/vertex_set.hpp"
#include "gca/walks.hpp"
#include "gca/condition_k.hpp"
#include "gca/ideal_lattice.hpp"
#include "gca/detours.hpp"
#include "gca/lpa.hpp"
#include "gca/lpa_matrix.hpp"
#include "gca/ck.hpp"
#include "gca/inflow.hpp"
#include "gca/desingularize.hpp"
#include "gca/classifier.hpp"
#include "gca/io.hpp"
#include "gca/oracles.hpp"
#include "gca/sampling.hpp"
#include "gca/corpus.hpp"
