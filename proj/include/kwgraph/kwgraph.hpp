#pragma once

// Umbrella header.

#include "kwgraph/centrality.hpp"
#include "kwgraph/corpus.hpp"
#include "kwgraph/csv.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/export.hpp"
#include "kwgraph/graph.hpp"
#include "kwgraph/pipeline.hpp"
#include "kwgraph/topics.hpp"
#include "kwgraph/version.hpp"
