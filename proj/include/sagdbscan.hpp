#pragma once

#include "sagdbscan/dataset.hpp"
#include "sagdbscan/dataset_io.hpp"
#include "sagdbscan/dbscan.hpp"
#include "sagdbscan/dense_subset.hpp"
#include "sagdbscan/density.hpp"
#include "sagdbscan/error.hpp"
#include "sagdbscan/grey_relation.hpp"
#include "sagdbscan/metrics.hpp"
#include "sagdbscan/pipeline.hpp"
#include "sagdbscan/svg.hpp"
