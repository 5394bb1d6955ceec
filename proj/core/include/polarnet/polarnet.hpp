#pragma once

#include "polarnet/design_fd.hpp"
#include "polarnet/design_fj.hpp"
#include "polarnet/dynamics.hpp"
#include "polarnet/experiment.hpp"
#include "polarnet/graph.hpp"
#include "polarnet/indices.hpp"
#include "polarnet/io.hpp"
#include "polarnet/laplacian.hpp"
#include "polarnet/projection.hpp"
#include "polarnet/report.hpp"
