#pragma once

#include "fgrid/common.hpp"
#include "fgrid/config.hpp"
#include "fgrid/csv.hpp"
#include "fgrid/dcf.hpp"
#include "fgrid/edge.hpp"
#include "fgrid/fft.hpp"
#include "fgrid/frame.hpp"
#include "fgrid/gridding.hpp"
#include "fgrid/harness.hpp"
#include "fgrid/linalg.hpp"
#include "fgrid/quadrature.hpp"
#include "fgrid/sampling.hpp"
#include "fgrid/testfns.hpp"
#include "fgrid/window.hpp"
