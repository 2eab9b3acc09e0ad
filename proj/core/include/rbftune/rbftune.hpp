#pragma once

#include "rbftune/bo.hpp"
#include "rbftune/data.hpp"
#include "rbftune/errors.hpp"
#include "rbftune/gp.hpp"
#include "rbftune/kernels.hpp"
#include "rbftune/loocv.hpp"
#include "rbftune/pipeline.hpp"
#include "rbftune/random.hpp"
#include "rbftune/rbf.hpp"
