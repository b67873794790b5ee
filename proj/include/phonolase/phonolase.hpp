#pragma once

#include "phonolase/analyze.hpp"
#include "phonolase/branch_bs.hpp"
#include "phonolase/branch_tms.hpp"
#include "phonolase/config.hpp"
#include "phonolase/contours.hpp"
#include "phonolase/errors.hpp"
#include "phonolase/laser.hpp"
#include "phonolase/model.hpp"
#include "phonolase/oracle.hpp"
#include "phonolase/point.hpp"
#include "phonolase/random_params.hpp"
#include "phonolase/regime.hpp"
#include "phonolase/resonance.hpp"
#include "phonolase/stage1.hpp"
#include "phonolase/sweep.hpp"
#include "phonolase/validity.hpp"
#include "phonolase/verify.hpp"
