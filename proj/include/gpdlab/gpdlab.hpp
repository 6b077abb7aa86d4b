#pragma once

#include "gpdlab/errors.hpp"
#include "gpdlab/group.hpp"
#include "gpdlab/groupoid.hpp"
#include "gpdlab/structure.hpp"
#include "gpdlab/automorphism.hpp"
#include "gpdlab/model.hpp"
#include "gpdlab/yset.hpp"
#include "gpdlab/extended.hpp"
#include "gpdlab/report.hpp"
#include "gpdlab/witness.hpp"
#include "gpdlab/section2.hpp"
#include "gpdlab/section3.hpp"
#include "gpdlab/fgroupoid.hpp"
#include "gpdlab/limits.hpp"
#include "gpdlab/pi2.hpp"
#include "gpdlab/json_io.hpp"
