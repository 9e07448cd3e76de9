#pragma once

#include "cantorland/group.hpp"
#include "cantorland/window.hpp"
#include "cantorland/bits.hpp"
#include "cantorland/labeling.hpp"
#include "cantorland/river.hpp"
#include "cantorland/landscape.hpp"
#include "cantorland/amenability.hpp"
#include "cantorland/localset.hpp"
#include "cantorland/patterns.hpp"
#include "cantorland/matching.hpp"
#include "cantorland/certificate.hpp"
#include "cantorland/checker.hpp"
#include "cantorland/paradox.hpp"
#include "cantorland/serialize.hpp"
#include "cantorland/bundle.hpp"
