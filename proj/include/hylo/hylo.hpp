#pragma once

// Umbrella header.

#include "hylo/algebra.hpp"
#include "hylo/bouton.hpp"
#include "hylo/error.hpp"
#include "hylo/game.hpp"
#include "hylo/hfs.hpp"
#include "hylo/io.hpp"
#include "hylo/labeled_hfs.hpp"
#include "hylo/monoid.hpp"
#include "hylo/morphism.hpp"
#include "hylo/play.hpp"
#include "hylo/rule_game.hpp"
#include "hylo/sums.hpp"
#include "hylo/universal.hpp"
