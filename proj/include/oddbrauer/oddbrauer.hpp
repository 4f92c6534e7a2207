#pragma once

#include "oddbrauer/arith.hpp"
#include "oddbrauer/brauer.hpp"
#include "oddbrauer/commands.hpp"
#include "oddbrauer/criteria.hpp"
#include "oddbrauer/fflab.hpp"
#include "oddbrauer/fielddata.hpp"
#include "oddbrauer/gaussian.hpp"
#include "oddbrauer/qp2.hpp"
#include "oddbrauer/report.hpp"
#include "oddbrauer/verify.hpp"
