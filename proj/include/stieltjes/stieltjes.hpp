#pragma once

#include "stieltjes/distribution.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"
#include "stieltjes/improper.hpp"
#include "stieltjes/integrand.hpp"
#include "stieltjes/lebesgue_stieltjes.hpp"
#include "stieltjes/partition.hpp"
#include "stieltjes/results.hpp"
#include "stieltjes/riemann_stieltjes.hpp"
