#pragma once

#include <vector>

#include "tikreg/types.hpp"

namespace tikreg {

// Inverse standard normal CDF (Wichura's PPND16). Accurate to ~1e-15 on (0,1).
double normal_quantile(double p);

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n-1 in the denominator)
    Index count = 0;
};

// Neumaier-compensated mean and sample standard deviation, taken in the
// order given so results do not depend on any parallel schedule upstream.
MeanStd mean_std(const std::vector<double>& xs);

double median(std::vector<double> xs);

// Compensated sum.
double neumaier_sum(const std::vector<double>& xs);

}  // namespace tikreg
