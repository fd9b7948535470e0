#include "cblup/reference_tables.hpp"

#include <stdexcept>

namespace cblup {

namespace {

// Study 1: exponential product kernel (lambda = 2) on [0,1]^2, NxN
// equidistant grids; last column is the continuous-observation value.
const ReferenceTable kTable1 = {
    1,
    "sqrt MSE, location-scale model on [0,1]^2, exponential product kernel, lambda=2",
    {"T=(2,2)", "T=(0.5,2)"},
    {"N=2", "N=3", "N=4", "N=8", "N=16", "N=32", "inf"},
    {
        {1.1446, 1.1225, 1.1177, 1.1145, 1.11398, 1.11386, 1.11383},   // row T=(2,2)
        {1.1242, 1.0879, 1.0884, 1.0831, 1.08177, 1.08133, 1.08117},   // row T=(0.5,2)
    },
    5e-5,
    5e-6,
};

// Study 2: Matern 3/2 (lambda = 2) on [0,1], t0 = 2, three design families;
// continuous value 0.9985569896.
const ReferenceTable kTable2 = {
    2,
    "sqrt MSE at t0=2, location-scale model on [0,1], matern32 kernel, lambda=2",
    {"xi_N_0", "xi_N_2", "xi_N_N"},
    {"N=2", "N=4", "N=8", "N=16", "inf"},
    {
        {1.059339, 1.038152, 1.019244, 1.009052, 0.9985569896},
        {0.999276, 0.9985675343, 0.9985573516, 0.9985570068, 0.9985569896},
        {0.999276, 0.9985675343, 0.9985573516, 0.9985570068, 0.9985569896},
    },
    5e-7,
    1e-8,
};

// Study 3: Matern 3/2 product kernel (lambda = 2) on [0,1]^2, four design
// families at two prediction points; continuous values 1.119510 at (2,2)
// and 0.958494 at (0.5,2).
const ReferenceTable kTable3 = {
    3,
    "sqrt MSE, location-scale model on [0,1]^2, matern32 product kernel, lambda=2",
    {"(2,2) xi_N2_0_0_0", "(2,2) xi_N2_4_4_4", "(2,2) xi_N2_N2_N2_0", "(2,2) xi_N2_4Nm4_4Nm4_4Nm4",
     "(0.5,2) xi_N2_0_0_0", "(0.5,2) xi_N2_4_4_4", "(0.5,2) xi_N2_N2_N2_0",
     "(0.5,2) xi_N2_4Nm4_4Nm4_4Nm4"},
    {"N=2", "N=3", "N=4", "N=8", "N=16", "inf"},
    {
        {1.16139, 1.15344, 1.14972, 1.13548, 1.12764, 1.119510},
        {1.121205, 1.119682, 1.119582, 1.119543, 1.119528, 1.119510},
        {1.124401, 1.121576, 1.120913, 1.119893, 1.119609, 1.119510},
        {1.121205, 1.119632, 1.119535, 1.119511, 1.119510, 1.119510},
        {1.03152, 1.00413, 0.99900, 0.97862, 0.96862, 0.958494},
        {0.979953, 0.962754, 0.963426, 0.960604, 0.959550, 0.958494},
        {0.982184, 0.958732, 0.959663, 0.958606, 0.958511, 0.958494},
        {0.979953, 0.958566, 0.959314, 0.958556, 0.958500, 0.958494},
    },
    5e-6,
    5e-7,
};

// Study 4: exponential kernel (lambda = 2) on [0,1], t0 = 2, N-point
// equidistant designs; continuous value 1.164262.
const ReferenceTable kTable4 = {
    4,
    "sqrt MSE at t0=2, location-scale model on [0,1], exponential kernel, lambda=2",
    {"xi_N_0"},
    {"N=2", "N=4", "N=8", "N=16", "N=32", "inf"},
    {
        {1.18579, 1.167157, 1.164806, 1.164381, 1.16429, 1.164262},
    },
    5e-5,
    1e-6,
};

}  // namespace

const ReferenceTable& reference_table(int id) {
  switch (id) {
    case 1: return kTable1;
    case 2: return kTable2;
    case 3: return kTable3;
    case 4: return kTable4;
    default: throw std::invalid_argument("reference_table: id must be 1..4");
  }
}

}  // namespace cblup
