#ifndef QBATTERY_QBATTERY_HPP
#define QBATTERY_QBATTERY_HPP

#include "basis.hpp"
#include "battery.hpp"
#include "csv.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "hamiltonians.hpp"
#include "krylov.hpp"
#include "params.hpp"
#include "plot.hpp"
#include "presets.hpp"
#include "quench.hpp"
#include "sweeps.hpp"

#endif  // QBATTERY_QBATTERY_HPP
