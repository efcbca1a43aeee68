#pragma once

#include "greedy_energy/asymptotics.hpp"
#include "greedy_energy/distribution.hpp"
#include "greedy_energy/domain.hpp"
#include "greedy_energy/exact.hpp"
#include "greedy_energy/greedy.hpp"
#include "greedy_energy/io.hpp"
#include "greedy_energy/kernel.hpp"
#include "greedy_energy/oracle.hpp"
#include "greedy_energy/special.hpp"
#include "greedy_energy/verify.hpp"
#include "greedy_energy/version.hpp"
