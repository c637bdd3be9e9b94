#pragma once

#include "annealsat/dimacs.hpp"
#include "annealsat/encoder.hpp"
#include "annealsat/errors.hpp"
#include "annealsat/experiments.hpp"
#include "annealsat/postprocess.hpp"
#include "annealsat/qubo.hpp"
#include "annealsat/qubo_io.hpp"
#include "annealsat/report_io.hpp"
#include "annealsat/rng.hpp"
#include "annealsat/samplers.hpp"
#include "annealsat/sat.hpp"
