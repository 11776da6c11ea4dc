#pragma once

#include "probalign/aligner.hpp"
#include "probalign/errors.hpp"
#include "probalign/evaluation.hpp"
#include "probalign/io_formats.hpp"
#include "probalign/net_builders.hpp"
#include "probalign/noise_gen.hpp"
#include "probalign/petri_net.hpp"
#include "probalign/prob_log.hpp"
