#pragma once

#include "edcnc/adversary.hpp"
#include "edcnc/bitstream.hpp"
#include "edcnc/cipher.hpp"
#include "edcnc/codec.hpp"
#include "edcnc/cost_model.hpp"
#include "edcnc/crc32.hpp"
#include "edcnc/error.hpp"
#include "edcnc/frame.hpp"
#include "edcnc/key_registry.hpp"
#include "edcnc/plan.hpp"
#include "edcnc/recovery.hpp"
#include "edcnc/simulator.hpp"
#include "edcnc/topology.hpp"
#include "edcnc/wiretap.hpp"
