#pragma once

#include "loqc/analyzer.hpp"
#include "loqc/apply.hpp"
#include "loqc/cshift.hpp"
#include "loqc/csign.hpp"
#include "loqc/cswap.hpp"
#include "loqc/elements.hpp"
#include "loqc/fock.hpp"
#include "loqc/matrix.hpp"
#include "loqc/ns.hpp"
#include "loqc/permanent.hpp"
#include "loqc/qudit.hpp"
#include "loqc/reck.hpp"
#include "loqc/state.hpp"
