// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_GEC_HPP
#define GEC_GEC_HPP

#include "gec/bloom.hpp"
#include "gec/corrector.hpp"
#include "gec/dataset.hpp"
#include "gec/diagnostic.hpp"
#include "gec/distance.hpp"
#include "gec/error.hpp"
#include "gec/lexicon.hpp"
#include "gec/metrics.hpp"
#include "gec/noise.hpp"
#include "gec/rules.hpp"
#include "gec/text.hpp"
#include "gec/utf8.hpp"
#include "gec/version.hpp"

#endif // GEC_GEC_HPP
