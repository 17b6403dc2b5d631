#ifndef CITEKEY_CITEKEY_HPP_
#define CITEKEY_CITEKEY_HPP_

// Umbrella header.

#include "citekey/affect.hpp"
#include "citekey/analytics.hpp"
#include "citekey/analyzer.hpp"
#include "citekey/collocation.hpp"
#include "citekey/corpus.hpp"
#include "citekey/csv.hpp"
#include "citekey/error.hpp"
#include "citekey/keyness.hpp"
#include "citekey/pipeline.hpp"
#include "citekey/report.hpp"
#include "citekey/rng.hpp"
#include "citekey/synthetic.hpp"
#include "citekey/tagger.hpp"
#include "citekey/text.hpp"

#endif  // CITEKEY_CITEKEY_HPP_
