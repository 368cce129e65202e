#pragma once

#include "gog/balance.hpp"
#include "gog/bigint.hpp"
#include "gog/certify.hpp"
#include "gog/conj_graph.hpp"
#include "gog/dihedral.hpp"
#include "gog/error.hpp"
#include "gog/free_words.hpp"
#include "gog/model.hpp"
#include "gog/parametrize.hpp"
#include "gog/text_format.hpp"
#include "gog/word_engine.hpp"
