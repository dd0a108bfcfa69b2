/*
 * Copyright 2026 The opbias Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OPBIAS_OPBIAS_HPP
#define OPBIAS_OPBIAS_HPP

#include "opbias/annotations.hpp"
#include "opbias/corpus.hpp"
#include "opbias/distribution.hpp"
#include "opbias/diversity.hpp"
#include "opbias/error.hpp"
#include "opbias/length_check.hpp"
#include "opbias/ranking.hpp"
#include "opbias/report.hpp"
#include "opbias/sentence_splitter.hpp"
#include "opbias/similarity.hpp"
#include "opbias/stance.hpp"

#endif  // OPBIAS_OPBIAS_HPP
