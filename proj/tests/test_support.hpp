// Shared fixtures and independent oracles for the test suites.
//
// The oracles here deliberately take a different route than the library:
// projectivity via exhaustive crossing-pair enumeration, prediction via a
// naive score loop.  They exist to check the implementation, so they must
// not call into it.
#pragma once

#include <string>
#include <vector>

#include "stagdep/conllx.hpp"
#include "stagdep/util.hpp"

namespace testsup {

// The seven-token example sentence used throughout the suites:
// "Hai kịch_bản mới mô_tả cuộc_sống hiện_đại ."
stagdep::Sentence example_sentence();

// Expected supertags for example_sentence under each model.
const std::vector<std::string>& example_m0();
const std::vector<std::string>& example_m1();
const std::vector<std::string>& example_m2();

std::string data_path(const std::string& name);

// Builds a token row; head 0 = root.
stagdep::Sentence sentence_from(const std::vector<int>& heads,
                                const std::vector<std::string>& deprels,
                                const std::vector<std::string>& pos = {},
                                const std::vector<std::string>& forms = {});

// Uniform-ish random single-headed tree (any shape, often non-projective).
stagdep::Sentence random_tree(stagdep::Rng& rng, int n);

// Random projective tree built from nested spans.
stagdep::Sentence random_projective_tree(stagdep::Rng& rng, int n);

// Brute-force projectivity oracle: enumerate all arc pairs and test the
// symmetric crossing condition (each arc has exactly one endpoint strictly
// inside the other's span; arcs to node 0 span [0, dependent]).
bool projective_bruteforce(const stagdep::Sentence& s);

}  // namespace testsup
