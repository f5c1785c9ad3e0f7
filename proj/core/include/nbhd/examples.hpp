#ifndef NBHD_EXAMPLES_HPP
#define NBHD_EXAMPLES_HPP

#include "nbhd/model.hpp"

namespace nbhd {

/// A bundled frame pair with bounded morphisms into a common target.
/// These two little configurations drive the CLI's `examples` subcommand
/// and a good share of the test suite: the first separates bisimilarity
/// from precocongruences, the second separates precocongruences from
/// behavioural equivalence.
///
/// A remark on scope, kept here as prose because it cannot be a fixture:
/// every finite model is image-finite (the whole carrier is a base set),
/// and on finite carriers every subset is modally compact, so all bundled
/// fixtures are modally saturated. Image-finiteness alone does not give
/// saturation: the natural numbers with the greater-than relation, read as
/// an augmented neighbourhood model, are image-finite while the formulas
/// "some chain of diamonds ending in a box of falsum" are finitely
/// satisfiable but not jointly satisfiable inside the full carrier. That
/// configuration is infinite and deliberately outside what this library
/// executes.
struct ExamplePair {
    Model left;             // three states t1,t2,t3
    Model right;            // one state s with no neighbourhoods
    Model target;           // two states u1,u2
    StateFunction f_left;   // left  -> target, a bounded morphism
    StateFunction f_right;  // right -> target, a bounded morphism
};

/// nu(t1) = nu(t2) = {{t2}}, nu(t3) = {{}}; f_left collapses t1,t2 to u1.
/// Here t1 and s are behaviourally equivalent (and precocongruent) but not
/// bisimilar.
ExamplePair example_one();

/// nu(t1) = {{t2}}, nu(t2) = nu(t3) = {{}}; f_left sends t2,t3 to u2.
/// Here t1 and s are behaviourally equivalent but no precocongruence
/// relates them.
ExamplePair example_two();

} // namespace nbhd

#endif
