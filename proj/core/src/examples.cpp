#include "nbhd/examples.hpp"

namespace nbhd {

namespace {

Model one_state_sink() { return make_model({"s"}, {}); }

Model two_state_target() {
    // u1 has no neighbourhoods, u2's only neighbourhood is the empty set.
    return make_model({"u1", "u2"}, {{"u2", {{}}}});
}

} // namespace

ExamplePair example_one() {
    ExamplePair ex;
    ex.left = make_model({"t1", "t2", "t3"}, {{"t1", {{"t2"}}}, {"t2", {{"t2"}}}, {"t3", {{}}}});
    ex.right = one_state_sink();
    ex.target = two_state_target();
    ex.f_left = StateFunction::from_names(ex.left.states(), ex.target.states(),
                                          {{"t1", "u1"}, {"t2", "u1"}, {"t3", "u2"}});
    ex.f_right = StateFunction::from_names(ex.right.states(), ex.target.states(), {{"s", "u1"}});
    return ex;
}

ExamplePair example_two() {
    ExamplePair ex;
    ex.left = make_model({"t1", "t2", "t3"}, {{"t1", {{"t2"}}}, {"t2", {{}}}, {"t3", {{}}}});
    ex.right = one_state_sink();
    ex.target = two_state_target();
    ex.f_left = StateFunction::from_names(ex.left.states(), ex.target.states(),
                                          {{"t1", "u1"}, {"t2", "u2"}, {"t3", "u2"}});
    ex.f_right = StateFunction::from_names(ex.right.states(), ex.target.states(), {{"s", "u1"}});
    return ex;
}

} // namespace nbhd
