#ifndef NBHD_RUNTIME_HPP
#define NBHD_RUNTIME_HPP

namespace nbhd {

/// Worker count for the data-parallel parts of the fixpoint engines.
/// Results are independent of this setting: rounds are pure and their
/// results are combined in carrier order.
void set_jobs(int jobs);
int jobs();

} // namespace nbhd

#endif
