#include "nbhd/ufext.hpp"

#include <algorithm>
#include <stdexcept>

#include "nbhd/error.hpp"

namespace nbhd {

bool Ultrafilter::contains(const StateSet& u) const {
    return std::binary_search(members.begin(), members.end(), u);
}

std::vector<Ultrafilter> ultrafilters(const Model& m) {
    const std::size_t n = m.size();
    if (n > 12) throw CapExceeded("ultrafilters over " + std::to_string(n) + " states");
    std::vector<Ultrafilter> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        Ultrafilter u{s, {}};
        for_each_subset(n, [&](const StateSet& x) {
            if (x.contains(s)) u.members.push_back(x);
        });
        // Axioms, checked on the member sets. The quadratic part only runs
        // at the carrier sizes this library is used with.
        if (!u.contains(StateSet::full_set(n)))
            throw std::logic_error("ultrafilter misses the carrier");
        for_each_subset(n, [&](const StateSet& x) {
            if (u.contains(x) == u.contains(x.complement()))
                throw std::logic_error("ultrafilter fails complement-completeness");
        });
        if (n <= 8) {
            for (const auto& a : u.members) {
                for (const auto& b : u.members)
                    if (!u.contains(a & b)) throw std::logic_error("ultrafilter not meet-closed");
                for_each_subset(n, [&](const StateSet& b) {
                    if (a.subset_of(b) && !u.contains(b))
                        throw std::logic_error("ultrafilter not upward closed");
                });
            }
        }
        out.push_back(std::move(u));
    }
    return out;
}

UltrafilterExtension ultrafilter_extension(const Model& m) {
    const std::size_t n = m.size();
    const std::vector<Ultrafilter> ufs = ultrafilters(m);
    const std::size_t k = ufs.size();

    std::vector<std::string> names;
    names.reserve(k);
    for (const auto& u : ufs) names.push_back("uf:" + m.states().name(u.point));
    Carrier carrier(std::move(names));

    auto hat = [&](const StateSet& u) {
        StateSet h(k);
        for (std::size_t i = 0; i < k; ++i)
            if (ufs[i].contains(u)) h.insert(i);
        return h;
    };

    std::vector<std::vector<StateSet>> table(k);
    for (std::size_t i = 0; i < k; ++i) {
        for_each_subset(n, [&](const StateSet& u) {
            if (ufs[i].contains(m.boxtimes(u))) table[i].push_back(hat(u));
        });
    }

    std::map<int, StateSet> vals;
    for (int a : m.atom_support()) {
        StateSet v(k);
        for (std::size_t i = 0; i < k; ++i)
            if (ufs[i].contains(m.valuation(a))) v.insert(i);
        vals.emplace(a, v);
    }

    UltrafilterExtension ext{Model(carrier, std::move(table), std::move(vals)), StateFunction()};
    std::vector<std::size_t> principal(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t found = k;
        for (std::size_t i = 0; i < k; ++i)
            if (ufs[i].point == s) found = i;
        principal[s] = found;
    }
    ext.principal = StateFunction(m.states(), carrier, std::move(principal));
    return ext;
}

StateFunction lift_morphism(const StateFunction& f, const Model& m1, const Model& m2) {
    if (auto rep = check_bounded_morphism(f, m1, m2); !rep.ok)
        throw PropertyError("not-a-bounded-morphism",
                            "lift: the given map is not a bounded morphism");
    const std::vector<Ultrafilter> uf1 = ultrafilters(m1);
    const std::vector<Ultrafilter> uf2 = ultrafilters(m2);
    const UltrafilterExtension e1 = ultrafilter_extension(m1);
    const UltrafilterExtension e2 = ultrafilter_extension(m2);

    std::vector<std::size_t> map(uf1.size());
    for (std::size_t i = 0; i < uf1.size(); ++i) {
        // 2^2(f) restricted to the ultrafilter: collect the image member set
        // and locate it among the codomain's ultrafilters.
        std::vector<StateSet> image;
        for_each_subset(m2.size(), [&](const StateSet& d) {
            if (uf1[i].contains(f.preimage(d))) image.push_back(d);
        });
        std::size_t target = uf2.size();
        for (std::size_t j = 0; j < uf2.size(); ++j)
            if (uf2[j].members == image) target = j;
        if (target == uf2.size())
            throw std::logic_error("lifted image is not an ultrafilter over the codomain");
        map[i] = target;
    }
    StateFunction lifted(e1.model.states(), e2.model.states(), std::move(map));
    if (!is_bounded_morphism(lifted, e1.model, e2.model))
        throw std::logic_error("lifted morphism failed the bounded-morphism check");
    return lifted;
}

} // namespace nbhd
