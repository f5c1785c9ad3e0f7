#ifndef NBHD_STATESET_HPP
#define NBHD_STATESET_HPP

#include <cstdint>
#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "nbhd/error.hpp"

namespace nbhd {

/// Subset of a fixed finite carrier, stored as a bit-vector indexed by
/// carrier position. All set operations stay inside the declared universe,
/// and the ordering (numeric value of the bit string, state 0 = lowest bit)
/// is the canonical order used whenever collections of sets are sorted.
class StateSet {
public:
    StateSet() : size_(0) {}
    explicit StateSet(std::size_t universe_size)
        : size_(universe_size), words_(word_count(universe_size), 0) {}

    static StateSet empty_set(std::size_t n) { return StateSet(n); }

    static StateSet full_set(std::size_t n) {
        StateSet s(n);
        for (std::size_t i = 0; i < n; ++i) s.insert(i);
        return s;
    }

    static StateSet singleton(std::size_t n, std::size_t i) {
        StateSet s(n);
        s.insert(i);
        return s;
    }

    /// Low 'n' bits of 'mask' become the members. Only for n <= 64.
    static StateSet from_mask(std::size_t n, std::uint64_t mask) {
        StateSet s(n);
        if (n > 0) s.words_[0] = (n >= 64) ? mask : (mask & ((std::uint64_t{1} << n) - 1));
        return s;
    }

    std::size_t universe() const { return size_; }

    bool contains(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void insert(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    /// Index of the least member; universe() when empty.
    std::size_t least() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[k]));
        return size_;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    StateSet operator|(const StateSet& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
    StateSet operator&(const StateSet& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
    StateSet operator-(const StateSet& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }

    StateSet complement() const { return full_set(size_) - *this; }

    StateSet& operator|=(const StateSet& o) { return *this = *this | o; }
    StateSet& operator&=(const StateSet& o) { return *this = *this & o; }

    bool subset_of(const StateSet& o) const {
        check_universe(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    bool operator==(const StateSet& o) const { return size_ == o.size_ && words_ == o.words_; }
    bool operator!=(const StateSet& o) const { return !(*this == o); }

    /// Canonical total order: compare as unsigned big integers.
    bool operator<(const StateSet& o) const {
        check_universe(o);
        for (std::size_t k = words_.size(); k-- > 0;)
            if (words_[k] != o.words_[k]) return words_[k] < o.words_[k];
        return false;
    }

    std::size_t hash() const {
        std::size_t h = size_;
        for (std::uint64_t w : words_) h = h * 1099511628211ull ^ static_cast<std::size_t>(w);
        return h;
    }

private:
    static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

    void check_universe(const StateSet& o) const {
        if (size_ != o.size_) throw InputError("state-set universes differ");
    }

    template <class F>
    StateSet zip(const StateSet& o, F f) const {
        check_universe(o);
        StateSet r(size_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = f(words_[k], o.words_[k]);
        return r;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Calls fn(S) for every subset S of a universe of size n, in canonical
/// (numeric mask) order. Guarded: powerset walks are only meant for the
/// small carriers this library works with.
template <class F>
void for_each_subset(std::size_t n, F&& fn) {
    if (n > 20) throw CapExceeded("powerset enumeration over " + std::to_string(n) + " states");
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) fn(StateSet::from_mask(n, mask));
}

} // namespace nbhd

template <>
struct std::hash<nbhd::StateSet> {
    std::size_t operator()(const nbhd::StateSet& s) const { return s.hash(); }
};

#endif
