#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace spectra {

/// Dynamic bitset over element indices 0..n-1. Value type; equality and
/// ordering are by member list, so sets sort lexicographically by their
/// smallest differing member.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static ElementSet full(std::size_t universe) {
        ElementSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }

    bool contains(std::size_t i) const noexcept {
        return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1u);
    }
    void insert(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }

    bool subset_of(const ElementSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    ElementSet& operator|=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ElementSet& operator&=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }

    ElementSet complement() const {
        ElementSet c(universe_);
        for (std::size_t i = 0; i < universe_; ++i)
            if (!contains(i)) c.insert(i);
        return c;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                out.push_back(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                f(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const ElementSet& o) const = default;

    std::strong_ordering operator<=>(const ElementSet& o) const {
        auto a = members();
        auto b = o.members();
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

    std::size_t hash() const noexcept {
        std::size_t h = universe_;
        for (auto w : words_) h = h * 1099511628211ull ^ std::hash<std::uint64_t>{}(w);
        return h;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace spectra
