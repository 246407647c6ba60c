#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace qmf {

// Half-integer, stored as twice its value so that all bookkeeping stays in Z.
// Used for weights: the generators carry weights 1/2, 2 and 2.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt whole(long n) { return HalfInt(2 * n); }
    static constexpr HalfInt halves(long twice_value) { return HalfInt(twice_value); }

    constexpr long twice() const { return h_; }
    constexpr bool is_integer() const { return h_ % 2 == 0; }

    long as_integer() const {
        if (!is_integer())
            throw std::logic_error("HalfInt: " + str() + " is not an integer");
        return h_ / 2;
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.h_ + b.h_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.h_ - b.h_); }
    friend constexpr HalfInt operator+(HalfInt a, long n) { return HalfInt(a.h_ + 2 * n); }
    friend constexpr HalfInt operator-(HalfInt a, long n) { return HalfInt(a.h_ - 2 * n); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const {
        if (is_integer())
            return std::to_string(h_ / 2);
        return std::to_string(h_) + "/2";
    }

private:
    constexpr explicit HalfInt(long h) : h_(h) {}
    long h_ = 0;
};

} // namespace qmf
