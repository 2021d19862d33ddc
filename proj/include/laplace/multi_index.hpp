#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

// Fixed-length integer vector. Entries may be negative so that the same type
// indexes both completion orthants.
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t d) : e_(d, 0)
    {
        require(d >= 1, "multi-index dimension must be at least 1");
    }
    MultiIndex(std::initializer_list<long> init) : e_(init)
    {
        require(!e_.empty(), "multi-index dimension must be at least 1");
    }
    explicit MultiIndex(std::vector<long> v) : e_(std::move(v))
    {
        require(!e_.empty(), "multi-index dimension must be at least 1");
    }

    static MultiIndex zero(std::size_t d) { return MultiIndex(d); }
    static MultiIndex unit(std::size_t d, std::size_t i)
    {
        MultiIndex m(d);
        m.e_.at(i) = 1;
        return m;
    }
    static MultiIndex constant(std::size_t d, long c)
    {
        MultiIndex m(d);
        for (auto &x : m.e_) {
            x = c;
        }
        return m;
    }

    std::size_t size() const noexcept { return e_.size(); }
    long operator[](std::size_t i) const { return e_[i]; }
    long &operator[](std::size_t i) { return e_[i]; }
    const std::vector<long> &entries() const noexcept { return e_; }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }

    // |alpha|
    long total() const
    {
        long s = 0;
        for (long x : e_) {
            s += x;
        }
        return s;
    }
    bool is_nonnegative() const
    {
        for (long x : e_) {
            if (x < 0) {
                return false;
            }
        }
        return true;
    }
    bool is_nonpositive() const
    {
        for (long x : e_) {
            if (x > 0) {
                return false;
            }
        }
        return true;
    }
    bool is_zero() const
    {
        for (long x : e_) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }

    // alpha! = prod alpha_i!, defined for nonnegative entries.
    Integer factorial() const
    {
        require(is_nonnegative(), "multi-index factorial needs nonnegative entries");
        Integer f = 1;
        for (long x : e_) {
            f *= laplace::factorial(static_cast<unsigned long>(x));
        }
        return f;
    }

    MultiIndex operator-() const
    {
        MultiIndex r = *this;
        for (auto &x : r.e_) {
            x = -x;
        }
        return r;
    }
    MultiIndex &operator+=(const MultiIndex &o)
    {
        check_dim(o);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            e_[i] += o.e_[i];
        }
        return *this;
    }
    MultiIndex &operator-=(const MultiIndex &o)
    {
        check_dim(o);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            e_[i] -= o.e_[i];
        }
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex &b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex &b) { return a -= b; }

    // Lexicographic, used only for container ordering.
    friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

private:
    void check_dim(const MultiIndex &o) const
    {
        require(o.size() == size(), "multi-index length mismatch");
    }

    std::vector<long> e_;
};

// Result of the componentwise partial order. `less` means a <= b everywhere
// with strict inequality in at least one slot.
enum class PartialOrder { less, equal, greater, incomparable };

inline PartialOrder multiindex_order(const MultiIndex &a, const MultiIndex &b)
{
    require(a.size() == b.size(), "multi-index length mismatch");
    bool le = true, ge = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        le = le && a[i] <= b[i];
        ge = ge && a[i] >= b[i];
    }
    if (le && ge) {
        return PartialOrder::equal;
    }
    if (le) {
        return PartialOrder::less;
    }
    if (ge) {
        return PartialOrder::greater;
    }
    return PartialOrder::incomparable;
}

inline bool leq(const MultiIndex &a, const MultiIndex &b)
{
    auto o = multiindex_order(a, b);
    return o == PartialOrder::less || o == PartialOrder::equal;
}

inline bool lt(const MultiIndex &a, const MultiIndex &b) { return multiindex_order(a, b) == PartialOrder::less; }

// All nonnegative multi-indices in the box 0 <= alpha <= hi, in lexicographic order.
inline std::vector<MultiIndex> box(const MultiIndex &hi)
{
    require(hi.is_nonnegative(), "box bound must be nonnegative");
    std::vector<MultiIndex> out;
    MultiIndex cur = MultiIndex::zero(hi.size());
    while (true) {
        out.push_back(cur);
        std::size_t i = hi.size();
        while (i > 0) {
            --i;
            if (cur[i] < hi[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < hi.size(); ++j) {
                    cur[j] = 0;
                }
                break;
            }
            if (i == 0) {
                return out;
            }
        }
    }
}

// Nonnegative multi-indices of dimension d with |alpha| <= n.
inline std::vector<MultiIndex> simplex(std::size_t d, long n)
{
    std::vector<MultiIndex> out;
    for (const auto &a : box(MultiIndex::constant(d, n))) {
        if (a.total() <= n) {
            out.push_back(a);
        }
    }
    return out;
}

} // namespace laplace
