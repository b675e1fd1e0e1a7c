#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "thom/error.hpp"

namespace thom {

// Weakly decreasing sequence of positive parts. Zero parts are never stored,
// so the empty partition is the index of s_0 = 1.
class Partition {
public:
    Partition() = default;

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0)
                throw Error(errc::invalid_partition, "partition parts must be positive: " + str());
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw Error(errc::invalid_partition, "partition must be weakly decreasing: " + str());
        }
    }

    // Accepts trailing zeros and drops them; anything else must already be valid.
    static Partition from_padded(std::vector<int> parts) {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    // λ_i with 1-based index; zero beyond the length.
    int operator[](std::size_t i) const noexcept {
        return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0;
    }
    int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        return out + "]";
    }

    bool operator==(const Partition&) const = default;

    // Length first, then lexicographic.
    std::strong_ordering operator<=>(const Partition& other) const {
        if (auto c = parts_.size() <=> other.parts_.size(); c != 0) return c;
        return parts_ <=> other.parts_;
    }

private:
    std::vector<int> parts_;
};

// λ*_i = max{ j : λ_j >= i }.
inline Partition conjugate(const Partition& lambda) {
    std::vector<int> out(static_cast<std::size_t>(lambda.largest()), 0);
    for (int i = 1; i <= lambda.largest(); ++i) {
        int j = 0;
        while (static_cast<std::size_t>(j) < lambda.length() && lambda[j + 1] >= i) ++j;
        out[i - 1] = j;
    }
    return Partition(std::move(out));
}

inline bool fits_in_box(const Partition& lambda, int rows, int cols) {
    return static_cast<int>(lambda.length()) <= rows && lambda.largest() <= cols;
}

// λ̂_i = cols − λ_{rows+1−i}; |λ| + |λ̂| = rows·cols.
inline Partition box_complement(const Partition& lambda, int rows, int cols) {
    if (rows < 0 || cols < 0 || !fits_in_box(lambda, rows, cols))
        throw Error(errc::out_of_box, lambda.str() + " does not fit a " + std::to_string(rows) + "x" +
                                          std::to_string(cols) + " box");
    std::vector<int> out(static_cast<std::size_t>(rows));
    for (int i = 1; i <= rows; ++i) out[i - 1] = cols - lambda[static_cast<std::size_t>(rows + 1 - i)];
    return Partition::from_padded(std::move(out));
}

// Every partition of `weight`, each part at most max_part and at most max_length parts.
// Ordered by descending lexicographic order of parts.
inline std::vector<Partition> partitions_of(int weight, int max_part = -1, int max_length = -1) {
    std::vector<Partition> out;
    if (weight < 0) return out;
    if (max_part < 0) max_part = weight;
    if (max_length < 0) max_length = weight;
    std::vector<int> current;
    auto rec = [&](auto&& self, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        if (static_cast<int>(current.size()) == max_length) return;
        for (int p = std::min(cap, remaining); p >= 1; --p) {
            current.push_back(p);
            self(self, remaining - p, p);
            current.pop_back();
        }
    };
    rec(rec, weight, max_part);
    return out;
}

// All partitions fitting the rows × cols box, by weight then the order above.
inline std::vector<Partition> partitions_in_box(int rows, int cols) {
    std::vector<Partition> out;
    for (int w = 0; w <= rows * cols; ++w)
        for (auto& p : partitions_of(w, cols, rows)) out.push_back(std::move(p));
    return out;
}

inline bool contains(const Partition& outer, const Partition& inner) {
    if (inner.length() > outer.length()) return false;
    for (std::size_t i = 1; i <= inner.length(); ++i)
        if (inner[i] > outer[i]) return false;
    return true;
}

}  // namespace thom
