#ifndef FOLIATE_BITS_HPP
#define FOLIATE_BITS_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace foliate {

// Fixed-length bit vector packed into 64-bit words. Length is set at
// construction and never changes; all pairwise operations require equal
// lengths.
class BitVec {
  public:
    BitVec() : nbits_(0) {}
    explicit BitVec(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool get(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void xor_with(const BitVec& o) {
        check(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }
    void and_with(const BitVec& o) {
        check(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    }

    // popcount of AND, i.e. the GF(2)-relevant overlap count (as an integer).
    std::size_t dot_count(const BitVec& o) const {
        check(o);
        std::size_t c = 0;
        for (std::size_t k = 0; k < w_.size(); ++k)
            c += std::popcount(w_[k] & o.w_[k]);
        return c;
    }
    // dot product mod 2
    bool dot(const BitVec& o) const { return dot_count(o) & 1; }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_) if (w) return true;
        return false;
    }

    // index of lowest set bit, or size() if none
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
        return nbits_;
    }

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // lexicographic by bit index (bit 0 most significant) — used for
    // deterministic tie-breaking
    bool lex_less(const BitVec& o) const {
        check(o);
        for (std::size_t i = 0; i < nbits_; ++i) {
            bool a = get(i), b = o.get(i);
            if (a != b) return b;  // a=0,b=1 -> less
        }
        return false;
    }

  private:
    void check(const BitVec& o) const {
        if (nbits_ != o.nbits_) throw std::invalid_argument("BitVec length mismatch");
    }
    std::size_t nbits_;
    std::vector<uint64_t> w_;
};

}  // namespace foliate

#endif
