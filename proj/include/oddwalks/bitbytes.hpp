#pragma once

#include <cstddef>
#include <string>

namespace oddwalks {

// Fixed-width bitset stored as a byte string, most significant bit first, so
// lexicographic order of the encoding equals lexicographic order of the bit
// vector.  The byte string doubles as the canonical state encoding.
class ByteBits {
  public:
    ByteBits() = default;
    explicit ByteBits(std::size_t nbits)
        : nbits_(nbits), bytes_((nbits + 7) / 8, '\0') {}
    ByteBits(std::size_t nbits, std::string bytes) : nbits_(nbits), bytes_(std::move(bytes)) {}

    std::size_t bit_count() const { return nbits_; }
    const std::string& bytes() const { return bytes_; }

    bool test(std::size_t k) const {
        return (static_cast<unsigned char>(bytes_[k / 8]) >> (7 - k % 8)) & 1u;
    }
    void set(std::size_t k) {
        bytes_[k / 8] = static_cast<char>(static_cast<unsigned char>(bytes_[k / 8]) |
                                          (1u << (7 - k % 8)));
    }
    void reset(std::size_t k) {
        bytes_[k / 8] = static_cast<char>(static_cast<unsigned char>(bytes_[k / 8]) &
                                          ~(1u << (7 - k % 8)));
    }

    std::size_t popcount() const {
        std::size_t count = 0;
        for (std::size_t k = 0; k < nbits_; ++k) count += test(k);
        return count;
    }

    bool operator==(const ByteBits& o) const = default;

  private:
    std::size_t nbits_ = 0;
    std::string bytes_;
};

}  // namespace oddwalks
