#pragma once
// GF(2^w) arithmetic for w in {8,16,32}. The two small widths run on
// log/antilog tables (w=8 additionally gets a full 64K product table so the
// block kernel can use one table row per coefficient); w=32 uses a portable
// carry-less multiply followed by polynomial reduction.

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace progec {

using Symbol = std::uint32_t;
using Block = std::vector<Symbol>;

class FieldContext {
public:
  // Reduction polynomials: the usual storage-coding defaults.
  static constexpr std::uint64_t kPoly8 = 0x11D;
  static constexpr std::uint64_t kPoly16 = 0x1100B;
  static constexpr std::uint64_t kPoly32 = 0x100400007ULL;

  int w() const { return w_; }
  std::uint64_t poly() const { return poly_; }
  Symbol max_element() const { return mask_; }

  static Symbol add(Symbol x, Symbol y) { return x ^ y; }

  Symbol mul(Symbol x, Symbol y) const {
    assert(x <= mask_ && y <= mask_);
    switch (w_) {
      case 8:
        return mul8_[(x << 8) | y];
      case 16:
        if (x == 0 || y == 0) return 0;
        return exp16_[log16_[x] + log16_[y]];
      default:
        return clmul_reduce(x, y);
    }
  }

  Symbol inv(Symbol x) const {
    if (x == 0) throw std::domain_error("gf: zero has no inverse");
    assert(x <= mask_);
    switch (w_) {
      case 8:
        return exp8_[255 - log8_[x]];
      case 16:
        return exp16_[65535 - log16_[x]];
      default:
        return pow(x, 0xFFFFFFFEull);  // x^(2^32-2) = x^-1
    }
  }

  Symbol pow(Symbol x, std::uint64_t e) const {
    Symbol r = 1, b = x;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  // acc[t] ^= coeff * src[t]
  void scale_add(Symbol* acc, const Symbol* src, std::size_t len, Symbol coeff) const {
    if (coeff == 0) return;
    if (coeff == 1) {
      for (std::size_t t = 0; t < len; ++t) acc[t] ^= src[t];
      return;
    }
    switch (w_) {
      case 8: {
        const std::uint8_t* row = &mul8_[std::size_t(coeff) << 8];
        for (std::size_t t = 0; t < len; ++t) acc[t] ^= row[src[t]];
        break;
      }
      case 16: {
        if (len >= 64) {
          std::uint16_t lo[256], hi[256];
          for (Symbol b = 0; b < 256; ++b) {
            lo[b] = static_cast<std::uint16_t>(mul(coeff, b));
            hi[b] = static_cast<std::uint16_t>(mul(coeff, b << 8));
          }
          for (std::size_t t = 0; t < len; ++t)
            acc[t] ^= Symbol(lo[src[t] & 0xFF]) ^ Symbol(hi[(src[t] >> 8) & 0xFF]);
        } else {
          for (std::size_t t = 0; t < len; ++t) acc[t] ^= mul(coeff, src[t]);
        }
        break;
      }
      default: {
        if (len >= 1024) {
          std::vector<Symbol> tab(4 * 256);
          for (int byte = 0; byte < 4; ++byte)
            for (Symbol b = 0; b < 256; ++b)
              tab[std::size_t(byte) * 256 + b] = mul(coeff, b << (8 * byte));
          for (std::size_t t = 0; t < len; ++t) {
            Symbol s = src[t];
            acc[t] ^= tab[s & 0xFF] ^ tab[256 + ((s >> 8) & 0xFF)] ^
                      tab[512 + ((s >> 16) & 0xFF)] ^ tab[768 + (s >> 24)];
          }
        } else {
          for (std::size_t t = 0; t < len; ++t) acc[t] ^= mul(coeff, src[t]);
        }
      }
    }
  }

  // v[t] = coeff * v[t]
  void scale_inplace(Symbol* v, std::size_t len, Symbol coeff) const {
    if (coeff == 1) return;
    if (coeff == 0) {
      for (std::size_t t = 0; t < len; ++t) v[t] = 0;
      return;
    }
    if (w_ == 8) {
      const std::uint8_t* row = &mul8_[std::size_t(coeff) << 8];
      for (std::size_t t = 0; t < len; ++t) v[t] = row[v[t]];
    } else {
      for (std::size_t t = 0; t < len; ++t) v[t] = mul(coeff, v[t]);
    }
  }

private:
  friend const FieldContext& make_field(int w);

  explicit FieldContext(int w) : w_(w) {
    switch (w) {
      case 8:
        poly_ = kPoly8;
        mask_ = 0xFF;
        build8();
        break;
      case 16:
        poly_ = kPoly16;
        mask_ = 0xFFFF;
        build16();
        break;
      case 32:
        poly_ = kPoly32;
        mask_ = 0xFFFFFFFFu;
        break;
      default:
        throw std::invalid_argument("gf: unsupported width (want 8, 16 or 32)");
    }
  }

  void build8() {
    exp8_.resize(510);
    log8_.resize(256, 0);
    Symbol x = 1;
    for (int i = 0; i < 255; ++i) {
      if (x == 1 && i > 0) throw std::logic_error("gf: 2 is not primitive mod poly");
      exp8_[i] = static_cast<std::uint8_t>(x);
      log8_[x] = static_cast<std::uint8_t>(i);
      x <<= 1;
      if (x & 0x100) x ^= static_cast<Symbol>(kPoly8);
    }
    if (x != 1) throw std::logic_error("gf: antilog cycle broken");
    for (int i = 255; i < 510; ++i) exp8_[i] = exp8_[i - 255];
    mul8_.resize(1 << 16);
    for (Symbol a = 0; a < 256; ++a)
      for (Symbol b = 0; b < 256; ++b)
        mul8_[(a << 8) | b] = (a && b) ? exp8_[log8_[a] + log8_[b]] : 0;
  }

  void build16() {
    exp16_.resize(2 * 65535);
    log16_.resize(1 << 16, 0);
    Symbol x = 1;
    for (int i = 0; i < 65535; ++i) {
      if (x == 1 && i > 0) throw std::logic_error("gf: 2 is not primitive mod poly");
      exp16_[i] = static_cast<std::uint16_t>(x);
      log16_[x] = static_cast<std::uint16_t>(i);
      x <<= 1;
      if (x & 0x10000) x ^= static_cast<Symbol>(kPoly16);
    }
    if (x != 1) throw std::logic_error("gf: antilog cycle broken");
    for (int i = 65535; i < 2 * 65535; ++i) exp16_[i] = exp16_[i - 65535];
  }

  static std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    std::uint64_t x = a;
    while (b) {
      r ^= x << std::countr_zero(b);
      b &= b - 1;
    }
    return r;
  }

  Symbol clmul_reduce(Symbol x, Symbol y) const {
    std::uint64_t p = clmul(x, y);
    for (int i = 62; i >= 32; --i)
      if ((p >> i) & 1) p ^= kPoly32 << (i - 32);
    return static_cast<Symbol>(p);
  }

  int w_;
  std::uint64_t poly_ = 0;
  Symbol mask_ = 0;
  std::vector<std::uint8_t> exp8_, log8_, mul8_;
  std::vector<std::uint16_t> exp16_, log16_;
};

// Shared immutable contexts, built on first use.
inline const FieldContext& make_field(int w) {
  switch (w) {
    case 8: {
      static const FieldContext f(8);
      return f;
    }
    case 16: {
      static const FieldContext f(16);
      return f;
    }
    case 32: {
      static const FieldContext f(32);
      return f;
    }
    default:
      throw std::invalid_argument("gf: unsupported width (want 8, 16 or 32)");
  }
}

inline void block_scale_add(const FieldContext& F, Block& acc, Symbol coeff, const Block& src) {
  if (acc.size() != src.size()) throw std::invalid_argument("gf: block length mismatch");
  F.scale_add(acc.data(), src.data(), acc.size(), coeff);
}

}  // namespace progec
