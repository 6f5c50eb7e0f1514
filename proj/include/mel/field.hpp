#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mel/util.hpp"

namespace mel {

/// GF(p^k) with a fixed modulus: the lexicographically smallest monic
/// irreducible polynomial of degree k over GF(p), comparing coefficient
/// sequences (c_0, ..., c_{k-1}). The same (p, k) always produces the same
/// field object (interned), so element codes are stable across runs.
///
/// Elements are codes in [0, p^k): code = sum coords[i] * p^i where coords
/// are the coordinates in the power basis of the class of x.
class Field {
 public:
  static const Field& get(int p, int k);

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint32_t order() const { return q_; }           // p^k
  std::uint32_t group_order() const { return q_ - 1; }  // p^k - 1
  // monic modulus, coefficients c_0..c_k with c_k = 1
  const std::vector<int>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return antilog_[e];
  }
  std::uint32_t inv(std::uint32_t a) const {
    require(a != 0, "GF(p^k): zero has no inverse");
    return inv_[a];
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
    return mul(a, inv(b));
  }
  std::uint32_t pow(std::uint32_t a, long long e) const;

  std::uint32_t from_int(long long v) const;  // prime-subfield embedding
  std::vector<int> coords(std::uint32_t code) const;
  std::uint32_t code_of(std::span<const int> coords) const;

  std::uint32_t generator() const { return generator_; }  // order q-1, smallest code
  std::uint32_t element_order(std::uint32_t a) const;
  std::uint32_t dlog(std::uint32_t a) const {  // base generator()
    require(a != 0, "GF(p^k): zero has no discrete log");
    return log_[a];
  }

  // Deterministic element of exact multiplicative order m.
  // Errors when p | m or m does not divide p^k - 1.
  std::uint32_t root_of_unity(std::uint64_t m) const;

  // Smallest-exponent solution of x^3 = a, if one exists in this field.
  std::optional<std::uint32_t> cube_root(std::uint32_t a) const;

  std::string str(std::uint32_t code) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(int p, int k);

  int p_, k_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> antilog_, log_, inv_, neg_;
  std::vector<std::uint32_t> add_table_;  // only when q <= kAddTableCap
  std::vector<std::uint32_t> ppow_;       // p^0..p^k
  std::uint32_t generator_ = 0;

  static constexpr std::uint32_t kAddTableCap = 1024;
};

/// Checked element of an interned field; the friendly layer over codes.
class FieldElement {
 public:
  FieldElement() : f_(nullptr), code_(0) {}
  FieldElement(const Field& f, std::uint32_t code) : f_(&f), code_(code) {
    require(code < f.order(), "field element code out of range");
  }

  const Field& field() const {
    require(f_ != nullptr, "uninitialized field element");
    return *f_;
  }
  std::uint32_t code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }
  std::vector<int> coords() const { return field().coords(code_); }

  FieldElement operator+(const FieldElement& o) const {
    return FieldElement(same(o), f_->add(code_, o.code_));
  }
  FieldElement operator-(const FieldElement& o) const {
    return FieldElement(same(o), f_->sub(code_, o.code_));
  }
  FieldElement operator*(const FieldElement& o) const {
    return FieldElement(same(o), f_->mul(code_, o.code_));
  }
  FieldElement operator/(const FieldElement& o) const {
    return FieldElement(same(o), f_->div(code_, o.code_));
  }
  FieldElement operator-() const { return FieldElement(*f_, f_->neg(code_)); }
  FieldElement inverse() const { return FieldElement(*f_, f_->inv(code_)); }
  FieldElement pow(long long e) const {
    return FieldElement(*f_, f_->pow(code_, e));
  }
  std::uint32_t multiplicative_order() const { return f_->element_order(code_); }

  bool operator==(const FieldElement& o) const {
    return f_ == o.f_ && code_ == o.code_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string str() const { return field().str(code_); }

 private:
  const Field& same(const FieldElement& o) const {
    require(f_ != nullptr && f_ == o.f_,
            "field mismatch: operands live in different fields; route through "
            "extend_field");
    return *f_;
  }
  const Field* f_;
  std::uint32_t code_;
};

const Field& make_field(int p, int k);

/// Ring embedding GF(p^k) -> GF(p^j) determined by the smallest root of the
/// source modulus in the target field.
struct FieldEmbedding {
  const Field* src = nullptr;
  const Field* dst = nullptr;
  std::uint32_t root = 0;  // image of the class of x

  std::uint32_t map(std::uint32_t code) const;
  FieldElement operator()(const FieldElement& e) const {
    require(&e.field() == src, "embedding applied to element of another field");
    return FieldElement(*dst, map(e.code()));
  }
};

/// Smallest GF(p^j), j a multiple of f.degree(), whose multiplicative group
/// has order divisible by m. Errors when p | m.
FieldEmbedding extend_field(const Field& f, std::uint64_t m);

/// Embedding into an explicit target stage; src.degree() must divide
/// dst.degree().
FieldEmbedding embed_field(const Field& src, const Field& dst);

/// binomial(a, b) mod p, digit-wise in base p (Lucas); b > a gives 0.
int binom_mod_p(std::uint64_t a, std::uint64_t b, int p);

/// prod_i binomial(a_i + b_i, a_i) mod p.
int multi_binom(std::span<const int> a, std::span<const int> b, int p);

bool is_prime(std::uint64_t n);

}  // namespace mel
