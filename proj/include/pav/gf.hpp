#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pav/ntheory.hpp"

namespace pav {

// Element of F_q encoded as an integer in [0, q): sum of c_i p^i with the
// F_p coordinates c_i as base-p digits.
using SubCode = uint32_t;

struct FieldParams {
  unsigned p = 2;  // characteristic (prime)
  unsigned m = 1;  // q = p^m
  unsigned n = 2;  // extension degree of F_{q^n} over F_q

  uint64_t q() const;
  BigInt order() const;  // q^n
  std::string descriptor() const;                       // "p^m^n"
  static FieldParams parse(const std::string& text);    // inverse of descriptor
};

// F_q = F_p[y]/(g) with exp/log multiplication tables.  Codes are the
// canonical integer encoding above; 0 and 1 mean what they say.
class Subfield {
 public:
  static Subfield build(unsigned p, unsigned m);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  uint32_t q() const { return q_; }
  // Monic irreducible of degree m over F_p, empty when m == 1.
  const std::vector<SubCode>& modulus() const { return modulus_; }
  SubCode generator() const { return gen_; }

  SubCode add(SubCode a, SubCode b) const;
  SubCode sub(SubCode a, SubCode b) const;
  SubCode neg(SubCode a) const;
  SubCode mul(SubCode a, SubCode b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  SubCode inv(SubCode a) const;
  SubCode pow(SubCode a, uint64_t e) const;
  uint32_t log(SubCode a) const;  // a != 0

 private:
  unsigned p_ = 2, m_ = 1;
  uint32_t q_ = 2;
  SubCode gen_ = 1;
  std::vector<SubCode> modulus_;
  std::vector<SubCode> exp_;   // size q-1, exp_[k] = gen^k
  std::vector<uint32_t> log_;  // size q, inverse of exp_ (log_[0] unused)
};

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

class FieldElement {
 public:
  FieldElement() = default;

  const FieldCtx* ctx() const { return ctx_; }
  const std::vector<SubCode>& coords() const { return coords_; }
  bool is_zero() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement pow(const BigInt& e) const;
  FieldElement inverse() const;  // throws ZeroElement

  std::string to_string() const;  // coords as "[c0,c1,...]"

 private:
  friend class FieldCtx;
  FieldElement(const FieldCtx* ctx, std::vector<SubCode> coords)
      : ctx_(ctx), coords_(std::move(coords)) {}

  const FieldCtx* ctx_ = nullptr;
  std::vector<SubCode> coords_;  // length n over F_q, degree-ascending
};

struct BuildOptions {
  uint64_t log_table_limit = uint64_t{1} << 24;
  FactorBudget factor_budget{};
};

// A concrete realization of the tower F_p <= F_q <= F_{q^n}.  Moduli and
// generator are selected deterministically (smallest in the fixed
// enumeration order), so two builds of the same params are identical.
class FieldCtx {
 public:
  static FieldCtxPtr build(const FieldParams& params, const FactorCache* cache = nullptr,
                           const BuildOptions& opts = {});

  const FieldParams& params() const { return params_; }
  const Subfield& subfield() const { return sub_; }
  const std::vector<SubCode>& ext_modulus() const { return ext_modulus_; }
  const Factorization& unit_group_order_factorization() const { return unit_order_; }
  BigInt order() const { return order_; }
  uint64_t order_u64() const { return order_u64_; }  // guarded at build
  uint64_t unit_order_u64() const { return order_u64_ - 1; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const { return element_at(gen_index_); }
  FieldElement make(std::vector<SubCode> coords) const;
  FieldElement from_subfield(SubCode c) const;  // constant embedding

  // Fixed enumeration order: coords[i] = digit i of index in base q.
  FieldElement element_at(uint64_t index) const;
  uint64_t index_of(const FieldElement& y) const;

  bool has_log_table() const { return !log_.empty(); }
  // Exponent k with generator^k = y.  Throws ZeroElement / NoLogTable.
  uint64_t discrete_log(const FieldElement& y) const;
  uint64_t discrete_log_at(uint64_t index) const;  // index != 0, unchecked ctx
  const std::vector<uint32_t>& log_table() const { return log_; }

  // coords-level arithmetic
  void add_into(std::span<const SubCode> a, std::span<const SubCode> b,
                std::span<SubCode> out) const;
  void sub_into(std::span<const SubCode> a, std::span<const SubCode> b,
                std::span<SubCode> out) const;
  void mul_into(std::span<const SubCode> a, std::span<const SubCode> b,
                std::span<SubCode> out) const;

 private:
  FieldCtx() = default;

  FieldParams params_;
  Subfield sub_;
  std::vector<SubCode> ext_modulus_;  // length n+1, monic over F_q
  std::vector<SubCode> xn_red_;       // x^n mod f, length n
  Factorization unit_order_;
  BigInt order_;
  uint64_t order_u64_ = 0;
  uint64_t gen_index_ = 0;
  std::vector<uint32_t> log_;  // size order, log_[index_of(y)] for y != 0
};

// Irreducibility of a monic polynomial over the subfield of ctx-like tables
// (degree-ascending coefficients, leading coefficient 1).
bool is_irreducible(const Subfield& sub, std::span<const SubCode> poly);

// True iff y != 0 and y^((q^n-1)/r) != 1 for every prime r | q^n-1.
bool is_primitive(const FieldElement& y);

// An F_q-basis of F_{q^n} with its change-of-basis matrices.
class Basis {
 public:
  static Basis power_basis(const FieldCtxPtr& ctx);
  // Throws DomainError when the elements are linearly dependent over F_q.
  static Basis from_elements(const FieldCtxPtr& ctx, std::vector<FieldElement> elems);

  const FieldCtxPtr& ctx() const { return ctx_; }
  const std::vector<FieldElement>& elements() const { return elems_; }

  // Unique a_1..a_n with y = sum a_i b_i.
  std::vector<SubCode> digits(const FieldElement& y) const;
  FieldElement recombine(std::span<const SubCode> digits) const;

 private:
  FieldCtxPtr ctx_;
  std::vector<FieldElement> elems_;
  std::vector<SubCode> to_power_;    // n x n row-major: digits -> power coords
  std::vector<SubCode> from_power_;  // inverse
};

// Gauss-Jordan inverse of a row-major k x k matrix over the subfield.
// Returns empty vector when singular.
std::vector<SubCode> invert_matrix(const Subfield& sub, std::span<const SubCode> mat, unsigned k);

}  // namespace pav
