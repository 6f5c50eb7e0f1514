#include "mel/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace mel {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / gcd_u64(a, b) * b;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers < 2 || n < 2048) {
    fn(0, n);
    return;
  }
  workers = std::min<std::size_t>(workers, 8);
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& t : pool) t.join();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// --- dense polynomials over Z/p, used only while constructing a field ---

using ZpPoly = std::vector<int>;  // coefficients, index = exponent

void trim(ZpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of a by monic m
ZpPoly rem(ZpPoly a, const ZpPoly& m, int p) {
  trim(a);
  while (a.size() >= m.size()) {
    int lead = a.back();
    std::size_t shift = a.size() - m.size();
    if (lead != 0)
      for (std::size_t i = 0; i < m.size(); ++i)
        a[i + shift] = ((a[i + shift] - lead * m[i]) % p + p) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

ZpPoly mul_mod(const ZpPoly& a, const ZpPoly& b, const ZpPoly& m, int p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return rem(std::move(c), m, p);
}

ZpPoly pow_mod(ZpPoly base, std::uint64_t e, const ZpPoly& m, int p) {
  ZpPoly r{1};
  base = rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mul_mod(r, base, m, p);
    base = mul_mod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

ZpPoly poly_gcd(ZpPoly a, ZpPoly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic before reducing
    int lead = b.back();
    if (lead != 1) {
      int inv = 1;
      for (int i = 1; i < p; ++i)
        if (i * lead % p == 1) inv = i;
      for (auto& c : b) c = c * inv % p;
    }
    ZpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin: f monic of degree k is irreducible iff x^{p^k} = x (mod f) and
// gcd(x^{p^{k/t}} - x, f) = 1 for every prime t | k.
bool is_irreducible(const ZpPoly& f, int p) {
  int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  ZpPoly x{0, 1};
  ZpPoly h = x;
  std::vector<ZpPoly> frob(k + 1);  // frob[i] = x^{p^i} mod f
  for (int i = 1; i <= k; ++i) {
    h = pow_mod(h, static_cast<std::uint64_t>(p), f, p);
    frob[i] = h;
  }
  ZpPoly top = frob[k];
  ZpPoly diff = top;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  trim(diff);
  if (!diff.empty()) return false;  // x^{p^k} != x
  for (std::uint64_t t : prime_divisors(k)) {
    ZpPoly d = frob[k / t];
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    trim(d);
    ZpPoly g = poly_gcd(f, d, p);
    if (!(g.size() == 1)) return false;
  }
  return true;
}

}  // namespace

Field::Field(int p, int k) : p_(p), k_(k) {
  require(is_prime(static_cast<std::uint64_t>(p)), "make_field: p must be prime");
  require(k >= 1, "make_field: extension degree must be >= 1");

  // q = p^k, with a hard cap so the log tables stay reasonable
  std::uint64_t q = 1;
  ppow_.assign(k + 1, 0);
  ppow_[0] = 1;
  for (int i = 1; i <= k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    require(q <= (1u << 22), "make_field: finite stage p^k too large for table-based arithmetic");
    ppow_[i] = static_cast<std::uint32_t>(q);
  }
  q_ = static_cast<std::uint32_t>(q);

  // lexicographically smallest monic irreducible (c_0, ..., c_{k-1})
  ZpPoly mod;
  for (std::uint32_t counter = 0;; ++counter) {
    require(counter < q_, "make_field: no irreducible modulus found");
    ZpPoly cand(k + 1, 0);
    cand[k] = 1;
    std::uint32_t rest = counter;
    // counter digits, most significant first, are (c_0, c_1, ...)
    for (int i = k - 1; i >= 0; --i) {
      cand[k - 1 - i] = static_cast<int>(rest / ppow_[i]);
      rest %= ppow_[i];
    }
    if (is_irreducible(cand, p)) {
      mod = cand;
      break;
    }
  }
  modulus_.assign(mod.begin(), mod.end());

  auto decode = [&](std::uint32_t code) {
    ZpPoly f;
    f.reserve(k);
    for (int i = 0; i < k; ++i) f.push_back(static_cast<int>(code / ppow_[i] % p));
    trim(f);
    return f;
  };
  auto encode = [&](const ZpPoly& f) {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      code += static_cast<std::uint32_t>(f[i]) * ppow_[i];
    return code;
  };
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return encode(mul_mod(decode(a), decode(b), mod, p));
  };
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  // deterministic generator: smallest code of multiplicative order q-1
  auto divisors = prime_divisors(q_ - 1);
  for (std::uint32_t c = 1; c < q_; ++c) {
    bool ok = true;
    for (std::uint64_t t : divisors)
      if (slow_pow(c, (q_ - 1) / t) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      generator_ = c;
      break;
    }
  }

  antilog_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  std::uint32_t acc = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    antilog_[i] = acc;
    log_[acc] = i;
    acc = slow_mul(acc, generator_);
  }
  require(acc == 1, "make_field: generator order mismatch");

  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a)
    inv_[a] = antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];

  neg_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t code = 0;
    for (int i = 0; i < k; ++i) {
      int d = static_cast<int>(a / ppow_[i] % p);
      code += static_cast<std::uint32_t>((p - d) % p) * ppow_[i];
    }
    neg_[a] = code;
  }

  if (q_ <= kAddTableCap) {
    add_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b <= a; ++b) {
        std::uint32_t code = 0;
        for (int i = 0; i < k; ++i) {
          int da = static_cast<int>(a / ppow_[i] % p);
          int db = static_cast<int>(b / ppow_[i] % p);
          code += static_cast<std::uint32_t>((da + db) % p) * ppow_[i];
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = code;
        add_table_[static_cast<std::size_t>(b) * q_ + a] = code;
      }
  }
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (!add_table_.empty())
    return add_table_[static_cast<std::size_t>(a) * q_ + b];
  std::uint32_t code = 0;
  for (int i = 0; i < k_; ++i) {
    int da = static_cast<int>(a / ppow_[i] % p_);
    int db = static_cast<int>(b / ppow_[i] % p_);
    code += static_cast<std::uint32_t>((da + db) % p_) * ppow_[i];
  }
  return code;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg_[b]);
}

std::uint32_t Field::pow(std::uint32_t a, long long e) const {
  if (a == 0) {
    require(e > 0, e == 0 ? "GF(p^k): 0^0 undefined" : "GF(p^k): zero has no inverse");
    return 0;
  }
  long long n = q_ - 1;
  long long r = static_cast<long long>(log_[a]) % n * (e % n) % n;
  if (r < 0) r += n;
  return antilog_[static_cast<std::uint32_t>(r)];
}

std::uint32_t Field::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::vector<int> Field::coords(std::uint32_t code) const {
  std::vector<int> c(k_);
  for (int i = 0; i < k_; ++i) c[i] = static_cast<int>(code / ppow_[i] % p_);
  return c;
}

std::uint32_t Field::code_of(std::span<const int> coords) const {
  require(static_cast<int>(coords.size()) == k_,
          "field element coordinates have wrong length");
  std::uint32_t code = 0;
  for (int i = 0; i < k_; ++i) {
    require(coords[i] >= 0 && coords[i] < p_, "field element coordinate out of range");
    code += static_cast<std::uint32_t>(coords[i]) * ppow_[i];
  }
  return code;
}

std::uint32_t Field::element_order(std::uint32_t a) const {
  require(a != 0, "multiplicative order of zero is undefined");
  return (q_ - 1) / static_cast<std::uint32_t>(gcd_u64(log_[a], q_ - 1));
}

std::uint32_t Field::root_of_unity(std::uint64_t m) const {
  require(m >= 1, "root_of_unity: order must be positive");
  require(m % static_cast<std::uint64_t>(p_) != 0,
          "root_of_unity: order divisible by the characteristic; no such root "
          "exists in characteristic p");
  require((q_ - 1) % m == 0,
          "root_of_unity: order does not divide p^k - 1; enlarge the field via "
          "extend_field");
  return antilog_[(q_ - 1) / static_cast<std::uint32_t>(m) % (q_ - 1)];
}

std::optional<std::uint32_t> Field::cube_root(std::uint32_t a) const {
  if (a == 0) return 0u;
  std::uint64_t n = q_ - 1;
  std::uint64_t g = gcd_u64(3, n);
  std::uint64_t l = log_[a];
  if (l % g != 0) return std::nullopt;
  // solve 3x = l (mod n); smallest nonnegative solution
  std::uint64_t n2 = n / g, l2 = l / g, a2 = 3 / g;
  // inverse of a2 mod n2 (a2 is 1 or 3, n2 small)
  std::uint64_t inv = 1;
  for (std::uint64_t i = 0; i < n2; ++i)
    if (a2 * i % n2 == 1 % n2) {
      inv = i;
      break;
    }
  std::uint64_t x = l2 % n2 * inv % n2;
  std::uint32_t best = 0;
  bool have = false;
  for (std::uint64_t i = 0; i < g; ++i) {
    std::uint32_t cand = antilog_[(x + i * n2) % n];
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  }
  return best;
}

std::string Field::str(std::uint32_t code) const {
  if (k_ == 1) return std::to_string(code);
  std::ostringstream os;
  os << "[";
  auto c = coords(code);
  for (int i = 0; i < k_; ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

const Field& Field::get(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, k))).first;
  return *it->second;
}

const Field& make_field(int p, int k) { return Field::get(p, k); }

std::uint32_t FieldEmbedding::map(std::uint32_t code) const {
  // Horner evaluation of the source coordinates at the chosen root
  auto c = src->coords(code);
  std::uint32_t acc = 0;
  for (int i = src->degree() - 1; i >= 0; --i)
    acc = dst->add(dst->mul(acc, root), dst->from_int(c[i]));
  return acc;
}

FieldEmbedding embed_field(const Field& src, const Field& dst) {
  require(src.characteristic() == dst.characteristic(),
          "embed_field: characteristic mismatch");
  require(dst.degree() % src.degree() == 0,
          "embed_field: source degree must divide target degree");
  FieldEmbedding e;
  e.src = &src;
  e.dst = &dst;
  // smallest root of the source modulus in the target field
  const auto& mod = src.modulus();
  int k = src.degree();
  bool found = false;
  for (std::uint32_t cand = 0; cand < dst.order(); ++cand) {
    std::uint32_t acc = 0;
    for (int i = k; i >= 0; --i)
      acc = dst.add(dst.mul(acc, cand), dst.from_int(mod[i]));
    if (acc == 0) {
      e.root = cand;
      found = true;
      break;
    }
  }
  require(found, "embed_field: modulus has no root in the extension");
  return e;
}

FieldEmbedding extend_field(const Field& f, std::uint64_t m) {
  require(m >= 1, "extend_field: order must be positive");
  require(m % static_cast<std::uint64_t>(f.characteristic()) != 0,
          "extend_field: order divisible by the characteristic");
  int p = f.characteristic(), k = f.degree();
  // multiplicative order of p modulo m
  std::uint64_t ord = 1;
  if (m > 1) {
    std::uint64_t acc = static_cast<std::uint64_t>(p) % m;
    while (acc != 1) {
      acc = acc * p % m;
      ++ord;
      require(ord <= m, "extend_field: order computation failed");
    }
  }
  std::uint64_t j = lcm_u64(static_cast<std::uint64_t>(k), ord);
  return embed_field(f, Field::get(p, static_cast<int>(j)));
}

namespace {

// Pascal triangle mod p for digits, cached per characteristic.
const std::vector<std::uint8_t>& pascal_mod(int p) {
  static std::mutex mu;
  static std::map<int, std::vector<std::uint8_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) {
    std::vector<std::uint8_t> t(static_cast<std::size_t>(p) * p, 0);
    for (int a = 0; a < p; ++a) {
      t[static_cast<std::size_t>(a) * p] = 1;
      for (int b = 1; b <= a; ++b)
        t[static_cast<std::size_t>(a) * p + b] = static_cast<std::uint8_t>(
            (t[static_cast<std::size_t>(a - 1) * p + b] +
             t[static_cast<std::size_t>(a - 1) * p + (b - 1)]) %
            p);
    }
    it = cache.emplace(p, std::move(t)).first;
  }
  return it->second;
}

}  // namespace

int binom_mod_p(std::uint64_t a, std::uint64_t b, int p) {
  require(is_prime(static_cast<std::uint64_t>(p)), "binom_mod_p: modulus must be prime");
  const auto& t = pascal_mod(p);
  std::uint64_t up = static_cast<std::uint64_t>(p);
  int res = 1;
  while (a || b) {
    std::uint64_t da = a % up, db = b % up;
    if (db > da) return 0;
    res = res * t[static_cast<std::size_t>(da) * p + db] % p;
    a /= up;
    b /= up;
  }
  return res;
}

int multi_binom(std::span<const int> a, std::span<const int> b, int p) {
  require(a.size() == b.size(), "multi_binom: length mismatch");
  int res = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i] >= 0 && b[i] >= 0, "multi_binom: entries must be nonnegative");
    res = res *
          binom_mod_p(static_cast<std::uint64_t>(a[i]) + b[i],
                      static_cast<std::uint64_t>(a[i]), p) %
          p;
  }
  return res;
}

}  // namespace mel
