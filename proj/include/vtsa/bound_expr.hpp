#pragma once

// Symbolic bound calculus: expression trees over nonnegative integers
// (literals, sums, products, powers, factorials, minima) with two rigorous
// evaluation modes.  Small values evaluate exactly to big integers under
// pinned caps; every nonzero value also carries an outward-rounded interval
// [lo, hi] enclosing its natural logarithm, held as exact rationals so that
// all arithmetic above the transcendental leaves is exact.  Comparisons
// against concrete integers are certified through either mode and report
// "undecided" honestly when a pinned precision budget cannot separate them.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vtsa/error.hpp"

namespace vtsa {

struct LogInterval {
  mpq_class lo, hi;  // ln(value) lies in [lo, hi]; requires value >= 1
};

namespace detail {

// Directed-rounding helpers.  MPFR numbers are binary rationals, so the
// conversions back to mpq are exact and the only rounding is the explicit
// outward rounding of the transcendental step itself.
class MpfrTemp {
public:
  explicit MpfrTemp(mpfr_prec_t prec) { mpfr_init2(f_, prec); }
  ~MpfrTemp() { mpfr_clear(f_); }
  MpfrTemp(const MpfrTemp&) = delete;
  MpfrTemp& operator=(const MpfrTemp&) = delete;
  mpfr_ptr get() { return f_; }

private:
  mpfr_t f_;
};

inline mpq_class to_mpq(mpfr_ptr f) {
  if (!mpfr_number_p(f))
    throw Error("bound interval arithmetic left the floating range");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), f);
  return q;
}

inline mpq_class log_dir_z(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  if (v == 1) return 0;
  MpfrTemp t(prec);
  mpfr_set_z(t.get(), v.get_mpz_t(), rnd);
  mpfr_log(t.get(), t.get(), rnd);
  return to_mpq(t.get());
}

inline mpq_class exp_dir_q(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  MpfrTemp t(prec);
  mpfr_set_q(t.get(), q.get_mpq_t(), rnd);
  mpfr_exp(t.get(), t.get(), rnd);
  return to_mpq(t.get());
}

inline mpq_class log_dir_q(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  MpfrTemp t(prec);
  mpfr_set_q(t.get(), q.get_mpq_t(), rnd);
  mpfr_log(t.get(), t.get(), rnd);
  return to_mpq(t.get());
}

// ln Gamma(x) for rational x >= 1 with directed rounding.
inline mpq_class lngamma_dir_q(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  MpfrTemp t(prec);
  mpfr_set_q(t.get(), x.get_mpq_t(), rnd);
  mpfr_lngamma(t.get(), t.get(), rnd);
  return to_mpq(t.get());
}

}  // namespace detail

enum class BoundCmp { LeCertain, GtCertain, Undecided };

inline const char* to_string(BoundCmp c) {
  switch (c) {
    case BoundCmp::LeCertain: return "v <= bound (certain)";
    case BoundCmp::GtCertain: return "v > bound (certain)";
    case BoundCmp::Undecided: return "undecided";
  }
  return "?";
}

class BoundExpr {
public:
  // Exact-evaluation caps (a factorial argument above the cap, or any
  // intermediate above the bit cap, makes exact() decline rather than grind).
  static constexpr unsigned long kFactArgCap = 10000;
  static constexpr std::size_t kExactBitCap = std::size_t{1} << 20;

  static BoundExpr lit(const mpz_class& v) {
    if (v < 0) throw InputError("BoundExpr: literals must be nonnegative");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Lit;
    n->lit = v;
    return BoundExpr(std::move(n));
  }
  static BoundExpr lit(unsigned long v) { return lit(mpz_class(v)); }

  static BoundExpr sum(std::vector<BoundExpr> args) { return nary(Kind::Sum, std::move(args)); }
  static BoundExpr prod(std::vector<BoundExpr> args) { return nary(Kind::Prod, std::move(args)); }
  static BoundExpr min(std::vector<BoundExpr> args) { return nary(Kind::Min, std::move(args)); }

  static BoundExpr pow(BoundExpr base, BoundExpr exp) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->args = {std::move(base), std::move(exp)};
    return BoundExpr(std::move(n));
  }

  static BoundExpr fact(BoundExpr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Fact;
    n->args = {std::move(arg)};
    return BoundExpr(std::move(n));
  }

  // True exactly when the value is 0 (decidable without any caps).
  bool is_zero() const {
    switch (node_->kind) {
      case Kind::Lit: return node_->lit == 0;
      case Kind::Sum: {
        for (const BoundExpr& a : node_->args)
          if (!a.is_zero()) return false;
        return true;
      }
      case Kind::Prod: {
        for (const BoundExpr& a : node_->args)
          if (a.is_zero()) return true;
        return false;
      }
      case Kind::Pow:  // 0^e = 0 for e >= 1; x^0 = 1 (including 0^0)
        return node_->args[0].is_zero() && !node_->args[1].is_zero();
      case Kind::Fact: return false;  // n! >= 1
      case Kind::Min: {
        for (const BoundExpr& a : node_->args)
          if (a.is_zero()) return true;
        return false;
      }
    }
    return false;
  }

  // Exact value when it fits the pinned caps; nullopt otherwise.
  std::optional<mpz_class> exact() const {
    std::lock_guard<std::mutex> lk(node_->mu);
    if (!node_->exact_cache) node_->exact_cache = compute_exact();
    return *node_->exact_cache;
  }

  // Outward-rounded enclosure of ln(value); requires a nonzero value.
  LogInterval log_interval(mpfr_prec_t prec) const {
    if (is_zero()) throw Error("log_interval: value is zero");
    {
      std::lock_guard<std::mutex> lk(node_->mu);
      auto it = node_->interval_cache.find(prec);
      if (it != node_->interval_cache.end()) return it->second;
    }
    LogInterval iv = compute_interval(prec);
    std::lock_guard<std::mutex> lk(node_->mu);
    node_->interval_cache.emplace(prec, iv);
    return iv;
  }

  std::string to_string() const {
    switch (node_->kind) {
      case Kind::Lit: return node_->lit.get_str();
      case Kind::Sum: return nary_string("add");
      case Kind::Prod: return nary_string("mul");
      case Kind::Min: return nary_string("min");
      case Kind::Pow:
        return "(pow " + node_->args[0].to_string() + " " + node_->args[1].to_string() + ")";
      case Kind::Fact: return "(fact " + node_->args[0].to_string() + ")";
    }
    return "?";
  }

  // Prefix s-expressions: integer atoms and (add|mul|min|pow|fact ...).
  static BoundExpr parse(const std::string& text) {
    std::size_t pos = 0;
    BoundExpr e = parse_expr(text, pos);
    skip_space(text, pos);
    if (pos != text.size())
      throw FormatError("trailing characters after expression at offset " + std::to_string(pos));
    return e;
  }

private:
  enum class Kind { Lit, Sum, Prod, Pow, Fact, Min };

  struct Node {
    Kind kind = Kind::Lit;
    mpz_class lit;
    std::vector<BoundExpr> args;
    mutable std::mutex mu;
    mutable std::optional<std::optional<mpz_class>> exact_cache;
    mutable std::map<mpfr_prec_t, LogInterval> interval_cache;
  };

  explicit BoundExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static BoundExpr nary(Kind k, std::vector<BoundExpr> args) {
    if (args.empty()) throw InputError("BoundExpr: operator needs at least one argument");
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    return BoundExpr(std::move(n));
  }

  std::string nary_string(const char* op) const {
    std::string s = std::string("(") + op;
    for (const BoundExpr& a : node_->args) s += " " + a.to_string();
    return s + ")";
  }

  static bool bits_ok(const mpz_class& v) {
    return v == 0 || mpz_sizeinbase(v.get_mpz_t(), 2) <= kExactBitCap;
  }

  std::optional<mpz_class> compute_exact() const {
    switch (node_->kind) {
      case Kind::Lit:
        return bits_ok(node_->lit) ? std::optional<mpz_class>(node_->lit) : std::nullopt;
      case Kind::Sum: {
        mpz_class acc = 0;
        for (const BoundExpr& a : node_->args) {
          auto v = a.exact();
          if (!v) return std::nullopt;
          acc += *v;
        }
        return bits_ok(acc) ? std::optional<mpz_class>(acc) : std::nullopt;
      }
      case Kind::Prod: {
        mpz_class acc = 1;
        for (const BoundExpr& a : node_->args) {
          auto v = a.exact();
          if (!v) return std::nullopt;
          acc *= *v;
          if (!bits_ok(acc)) return std::nullopt;
        }
        return acc;
      }
      case Kind::Pow: {
        auto b = node_->args[0].exact();
        if (b && *b == 1) return mpz_class(1);
        if (node_->args[1].is_zero()) return mpz_class(1);
        if (b && *b == 0) return mpz_class(0);
        auto e = node_->args[1].exact();
        if (!b || !e) return std::nullopt;
        if (!mpz_fits_ulong_p(e->get_mpz_t())) return std::nullopt;
        unsigned long eu = e->get_ui();
        std::size_t base_bits = mpz_sizeinbase(b->get_mpz_t(), 2);
        if (base_bits * eu > kExactBitCap) return std::nullopt;
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b->get_mpz_t(), eu);
        return r;
      }
      case Kind::Fact: {
        auto a = node_->args[0].exact();
        if (!a || *a > kFactArgCap) return std::nullopt;
        mpz_class r;
        mpz_fac_ui(r.get_mpz_t(), a->get_ui());
        return r;
      }
      case Kind::Min: {
        // Certified minimum: any zero argument settles it; otherwise take the
        // least exact argument and certify every inexact argument exceeds it
        // through the log intervals.
        std::optional<mpz_class> best;
        std::vector<const BoundExpr*> inexact;
        for (const BoundExpr& a : node_->args) {
          if (a.is_zero()) return mpz_class(0);
          auto v = a.exact();
          if (!v) inexact.push_back(&a);
          else if (!best || *v < *best) best = *v;
        }
        if (!best) return std::nullopt;
        if (!inexact.empty()) {
          mpq_class ln_best_hi = detail::log_dir_z(*best, 256, MPFR_RNDU);
          for (const BoundExpr* a : inexact)
            if (a->log_interval(256).lo < ln_best_hi) return std::nullopt;
        }
        return best;
      }
    }
    return std::nullopt;
  }

  LogInterval compute_interval(mpfr_prec_t prec) const {
    switch (node_->kind) {
      case Kind::Lit:
        return {detail::log_dir_z(node_->lit, prec, MPFR_RNDD),
                detail::log_dir_z(node_->lit, prec, MPFR_RNDU)};
      case Kind::Sum: {
        // Log-sum-exp against the largest term: the shifted exponents are
        // all <= 0, so this stays cheap and tight at any magnitude.
        std::vector<LogInterval> ivs;
        for (const BoundExpr& a : node_->args)
          if (!a.is_zero()) ivs.push_back(a.log_interval(prec));
        mpq_class m_lo = ivs[0].lo, m_hi = ivs[0].hi;
        for (const LogInterval& iv : ivs) {
          if (iv.lo > m_lo) m_lo = iv.lo;
          if (iv.hi > m_hi) m_hi = iv.hi;
        }
        mpq_class slo = 0, shi = 0;
        for (const LogInterval& iv : ivs) {
          slo += detail::exp_dir_q(iv.lo - m_lo, prec, MPFR_RNDD);
          shi += detail::exp_dir_q(iv.hi - m_hi, prec, MPFR_RNDU);
        }
        return {m_lo + detail::log_dir_q(slo, prec, MPFR_RNDD),
                m_hi + detail::log_dir_q(shi, prec, MPFR_RNDU)};
      }
      case Kind::Prod: {
        mpq_class lo = 0, hi = 0;
        for (const BoundExpr& a : node_->args) {
          LogInterval iv = a.log_interval(prec);
          lo += iv.lo;
          hi += iv.hi;
        }
        return {lo, hi};
      }
      case Kind::Pow: {
        if (node_->args[1].is_zero()) return {mpq_class(0), mpq_class(0)};
        LogInterval lb = base_log(prec);
        auto [elo, ehi] = value_bounds(node_->args[1], prec);
        return {elo * lb.lo, ehi * lb.hi};
      }
      case Kind::Fact: {
        // ln(a!) = ln Gamma(a + 1), increasing for a >= 1; a is an integer,
        // so a! >= 1 and 0 is always a sound lower bound.
        auto [alo, ahi] = value_bounds(node_->args[0], prec);
        mpq_class lo = 0, hi = 0;
        if (alo >= 1) lo = std::max(mpq_class(0), detail::lngamma_dir_q(alo + 1, prec, MPFR_RNDD));
        if (ahi >= 1) hi = detail::lngamma_dir_q(ahi + 1, prec, MPFR_RNDU);
        return {lo, hi};
      }
      case Kind::Min: {
        bool first = true;
        mpq_class lo, hi;
        for (const BoundExpr& a : node_->args) {
          LogInterval iv = a.log_interval(prec);
          if (first || iv.lo < lo) lo = iv.lo;
          if (first || iv.hi < hi) hi = iv.hi;
          first = false;
        }
        return {lo, hi};
      }
    }
    return {mpq_class(0), mpq_class(0)};
  }

  // ln(base) with the lower end clamped at 0 (the base is an integer >= 1
  // whenever this is reached).
  LogInterval base_log(mpfr_prec_t prec) const {
    LogInterval lb = node_->args[0].log_interval(prec);
    if (lb.lo < 0) lb.lo = 0;
    return lb;
  }

  // Rational enclosure of an argument's numeric value: the exact value when
  // available, otherwise outward exponentials of its log interval, clamped
  // below at 1 (the value is a nonzero integer).
  static std::pair<mpq_class, mpq_class> value_bounds(const BoundExpr& e, mpfr_prec_t prec) {
    if (e.is_zero()) return {mpq_class(0), mpq_class(0)};
    if (auto v = e.exact()) {
      mpq_class q(*v);
      return {q, q};
    }
    LogInterval iv = e.log_interval(prec);
    mpq_class lo = detail::exp_dir_q(iv.lo, prec, MPFR_RNDD);
    if (lo < 1) lo = 1;
    return {lo, detail::exp_dir_q(iv.hi, prec, MPFR_RNDU)};
  }

  static void skip_space(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  static BoundExpr parse_expr(const std::string& s, std::size_t& pos) {
    skip_space(s, pos);
    if (pos >= s.size()) throw FormatError("unexpected end of expression");
    if (s[pos] == '(') {
      ++pos;
      skip_space(s, pos);
      std::size_t start = pos;
      while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
      std::string op = s.substr(start, pos - start);
      std::vector<BoundExpr> args;
      while (true) {
        skip_space(s, pos);
        if (pos >= s.size()) throw FormatError("missing ')' in expression");
        if (s[pos] == ')') {
          ++pos;
          break;
        }
        args.push_back(parse_expr(s, pos));
      }
      if (op == "add" || op == "mul" || op == "min") {
        if (args.empty()) throw FormatError(op + " needs at least one argument");
        if (op == "add") return sum(std::move(args));
        if (op == "mul") return prod(std::move(args));
        return min(std::move(args));
      }
      if (op == "pow") {
        if (args.size() != 2) throw FormatError("pow takes exactly two arguments");
        return pow(std::move(args[0]), std::move(args[1]));
      }
      if (op == "fact") {
        if (args.size() != 1) throw FormatError("fact takes exactly one argument");
        return fact(std::move(args[0]));
      }
      throw FormatError("unknown operator '" + op + "'");
    }
    if (!std::isdigit(static_cast<unsigned char>(s[pos])))
      throw FormatError(std::string("unexpected character '") + s[pos] + "' at offset " +
                        std::to_string(pos));
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return lit(mpz_class(s.substr(start, pos - start), 10));
  }

  std::shared_ptr<const Node> node_;
};

// Compare a concrete nonnegative integer v against the expression's value.
// Exact evaluation decides immediately when available; otherwise the log
// intervals are refined through the pinned precision ladder and the result
// is reported as undecided if they never separate.
inline BoundCmp cmp_bound(const BoundExpr& b, const mpz_class& v) {
  if (v < 0) throw InputError("cmp_bound: v must be nonnegative");
  if (auto ev = b.exact()) return v <= *ev ? BoundCmp::LeCertain : BoundCmp::GtCertain;
  if (b.is_zero()) return v == 0 ? BoundCmp::LeCertain : BoundCmp::GtCertain;
  if (v == 0) return BoundCmp::LeCertain;
  static constexpr mpfr_prec_t kPrecisionLadder[] = {128, 512, 2048};
  for (mpfr_prec_t prec : kPrecisionLadder) {
    LogInterval bi = b.log_interval(prec);
    mpq_class v_hi = detail::log_dir_z(v, prec, MPFR_RNDU);
    if (v_hi <= bi.lo) return BoundCmp::LeCertain;
    mpq_class v_lo = detail::log_dir_z(v, prec, MPFR_RNDD);
    if (v_lo > bi.hi) return BoundCmp::GtCertain;
  }
  return BoundCmp::Undecided;
}

// A function N -> N given as a finite table of expressions over the points
// in play, with an optional closed form for everything else.
class FuncTable {
public:
  FuncTable() = default;

  static FuncTable constant(const mpz_class& v) {
    FuncTable t;
    t.closure_ = [v](unsigned long) { return BoundExpr::lit(v); };
    return t;
  }
  static FuncTable constant(unsigned long v) { return constant(mpz_class(v)); }

  static FuncTable from_closure(std::function<BoundExpr(unsigned long)> fn) {
    FuncTable t;
    t.closure_ = std::move(fn);
    return t;
  }

  FuncTable& set(unsigned long d, BoundExpr v) {
    table_.insert_or_assign(d, std::move(v));
    return *this;
  }

  BoundExpr at(unsigned long d) const {
    auto it = table_.find(d);
    if (it != table_.end()) return it->second;
    if (closure_) return closure_(d);
    throw InputError("function table has no value at " + std::to_string(d));
  }

private:
  std::map<unsigned long, BoundExpr> table_;
  std::function<BoundExpr(unsigned long)> closure_;
};

// The unique d' with (d'-1)(d'-2) < d <= d'(d'-1); inverts d -> d(d-1).
inline unsigned long dprime(unsigned long d) {
  if (d < 1) throw InputError("dprime: d must be at least 1");
  unsigned long dp = 1;
  while (d > dp * (dp - 1)) ++dp;
  return dp;
}

// f3(d) = d^{f1(d)-1} (d f1(d)^2 f2(d))!.  The orbit-count bound f1(d) must
// evaluate exactly (it feeds a subtraction); f2 may stay symbolic.
inline BoundExpr f3(const FuncTable& f1, const FuncTable& f2, unsigned long d) {
  auto f1v = f1.at(d).exact();
  if (!f1v || *f1v < 1) throw InputError("f3: f1(d) must evaluate exactly and be >= 1");
  return BoundExpr::prod(
      {BoundExpr::pow(BoundExpr::lit(d), BoundExpr::lit(mpz_class(*f1v - 1))),
       BoundExpr::fact(BoundExpr::prod({BoundExpr::lit(d),
                                        BoundExpr::pow(BoundExpr::lit(*f1v), BoundExpr::lit(2ul)),
                                        f2.at(d)}))});
}

// f_hat(d) = (d f(d)^{d^d f(d)^{2d}})!.
inline BoundExpr f_hat(const FuncTable& g, unsigned long d) {
  BoundExpr gd = g.at(d);
  BoundExpr tower = BoundExpr::prod(
      {BoundExpr::pow(BoundExpr::lit(d), BoundExpr::lit(d)),
       BoundExpr::pow(gd, BoundExpr::lit(2 * d))});
  return BoundExpr::fact(
      BoundExpr::prod({BoundExpr::lit(d), BoundExpr::pow(gd, std::move(tower))}));
}

// f_tilde(d) = f(d').
inline BoundExpr f_tilde(const FuncTable& f, unsigned long d) { return f.at(dprime(d)); }

// (g1*g2-bar)(d) = (d0 (g1(d0) g2(d0))^{d0^{d0} min{g1(d0), g2(d0)}^{2 d0}})!
// with d0 = d(d-1).
inline BoundExpr g_star(const FuncTable& g1, const FuncTable& g2, unsigned long d) {
  if (d < 1) throw InputError("g_star: d must be at least 1");
  unsigned long d0 = d * (d - 1);
  BoundExpr a = g1.at(d0), b = g2.at(d0);
  BoundExpr exponent = BoundExpr::prod(
      {BoundExpr::pow(BoundExpr::lit(d0), BoundExpr::lit(d0)),
       BoundExpr::pow(BoundExpr::min({a, b}), BoundExpr::lit(2 * d0))});
  return BoundExpr::fact(BoundExpr::prod(
      {BoundExpr::lit(d0),
       BoundExpr::pow(BoundExpr::prod({a, b}), std::move(exponent))}));
}

}  // namespace vtsa
