#include "mvdl/functor.hpp"

#include <limits>

#include "mvdl/error.hpp"

namespace mvdl {

std::string kind_name(FunctorKind kind) {
  switch (kind) {
    case FunctorKind::Powerset: return "Powerset";
    case FunctorKind::APowerset: return "APowerset";
    case FunctorKind::ANeighbourhood: return "ANeighbourhood";
    case FunctorKind::MonotoneANeighbourhood: return "MonotoneANeighbourhood";
    case FunctorKind::DoublePowerset: return "DoublePowerset";
  }
  return "?";
}

FunctorKind kind_from_name(const std::string& name) {
  for (auto k : {FunctorKind::Powerset, FunctorKind::APowerset, FunctorKind::ANeighbourhood,
                 FunctorKind::MonotoneANeighbourhood, FunctorKind::DoublePowerset})
    if (kind_name(k) == name) return k;
  throw Error(ErrorCode::InvalidInput, "unknown functor kind '" + name + "'");
}

bool is_neighbourhood(FunctorKind kind) {
  return kind == FunctorKind::ANeighbourhood || kind == FunctorKind::MonotoneANeighbourhood;
}

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kSat / base) return kSat;
    r *= base;
  }
  return r;
}

}  // namespace

std::uint64_t predicate_count(int m, int n) { return sat_pow(m, n); }

std::uint64_t predicate_index(const Predicate& p, int m) {
  std::uint64_t idx = 0;
  for (Elem v : p) idx = idx * m + v;
  return idx;
}

Predicate predicate_decode(std::uint64_t index, int m, int n) {
  Predicate p(n);
  for (int x = n - 1; x >= 0; --x) {
    p[x] = static_cast<Elem>(index % m);
    index /= m;
  }
  return p;
}

std::uint32_t subset_of(const Predicate& p, Elem top) {
  std::uint32_t s = 0;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] == top) s |= 1u << x;
  return s;
}

FunctorSpace::FunctorSpace(FunctorKind kind, int n, const Algebra* alg) : kind_(kind), n_(n), alg_(alg) {
  if (n < 0) throw Error(ErrorCode::InvalidParameter, "negative carrier size");
  if (!alg) throw Error(ErrorCode::InvalidParameter, "functor space needs an algebra");
  switch (kind) {
    case FunctorKind::Powerset:
    case FunctorKind::APowerset:
      size_ = n;
      break;
    case FunctorKind::DoublePowerset:
      if (n > 16) throw Error(ErrorCode::BudgetExceeded, "double powerset carrier too large");
      size_ = std::size_t{1} << n;
      break;
    case FunctorKind::ANeighbourhood:
    case FunctorKind::MonotoneANeighbourhood: {
      const int m = alg->size();
      std::uint64_t count = predicate_count(m, n);
      if (count > (1u << 20)) throw Error(ErrorCode::BudgetExceeded, "predicate space too large");
      size_ = count;
      for (std::uint32_t i = 0; i < count; ++i) {
        auto p = predicate_decode(i, m, n);
        for (int x = 0; x < n; ++x) {
          Elem keep = p[x];
          for (int v = 0; v < m; ++v) {
            if (v == keep || !alg->leq(keep, v)) continue;
            p[x] = static_cast<Elem>(v);
            covers_.emplace_back(i, static_cast<std::uint32_t>(predicate_index(p, m)));
          }
          p[x] = keep;
        }
      }
      break;
    }
  }
}

bool FunctorSpace::is_monotone(const FValue& t) const {
  for (auto [lo, hi] : covers_)
    if (!alg_->leq(t[lo], t[hi])) return false;
  return true;
}

bool FunctorSpace::is_valid(const FValue& t) const {
  if (t.size() != size_) return false;
  const bool bits = kind_ == FunctorKind::Powerset || kind_ == FunctorKind::DoublePowerset;
  for (Elem v : t)
    if (bits ? v > 1 : v >= alg_->size()) return false;
  if (kind_ == FunctorKind::MonotoneANeighbourhood) return is_monotone(t);
  return true;
}

FValue FunctorSpace::unit(int x) const {
  FValue t(size_, 0);
  switch (kind_) {
    case FunctorKind::Powerset: t[x] = 1; break;
    case FunctorKind::APowerset: t[x] = alg_->top(); break;
    case FunctorKind::DoublePowerset: t[std::size_t{1} << x] = 1; break;
    case FunctorKind::ANeighbourhood:
    case FunctorKind::MonotoneANeighbourhood:
      for (std::size_t i = 0; i < size_; ++i) t[i] = predicate_decode(i, alg_->size(), n_)[x];
      break;
  }
  return t;
}

FValue FunctorSpace::bottom() const { return FValue(size_, 0); }

bool FunctorSpace::is_bottom(const FValue& t) const {
  for (Elem v : t)
    if (v != 0) return false;
  return true;
}

FValue FunctorSpace::join(const FValue& a, const FValue& b) const {
  FValue out(size_);
  if (kind_ == FunctorKind::Powerset || kind_ == FunctorKind::DoublePowerset) {
    for (std::size_t i = 0; i < size_; ++i) out[i] = a[i] | b[i];
  } else {
    for (std::size_t i = 0; i < size_; ++i) out[i] = alg_->join(a[i], b[i]);
  }
  return out;
}

std::uint64_t FunctorSpace::raw_count() const {
  switch (kind_) {
    case FunctorKind::Powerset: return sat_pow(2, n_);
    case FunctorKind::APowerset: return sat_pow(alg_->size(), n_);
    case FunctorKind::DoublePowerset: return sat_pow(2, size_);
    case FunctorKind::ANeighbourhood:
    case FunctorKind::MonotoneANeighbourhood: return sat_pow(alg_->size(), size_);
  }
  return kSat;
}

void FunctorSpace::for_each(const std::function<void(const FValue&)>& fn, std::uint64_t budget) const {
  const std::uint64_t count = raw_count();
  if (count > budget)
    throw Error(ErrorCode::BudgetExceeded,
                kind_name(kind_) + " over " + std::to_string(n_) + " states has " +
                    (count == kSat ? std::string("too many") : std::to_string(count)) +
                    " values, budget " + std::to_string(budget));
  const int base = (kind_ == FunctorKind::Powerset || kind_ == FunctorKind::DoublePowerset) ? 2 : alg_->size();

  if (kind_ != FunctorKind::MonotoneANeighbourhood) {
    FValue t(size_, 0);
    for (;;) {
      fn(t);
      std::size_t i = size_;
      while (i > 0) {
        --i;
        if (++t[i] < base) break;
        t[i] = 0;
        if (i == 0) return;
      }
      if (size_ == 0) return;
    }
  }

  // Backtracking over predicate indices; constraints are checked as soon as
  // both endpoints are assigned.
  std::vector<std::vector<std::pair<std::uint32_t, bool>>> constraints(size_);
  for (auto [lo, hi] : covers_) {
    if (lo < hi)
      constraints[hi].emplace_back(lo, true);  // t[lo] <= t[hi]
    else
      constraints[lo].emplace_back(hi, false);  // t[lo] <= t[hi], hi assigned first
  }
  FValue t(size_, 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == size_) {
      fn(t);
      return;
    }
    for (int v = 0; v < base; ++v) {
      t[i] = static_cast<Elem>(v);
      bool ok = true;
      for (auto [other, other_is_lower] : constraints[i]) {
        ok = other_is_lower ? alg_->leq(t[other], t[i]) : alg_->leq(t[i], t[other]);
        if (!ok) break;
      }
      if (ok) go(i + 1);
    }
  };
  go(0);
}

std::vector<FValue> FunctorSpace::enumerate(std::uint64_t budget) const {
  std::vector<FValue> out;
  for_each([&](const FValue& t) { out.push_back(t); }, budget);
  return out;
}

FValue FunctorSpace::random(std::mt19937_64& rng) const {
  const bool bits = kind_ == FunctorKind::Powerset || kind_ == FunctorKind::DoublePowerset;
  std::uniform_int_distribution<int> pick(0, bits ? 1 : alg_->size() - 1);
  FValue t(size_);
  if (kind_ != FunctorKind::MonotoneANeighbourhood) {
    for (auto& v : t) v = static_cast<Elem>(pick(rng));
    return t;
  }
  std::vector<std::vector<std::uint32_t>> lower(size_), upper(size_);
  for (auto [lo, hi] : covers_) {
    lower[hi].push_back(lo);
    upper[lo].push_back(hi);
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<bool> set(size_, false);
    bool dead = false;
    for (std::size_t i = 0; i < size_ && !dead; ++i) {
      std::vector<Elem> options;
      for (int v = 0; v < alg_->size(); ++v) {
        bool ok = true;
        for (auto lo : lower[i])
          if (set[lo] && !alg_->leq(t[lo], v)) ok = false;
        for (auto hi : upper[i])
          if (set[hi] && !alg_->leq(v, t[hi])) ok = false;
        if (ok) options.push_back(static_cast<Elem>(v));
      }
      if (options.empty()) {
        dead = true;
        break;
      }
      t[i] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      set[i] = true;
    }
    if (!dead) return t;
  }
  return bottom();
}

FValue FunctorSpace::image(const StateMap& f, const FunctorSpace& target, const FValue& t) const {
  if (target.kind_ != kind_) throw Error(ErrorCode::TagMismatch, "image across functor kinds");
  if (static_cast<int>(f.size()) != n_) throw Error(ErrorCode::LengthMismatch, "map domain differs from carrier");
  FValue out = target.bottom();
  switch (kind_) {
    case FunctorKind::Powerset:
      for (int x = 0; x < n_; ++x)
        if (t[x]) out[f[x]] = 1;
      break;
    case FunctorKind::APowerset:
      for (int x = 0; x < n_; ++x) out[f[x]] = alg_->join(out[f[x]], t[x]);
      break;
    case FunctorKind::DoublePowerset:
      for (std::size_t s = 0; s < size_; ++s) {
        if (!t[s]) continue;
        std::size_t img = 0;
        for (int x = 0; x < n_; ++x)
          if (s >> x & 1u) img |= std::size_t{1} << f[x];
        out[img] = 1;
      }
      break;
    case FunctorKind::ANeighbourhood:
    case FunctorKind::MonotoneANeighbourhood: {
      const int m = alg_->size();
      Predicate pulled(n_);
      for (std::size_t i = 0; i < target.size_; ++i) {
        auto tau = predicate_decode(i, m, target.n_);
        for (int x = 0; x < n_; ++x) pulled[x] = tau[f[x]];
        out[i] = t[predicate_index(pulled, m)];
      }
      break;
    }
  }
  return out;
}

std::string format_fvalue(const FunctorSpace& space, const FValue& t) {
  std::string s;
  auto add = [&](const std::string& x) { s += (s.empty() ? "" : ","); s += x; };
  switch (space.kind()) {
    case FunctorKind::Powerset:
      for (int x = 0; x < space.n(); ++x)
        if (t[x]) add(std::to_string(x));
      return "{" + s + "}";
    case FunctorKind::DoublePowerset:
      for (std::size_t m = 0; m < t.size(); ++m)
        if (t[m]) {
          std::string inner;
          for (int x = 0; x < space.n(); ++x)
            if (m >> x & 1u) inner += (inner.empty() ? "" : ",") + std::to_string(x);
          add("{" + inner + "}");
        }
      return "{" + s + "}";
    default:
      for (Elem v : t) add(space.algebra().label(v));
      return "(" + s + ")";
  }
}

}  // namespace mvdl
