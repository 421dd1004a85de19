#include "mvdl/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include "mvdl/error.hpp"

namespace mvdl {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::NotAQuantale: return "not-a-quantale";
    case ErrorCode::ClosureBudgetExceeded: return "closure-budget-exceeded";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::UnknownIdentifier: return "unknown-identifier";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::IncompatibleVariant: return "incompatible-variant";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::UnknownAtom: return "unknown-atom";
    case ErrorCode::NoRule: return "no-rule";
    case ErrorCode::IterationPresent: return "iteration-present";
    case ErrorCode::NonTerminationGuard: return "non-termination-guard";
    case ErrorCode::MissingChi: return "missing-chi";
    case ErrorCode::NonlinearAlgebra: return "nonlinear-algebra";
    case ErrorCode::TagMismatch: return "tag-mismatch";
    case ErrorCode::PreconditionViolated: return "precondition-violated";
    case ErrorCode::UnsupportedKind: return "unsupported-kind";
    case ErrorCode::InvalidInput: return "invalid-input";
  }
  return "unknown";
}

OpTable::OpTable(int m, std::vector<Elem> cells) : m_(m), cells_(std::move(cells)) {
  if (static_cast<int>(cells_.size()) != m * m)
    throw Error(ErrorCode::InvalidInput, "operation table is not m x m");
}

OpTable OpTable::from_rows(const std::vector<std::vector<int>>& rows) {
  int m = static_cast<int>(rows.size());
  std::vector<Elem> cells;
  cells.reserve(m * m);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m)
      throw Error(ErrorCode::InvalidInput, "operation table is not square");
    for (int v : row) {
      if (v < 0 || v >= m) throw Error(ErrorCode::InvalidInput, "table entry out of range");
      cells.push_back(static_cast<Elem>(v));
    }
  }
  return OpTable(m, std::move(cells));
}

std::vector<std::vector<int>> OpTable::rows() const {
  std::vector<std::vector<int>> out(m_, std::vector<int>(m_));
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) out[a][b] = cells_[a * m_ + b];
  return out;
}

Algebra::Algebra(std::string name, OpTable meet, OpTable join, OpTable tensor, OpTable impl,
                 std::vector<std::string> labels, std::map<std::string, ExtraOp> extras)
    : name_(std::move(name)),
      m_(meet.size()),
      meet_(std::move(meet)),
      join_(std::move(join)),
      tensor_(std::move(tensor)),
      impl_(std::move(impl)),
      labels_(std::move(labels)),
      extras_(std::move(extras)) {
  if (m_ < 1 || m_ > 255) throw Error(ErrorCode::InvalidParameter, "carrier size must be in [1,255]");
  if (join_.size() != m_ || tensor_.size() != m_ || impl_.size() != m_)
    throw Error(ErrorCode::InvalidInput, "operation tables disagree on carrier size");
  if (labels_.empty())
    for (int i = 0; i < m_; ++i) labels_.push_back(std::to_string(i));
  if (static_cast<int>(labels_.size()) != m_)
    throw Error(ErrorCode::InvalidInput, "label count differs from carrier size");
  for (const auto& [id, op] : extras_) {
    std::size_t want = op.arity == 0 ? 1 : static_cast<std::size_t>(m_);
    if ((op.arity != 0 && op.arity != 1) || op.table.size() != want)
      throw Error(ErrorCode::InvalidInput, "extra '" + id + "' has a malformed table");
    for (Elem v : op.table)
      if (v >= m_) throw Error(ErrorCode::InvalidInput, "extra '" + id + "' out of range");
  }

  leq_.assign(m_ * m_, 0);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) leq_[a * m_ + b] = meet_(a, b) == a;

  // Greatest element of the meet order; falls back to the last index so that
  // validation can still report the broken bounds law.
  top_ = static_cast<Elem>(m_ - 1);
  for (int t = 0; t < m_; ++t) {
    bool greatest = true;
    for (int x = 0; x < m_ && greatest; ++x) greatest = leq(x, t);
    if (greatest) {
      top_ = static_cast<Elem>(t);
      break;
    }
  }

  linear_ = true;
  for (int a = 0; a < m_ && linear_; ++a)
    for (int b = 0; b < m_ && linear_; ++b) linear_ = leq(a, b) || leq(b, a);
}

std::optional<Elem> Algebra::find_label(const std::string& label) const {
  for (int i = 0; i < m_; ++i)
    if (labels_[i] == label) return static_cast<Elem>(i);
  return std::nullopt;
}

const ExtraOp* Algebra::extra(const std::string& name) const {
  auto it = extras_.find(name);
  return it == extras_.end() ? nullptr : &it->second;
}

std::optional<std::string> Algebra::extra_for_chi(const std::vector<bool>& subset) const {
  auto want = chi_table(*this, subset);
  for (const auto& [id, op] : extras_)
    if (op.arity == 1 && op.table == want) return id;
  return std::nullopt;
}

namespace {

std::string fraction_label(int k, int n) {
  if (k == 0) return "0";
  if (k == n) return "1";
  int g = std::gcd(k, n);
  return std::to_string(k / g) + "/" + std::to_string(n / g);
}

OpTable tabulate(int m, auto fn) {
  std::vector<Elem> cells(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) cells[a * m + b] = static_cast<Elem>(fn(a, b));
  return OpTable(m, std::move(cells));
}

}  // namespace

Algebra build_builtin(BuiltinKind kind, int n, const ExtrasRequest& request) {
  if (kind == BuiltinKind::Boolean) n = 1;
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "chain parameter n must be >= 1");
  if (n > 254) throw Error(ErrorCode::InvalidParameter, "chain parameter n too large");
  int m = n + 1;

  auto meet = tabulate(m, [](int a, int b) { return std::min(a, b); });
  auto join = tabulate(m, [](int a, int b) { return std::max(a, b); });
  OpTable tensor, impl;
  std::string name;
  if (kind == BuiltinKind::Goedel) {
    tensor = meet;
    impl = tabulate(m, [n](int a, int b) { return a <= b ? n : b; });
    name = "G" + std::to_string(n);
  } else {
    tensor = tabulate(m, [n](int a, int b) { return std::max(0, a + b - n); });
    impl = tabulate(m, [n](int a, int b) { return std::min(n, n - a + b); });
    name = kind == BuiltinKind::Boolean ? "B2" : "L" + std::to_string(n);
  }

  std::vector<std::string> labels;
  for (int k = 0; k <= n; ++k) labels.push_back(fraction_label(k, n));

  std::map<std::string, ExtraOp> extras;
  for (int d : request.chi) {
    if (d < 0 || d >= m) throw Error(ErrorCode::InvalidParameter, "chi index out of range");
    ExtraOp op{1, std::vector<Elem>(m, 0)};
    op.table[d] = static_cast<Elem>(n);
    extras["chi_" + std::to_string(d)] = op;
  }
  if (request.constants)
    for (int k = 0; k < m; ++k) extras["c_" + std::to_string(k)] = ExtraOp{0, {static_cast<Elem>(k)}};

  return Algebra(name, meet, join, tensor, impl, labels, extras);
}

bool is_builtin_name(const std::string& name) {
  static const std::regex re(R"((B2|[LG][0-9]+)(\+chi|\+const)*)");
  return std::regex_match(name, re);
}

Algebra builtin_by_name(const std::string& name) {
  static const std::regex re(R"((B2|([LG])([0-9]+))((?:\+chi|\+const)*))");
  std::smatch mt;
  if (!std::regex_match(name, mt, re))
    throw Error(ErrorCode::InvalidParameter, "unknown built-in algebra '" + name + "'");
  BuiltinKind kind = BuiltinKind::Boolean;
  int n = 1;
  if (mt[1] != "B2") {
    kind = mt[2] == "L" ? BuiltinKind::Lukasiewicz : BuiltinKind::Goedel;
    n = std::stoi(mt[3]);
  }
  std::string suffix = mt[4];
  ExtrasRequest req;
  if (suffix.find("+chi") != std::string::npos)
    for (int d = 0; d <= n; ++d) req.chi.push_back(d);
  req.constants = suffix.find("+const") != std::string::npos;
  return build_builtin(kind, n, req);
}

OpTable derive_residuum(int m, const OpTable& join, const OpTable& tensor) {
  if (m < 1 || join.size() != m || tensor.size() != m)
    throw Error(ErrorCode::InvalidInput, "tables do not match carrier size");
  auto leq = [&](int a, int b) { return join(a, b) == b; };

  int bot = -1;
  for (int b = 0; b < m && bot < 0; ++b) {
    bool least = true;
    for (int x = 0; x < m && least; ++x) least = leq(b, x);
    if (least) bot = b;
  }
  if (bot < 0) throw Error(ErrorCode::NotAQuantale, "join order has no bottom element");

  for (int x = 0; x < m; ++x) {
    if (tensor(x, bot) != bot)
      throw Error(ErrorCode::NotAQuantale,
                  "tensor does not preserve the empty join at (" + std::to_string(x) + ")");
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        if (tensor(x, join(y, z)) != join(tensor(x, y), tensor(x, z)))
          throw Error(ErrorCode::NotAQuantale, "tensor does not distribute over join at (" +
                                                   std::to_string(x) + "," + std::to_string(y) +
                                                   "," + std::to_string(z) + ")");
  }

  std::vector<Elem> cells(m * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int acc = bot;
      for (int z = 0; z < m; ++z)
        if (leq(tensor(x, z), y)) acc = join(acc, z);
      cells[x * m + y] = static_cast<Elem>(acc);
    }
  return OpTable(m, std::move(cells));
}

bool LawReport::ok() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.pass; });
}

const LawResult* LawReport::first_failure() const {
  for (const auto& r : laws)
    if (!r.pass) return &r;
  return nullptr;
}

LawReport validate_flew(const Algebra& A) {
  const int m = A.size();
  LawReport report;

  auto check1 = [&](const char* fam, const char* law, auto pred) {
    LawResult r{fam, law};
    for (int x = 0; x < m && r.pass; ++x)
      if (!pred(x)) r = {fam, law, false, {x}};
    report.laws.push_back(r);
  };
  auto check2 = [&](const char* fam, const char* law, auto pred) {
    LawResult r{fam, law};
    for (int x = 0; x < m && r.pass; ++x)
      for (int y = 0; y < m && r.pass; ++y)
        if (!pred(x, y)) r = {fam, law, false, {x, y}};
    report.laws.push_back(r);
  };
  auto check3 = [&](const char* fam, const char* law, auto pred) {
    LawResult r{fam, law};
    for (int x = 0; x < m && r.pass; ++x)
      for (int y = 0; y < m && r.pass; ++y)
        for (int z = 0; z < m && r.pass; ++z)
          if (!pred(x, y, z)) r = {fam, law, false, {x, y, z}};
    report.laws.push_back(r);
  };

  auto meet = [&](int a, int b) { return A.meet(a, b); };
  auto join = [&](int a, int b) { return A.join(a, b); };
  auto tensor = [&](int a, int b) { return A.tensor(a, b); };
  auto impl = [&](int a, int b) { return A.impl(a, b); };
  const int top = A.top();

  check1("lattice", "meet-idempotent", [&](int x) { return meet(x, x) == x; });
  check1("lattice", "join-idempotent", [&](int x) { return join(x, x) == x; });
  check2("lattice", "meet-commutative", [&](int x, int y) { return meet(x, y) == meet(y, x); });
  check2("lattice", "join-commutative", [&](int x, int y) { return join(x, y) == join(y, x); });
  check3("lattice", "meet-associative",
         [&](int x, int y, int z) { return meet(meet(x, y), z) == meet(x, meet(y, z)); });
  check3("lattice", "join-associative",
         [&](int x, int y, int z) { return join(join(x, y), z) == join(x, join(y, z)); });
  check2("lattice", "absorption",
         [&](int x, int y) { return meet(x, join(x, y)) == x && join(x, meet(x, y)) == x; });
  check1("lattice", "bottom", [&](int x) { return meet(0, x) == 0 && join(0, x) == x; });
  check1("lattice", "top", [&](int x) { return meet(top, x) == x && join(top, x) == top; });

  check2("monoid", "commutative", [&](int x, int y) { return tensor(x, y) == tensor(y, x); });
  check3("monoid", "associative",
         [&](int x, int y, int z) { return tensor(tensor(x, y), z) == tensor(x, tensor(y, z)); });
  check1("monoid", "unit", [&](int x) { return tensor(x, top) == x; });

  check3("residuation", "adjunction", [&](int x, int y, int z) {
    return A.leq(tensor(x, y), z) == A.leq(x, impl(y, z));
  });

  check1("integrality", "unit-is-top", [&](int x) { return A.leq(x, top); });

  return report;
}

bool UnaryTermClone::contains(const Table& f) const { return index_.count(f) != 0; }

std::optional<std::size_t> UnaryTermClone::index_of(const Table& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string UnaryTermClone::term(std::size_t i, const std::string& var) const {
  const Step& s = steps_.at(i);
  switch (s.kind) {
    case Step::Identity: return var;
    case Step::Const0: return "0";
    case Step::Const1: return "1";
    case Step::Extra:
      // a == i marks a nullary constant
      if (s.a == i) return s.extra;
      return s.extra + "(" + term(s.a, var) + ")";
    case Step::Meet: return "(" + term(s.a, var) + " & " + term(s.b, var) + ")";
    case Step::Join: return "(" + term(s.a, var) + " | " + term(s.b, var) + ")";
    case Step::Tensor: return "(" + term(s.a, var) + " * " + term(s.b, var) + ")";
    case Step::Impl: return "(" + term(s.a, var) + " -> " + term(s.b, var) + ")";
  }
  return var;
}

UnaryTermClone unary_term_closure(const Algebra& A, std::size_t budget) {
  const int m = A.size();
  UnaryTermClone clone;
  clone.m_ = m;
  using Table = UnaryTermClone::Table;
  using Step = UnaryTermClone::Step;

  auto add = [&](Table f, Step step) {
    if (clone.index_.count(f)) return;
    if (clone.functions_.size() >= budget)
      throw Error(ErrorCode::ClosureBudgetExceeded,
                  "more than " + std::to_string(budget) + " unary term functions");
    std::size_t idx = clone.functions_.size();
    if (step.kind == Step::Extra && step.a == static_cast<std::size_t>(-1)) step.a = idx;
    clone.index_.emplace(f, idx);
    clone.functions_.push_back(std::move(f));
    clone.steps_.push_back(std::move(step));
  };

  Table id(m), c0(m, 0), c1(m, A.top());
  for (int x = 0; x < m; ++x) id[x] = static_cast<Elem>(x);
  add(id, {Step::Identity});
  add(c0, {Step::Const0});
  add(c1, {Step::Const1});
  std::vector<std::pair<std::string, const ExtraOp*>> unary;
  for (const auto& [name, op] : A.extras()) {
    if (op.arity == 0)
      add(Table(m, op.table[0]), {Step::Extra, static_cast<std::size_t>(-1), 0, name});
    else
      unary.emplace_back(name, &op);
  }

  Table buf(m);
  for (std::size_t i = 0; i < clone.functions_.size(); ++i) {
    for (const auto& [name, op] : unary) {
      for (int x = 0; x < m; ++x) buf[x] = op->table[clone.functions_[i][x]];
      add(buf, {Step::Extra, i, 0, name});
    }
    for (std::size_t j = 0; j <= i; ++j) {
      auto binary = [&](Step::Kind kind, std::size_t a, std::size_t b, auto op) {
        const Table& f = clone.functions_[a];
        const Table& g = clone.functions_[b];
        for (int x = 0; x < m; ++x) buf[x] = op(f[x], g[x]);
        add(buf, {kind, a, b});
      };
      binary(Step::Meet, j, i, [&](Elem a, Elem b) { return A.meet(a, b); });
      binary(Step::Join, j, i, [&](Elem a, Elem b) { return A.join(a, b); });
      binary(Step::Tensor, j, i, [&](Elem a, Elem b) { return A.tensor(a, b); });
      binary(Step::Impl, j, i, [&](Elem a, Elem b) { return A.impl(a, b); });
      binary(Step::Impl, i, j, [&](Elem a, Elem b) { return A.impl(a, b); });
    }
  }
  return clone;
}

std::vector<Elem> chi_table(const Algebra& A, const std::vector<bool>& subset) {
  if (static_cast<int>(subset.size()) != A.size())
    throw Error(ErrorCode::InvalidParameter, "subset size differs from carrier size");
  std::vector<Elem> t(A.size());
  for (int x = 0; x < A.size(); ++x) t[x] = subset[x] ? A.top() : A.bot();
  return t;
}

bool is_chi_definable(const Algebra& A, const std::vector<bool>& subset, std::size_t budget) {
  return unary_term_closure(A, budget).contains(chi_table(A, subset));
}

bool is_semiprimal(const Algebra& A, std::size_t budget) {
  auto clone = unary_term_closure(A, budget);
  const int m = A.size();
  if (m > 20) throw Error(ErrorCode::InvalidParameter, "carrier too large for subset sweep");
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<bool> subset(m);
    for (int x = 0; x < m; ++x) subset[x] = (mask >> x) & 1u;
    if (!clone.contains(chi_table(A, subset))) return false;
  }
  return true;
}

}  // namespace mvdl
