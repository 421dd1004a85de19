#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mvdl {

// Carrier elements are dense indices; 0 is the bottom.
using Elem = std::uint8_t;

// m x m operation table in row-major order.
class OpTable {
 public:
  OpTable() = default;
  OpTable(int m, std::vector<Elem> cells);
  static OpTable from_rows(const std::vector<std::vector<int>>& rows);

  int size() const { return m_; }
  Elem operator()(Elem a, Elem b) const { return cells_[a * m_ + b]; }
  void set(Elem a, Elem b, Elem v) { cells_[a * m_ + b] = v; }
  const std::vector<Elem>& cells() const { return cells_; }
  std::vector<std::vector<int>> rows() const;

  bool operator==(const OpTable&) const = default;

 private:
  int m_ = 0;
  std::vector<Elem> cells_;
};

// Named expansion of the signature: a truth constant (arity 0, one cell)
// or a unary operation such as a characteristic function (arity 1, m cells).
struct ExtraOp {
  int arity = 1;
  std::vector<Elem> table;
};

class Algebra {
 public:
  Algebra(std::string name, OpTable meet, OpTable join, OpTable tensor, OpTable impl,
          std::vector<std::string> labels, std::map<std::string, ExtraOp> extras = {});

  const std::string& name() const { return name_; }
  int size() const { return m_; }
  Elem bot() const { return 0; }
  Elem top() const { return top_; }
  bool linear() const { return linear_; }

  Elem meet(Elem a, Elem b) const { return meet_(a, b); }
  Elem join(Elem a, Elem b) const { return join_(a, b); }
  Elem tensor(Elem a, Elem b) const { return tensor_(a, b); }
  Elem impl(Elem a, Elem b) const { return impl_(a, b); }
  Elem neg(Elem a) const { return impl_(a, 0); }
  bool leq(Elem a, Elem b) const { return leq_[a * m_ + b] != 0; }

  const OpTable& meet_table() const { return meet_; }
  const OpTable& join_table() const { return join_; }
  const OpTable& tensor_table() const { return tensor_; }
  const OpTable& impl_table() const { return impl_; }

  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find_label(const std::string& label) const;

  const std::map<std::string, ExtraOp>& extras() const { return extras_; }
  const ExtraOp* extra(const std::string& name) const;

  // Name of the installed extra equal to chi_P, if any.
  std::optional<std::string> extra_for_chi(const std::vector<bool>& subset) const;

 private:
  std::string name_;
  int m_;
  OpTable meet_, join_, tensor_, impl_;
  std::vector<Elem> leq_;
  std::vector<std::string> labels_;
  std::map<std::string, ExtraOp> extras_;
  Elem top_ = 0;
  bool linear_ = false;
};

enum class BuiltinKind { Boolean, Lukasiewicz, Goedel };

struct ExtrasRequest {
  std::vector<int> chi;        // element indices d; installs chi_<d>
  bool constants = false;      // installs c_<k> for every element k
};

Algebra build_builtin(BuiltinKind kind, int n, const ExtrasRequest& extras = {});

// Accepts "B2", "L<n>", "G<n>", optionally followed by "+chi" (all chi_d)
// and/or "+const".
Algebra builtin_by_name(const std::string& name);
bool is_builtin_name(const std::string& name);

OpTable derive_residuum(int m, const OpTable& join, const OpTable& tensor);

struct LawResult {
  std::string family;  // lattice, monoid, residuation, integrality, linearity
  std::string law;
  bool pass = true;
  std::vector<int> witness;
};

struct LawReport {
  std::vector<LawResult> laws;
  bool ok() const;
  const LawResult* first_failure() const;
};

LawReport validate_flew(const Algebra& alg);

inline constexpr std::size_t kDefaultClosureBudget = 10000;

// Unary term functions with one generating term per function, recorded in
// breadth-first order so terms are short.
class UnaryTermClone {
 public:
  using Table = std::vector<Elem>;

  int arity_m() const { return m_; }
  std::size_t size() const { return functions_.size(); }
  const std::vector<Table>& functions() const { return functions_; }
  bool contains(const Table& f) const;
  std::optional<std::size_t> index_of(const Table& f) const;

  // Fully parenthesised term over the variable name, e.g. "(x * x)".
  std::string term(std::size_t index, const std::string& var) const;

 private:
  friend UnaryTermClone unary_term_closure(const Algebra&, std::size_t);

  struct Step {
    enum Kind { Identity, Const0, Const1, Extra, Meet, Join, Tensor, Impl } kind;
    std::size_t a = 0, b = 0;
    std::string extra;
  };

  int m_ = 0;
  std::vector<Table> functions_;
  std::vector<Step> steps_;
  std::map<Table, std::size_t> index_;
};

UnaryTermClone unary_term_closure(const Algebra& alg,
                                  std::size_t budget = kDefaultClosureBudget);

std::vector<Elem> chi_table(const Algebra& alg, const std::vector<bool>& subset);
bool is_chi_definable(const Algebra& alg, const std::vector<bool>& subset,
                      std::size_t budget = kDefaultClosureBudget);
bool is_semiprimal(const Algebra& alg, std::size_t budget = kDefaultClosureBudget);

}  // namespace mvdl
