#include "freqfair/selection_rule.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

namespace freqfair {

namespace {

struct ExplicitNode {
  std::set<std::uint64_t> indices;
};

struct PeriodicNode {
  std::uint64_t period;
  std::set<std::uint64_t> residues;
};

struct MaskNode {
  BitSequence side;
  std::string name;
  bool ex_post;
};

struct ComboNode {
  SetOp op;
  std::vector<std::shared_ptr<const SelectionRule::Node>> children;
};

}  // namespace

struct SelectionRule::Node {
  std::variant<ExplicitNode, PeriodicNode, MaskNode, ComboNode> data;
  std::string description;
  std::optional<std::uint64_t> horizon;
  bool ex_post = false;
};

namespace {

bool node_selects(const SelectionRule::Node& node, std::uint64_t i) {
  return std::visit(
      [i](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExplicitNode>) {
          return n.indices.count(i) != 0;
        } else if constexpr (std::is_same_v<T, PeriodicNode>) {
          return n.residues.count(i % n.period) != 0;
        } else if constexpr (std::is_same_v<T, MaskNode>) {
          if (i > n.side.size())
            throw InputError(ErrorCode::side_stream_too_short,
                             "rule '" + n.name + "' has horizon " + std::to_string(n.side.size()) +
                                 " but index " + std::to_string(i) + " was queried");
          return n.side.at(i);
        } else {
          static_assert(std::is_same_v<T, ComboNode>);
          switch (n.op) {
            case SetOp::intersect:
              for (const auto& c : n.children)
                if (!node_selects(*c, i)) return false;
              return true;
            case SetOp::unite:
              for (const auto& c : n.children)
                if (node_selects(*c, i)) return true;
              return false;
            case SetOp::complement:
              return !node_selects(*n.children.front(), i);
          }
          return false;
        }
      },
      node.data);
}

std::shared_ptr<const SelectionRule::Node> make_node(
    std::variant<ExplicitNode, PeriodicNode, MaskNode, ComboNode> data, std::string description,
    std::optional<std::uint64_t> horizon, bool ex_post) {
  auto node = std::make_shared<SelectionRule::Node>();
  node->data = std::move(data);
  node->description = std::move(description);
  node->horizon = horizon;
  node->ex_post = ex_post;
  return node;
}

std::optional<std::uint64_t> min_horizon(std::optional<std::uint64_t> a,
                                         std::optional<std::uint64_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

SelectionRule SelectionRule::explicit_indices(std::set<std::uint64_t> indices) {
  if (indices.count(0) != 0)
    throw InputError(ErrorCode::config_invalid, "explicit indices are 1-based; 0 is not valid");
  std::ostringstream os;
  os << "explicit{";
  bool first = true;
  for (std::uint64_t i : indices) {
    if (!first) os << ",";
    os << i;
    first = false;
  }
  os << "}";
  return SelectionRule(
      make_node(ExplicitNode{std::move(indices)}, os.str(), std::nullopt, false));
}

SelectionRule SelectionRule::periodic(std::uint64_t period, std::set<std::uint64_t> residues) {
  if (period == 0) throw InputError(ErrorCode::config_invalid, "period must be positive");
  for (std::uint64_t r : residues)
    if (r >= period)
      throw InputError(ErrorCode::config_invalid, "residue must lie in [0, period)");
  std::ostringstream os;
  os << "periodic(p=" << period << ",r={";
  bool first = true;
  for (std::uint64_t r : residues) {
    if (!first) os << ",";
    os << r;
    first = false;
  }
  os << "})";
  return SelectionRule(
      make_node(PeriodicNode{period, std::move(residues)}, os.str(), std::nullopt, false));
}

SelectionRule SelectionRule::attribute_mask(BitSequence side, std::string name) {
  std::uint64_t horizon = side.size();
  std::string desc = "mask(" + name + ")";
  return SelectionRule(
      make_node(MaskNode{std::move(side), std::move(name), false}, std::move(desc), horizon, false));
}

SelectionRule SelectionRule::ex_post_mask(BitSequence side, std::string name) {
  std::uint64_t horizon = side.size();
  std::string desc = "ex-post-mask(" + name + ")";
  return SelectionRule(
      make_node(MaskNode{std::move(side), std::move(name), true}, std::move(desc), horizon, true));
}

SelectionRule SelectionRule::all() { return periodic(1, {0}); }

SelectionRule SelectionRule::intersect(std::vector<SelectionRule> rules) {
  return combine(std::move(rules), SetOp::intersect);
}

SelectionRule SelectionRule::unite(std::vector<SelectionRule> rules) {
  return combine(std::move(rules), SetOp::unite);
}

SelectionRule SelectionRule::complement(SelectionRule rule) {
  return combine({std::move(rule)}, SetOp::complement);
}

bool SelectionRule::selects(std::uint64_t index1) const {
  if (index1 == 0) throw std::out_of_range("rule indices are 1-based");
  return node_selects(*node_, index1);
}

std::optional<std::uint64_t> SelectionRule::horizon() const { return node_->horizon; }

bool SelectionRule::ex_post() const { return node_->ex_post; }

const std::string& SelectionRule::description() const { return node_->description; }

BitSequence SelectionRule::indicator(std::uint64_t n) const {
  std::vector<std::uint8_t> bits(n);
  for (std::uint64_t i = 1; i <= n; ++i) bits[i - 1] = selects(i) ? 1 : 0;
  return BitSequence(std::move(bits));
}

Subselection apply_selection(const BitSequence& x, const SelectionRule& s) {
  if (auto h = s.horizon(); h && *h < x.size())
    throw InputError(ErrorCode::side_stream_too_short,
                     "rule " + s.description() + " covers only " + std::to_string(*h) +
                         " of " + std::to_string(x.size()) + " indices");
  Subselection sub;
  sub.source_length = x.size();
  for (std::uint64_t i = 1; i <= x.size(); ++i) {
    if (s.selects(i)) sub.selected_values.push_back(x.at(i));
  }
  sub.selected_count = sub.selected_values.size();
  return sub;
}

Subselection subselect(const BitSequence& x, const BitSequence& y) {
  if (x.size() != y.size())
    throw InputError(ErrorCode::length_mismatch, "selector stream length differs from target");
  Subselection sub;
  sub.source_length = x.size();
  const auto xs = x.values();
  const auto ys = y.values();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i]) sub.selected_values.push_back(xs[i] != 0);
  }
  sub.selected_count = sub.selected_values.size();
  return sub;
}

SelectionRule mask_from_attribute(BitSequence side, std::string name) {
  return SelectionRule::attribute_mask(std::move(side), std::move(name));
}

SelectionRule conditioned_mask(BitSequence labels, bool value, std::string name) {
  std::string desc = name + "=" + (value ? "1" : "0");
  if (value) return SelectionRule::attribute_mask(std::move(labels), std::move(desc));
  // Select where labels(i) = 0: flip the stream once at construction.
  std::vector<std::uint8_t> flipped(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) flipped[i] = labels.values()[i] ? 0 : 1;
  return SelectionRule::attribute_mask(BitSequence(std::move(flipped)), std::move(desc));
}

SelectionRule combine(std::vector<SelectionRule> rules, SetOp op) {
  if (op == SetOp::complement && rules.size() != 1)
    throw InputError(ErrorCode::arity_violation, "complement takes exactly one rule");
  if (op != SetOp::complement && rules.empty())
    throw InputError(ErrorCode::arity_violation, "intersect/union take at least one rule");

  std::vector<std::shared_ptr<const SelectionRule::Node>> children;
  std::optional<std::uint64_t> horizon;
  bool ex_post = false;
  std::ostringstream os;
  switch (op) {
    case SetOp::intersect: os << "and("; break;
    case SetOp::unite: os << "or("; break;
    case SetOp::complement: os << "not("; break;
  }
  bool first = true;
  for (auto& r : rules) {
    if (!first) os << ",";
    os << r.description();
    first = false;
    horizon = min_horizon(horizon, r.horizon());
    ex_post = ex_post || r.ex_post();
    children.push_back(r.node_);
  }
  os << ")";
  return SelectionRule(
      make_node(ComboNode{op, std::move(children)}, os.str(), horizon, ex_post));
}

}  // namespace freqfair
