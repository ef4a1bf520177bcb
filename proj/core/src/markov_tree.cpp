#include "markovj/markov_tree.hpp"

#include <boost/integer/mod_inverse.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace markovj {

namespace {

const MarkovTriple kLeftTipTriple{1, 1, 1};
const MarkovTriple kRightTipTriple{1, 1, 2};
const MarkovTriple kRootTriple{2, 1, 5};

std::string describe(const MarkovTriple& t) {
  return fmt::format("({},{},{})", t.a.str(), t.b.str(), t.c.str());
}

TreeNode make_node(std::string path, int level, MarkovTriple triple, FareyFraction farey,
                   Period period) {
  BigInt k = markov_k(triple);
  QuadraticForm form = markov_form(triple.c, k);
  TreeNode node{std::move(path), level, std::move(triple), farey, std::move(period),
                std::move(k), std::move(form), std::nullopt, std::nullopt};
  return node;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(fmt::format("bad integer '{}'", s));
  }
  return v;
}

}  // namespace

bool satisfies_markov_equation(const MarkovTriple& t) {
  return t.a * t.a + t.b * t.b + t.c * t.c == 3 * t.a * t.b * t.c;
}

std::pair<MarkovTriple, MarkovTriple> vieta_children(const MarkovTriple& t) {
  if (t.a <= 0 || t.b <= 0 || t.c <= 0 || !satisfies_markov_equation(t)) {
    throw std::invalid_argument("vieta_children: not a Markov triple " + describe(t));
  }
  MarkovTriple left{t.c, t.b, 3 * t.b * t.c - t.a};
  MarkovTriple right{t.a, t.c, 3 * t.a * t.c - t.b};
  if (!satisfies_markov_equation(left) || !satisfies_markov_equation(right)) {
    throw std::logic_error("vieta_children: child fails the Markov equation");
  }
  return {std::move(left), std::move(right)};
}

bool farey_less(const FareyFraction& x, const FareyFraction& y) {
  using boost::multiprecision::uint128_t;
  return uint128_t(x.p) * y.q < uint128_t(y.p) * x.q;
}

FareyFraction farey_median(const FareyFraction& x, const FareyFraction& y) {
  if (x.q == 0 || y.q == 0 || std::gcd(x.p, x.q) != 1 || std::gcd(y.p, y.q) != 1) {
    throw std::invalid_argument("farey_median: inputs must be reduced fractions");
  }
  FareyFraction m{x.p + y.p, x.q + y.q};
  if (std::gcd(m.p, m.q) != 1) {
    throw std::invalid_argument(fmt::format("farey_median: {} and {} are not Farey neighbours",
                                            format_fraction(x), format_fraction(y)));
  }
  return m;
}

FareyFraction parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return {parse_u64(text), 1};
  }
  const FareyFraction f{parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1))};
  if (f.q == 0) {
    throw std::invalid_argument("zero denominator");
  }
  return f;
}

std::string format_fraction(const FareyFraction& f) {
  return f.p == 0 ? std::string("0") : fmt::format("{}/{}", f.p, f.q);
}

BigInt markov_k(const MarkovTriple& t) {
  if (t.c < 1) {
    throw std::domain_error("markov_k: c must be positive");
  }
  BigInt k = 0;
  if (t.c > 1) {
    const BigInt a = t.a % t.c;
    const BigInt inv = boost::integer::mod_inverse(a, t.c);
    if (inv == 0) {
      throw std::domain_error("markov_k: a not invertible mod c in " + describe(t));
    }
    k = (t.b % t.c) * inv % t.c;
  }
  if ((k * k + 1) % t.c != 0) {
    throw std::domain_error("markov_k: c does not divide k^2+1 for " + describe(t));
  }
  return k;
}

QuadraticForm markov_form(const BigInt& c, const BigInt& k) {
  if (c < 1) {
    throw std::domain_error("markov_form: c must be positive");
  }
  const BigInt num = k * k + 1;
  if (num % c != 0) {
    throw std::domain_error("markov_form: c does not divide k^2+1");
  }
  const BigInt ell = num / c;
  QuadraticForm form{c, 3 * c - 2 * k, ell - 3 * k};
  if (form.discriminant() != 9 * c * c - 4) {
    throw std::logic_error("markov_form: discriminant is not 9c^2-4");
  }
  return form;
}

double markov_irrational(const BigInt& c, const BigInt& k) {
  // (3 - 2k/c + sqrt(9 - 4/c^2)) / 2; no cancellation since k < c.
  const double inv_c = ratio_of(BigInt(1), c);
  return (3.0 - 2.0 * ratio_of(k, c) + std::sqrt(9.0 - 4.0 * inv_c * inv_c)) / 2.0;
}

double markov_constant(const BigInt& c) {
  const double inv_c = ratio_of(BigInt(1), c);
  return std::sqrt(9.0 - 4.0 * inv_c * inv_c);
}

MarkovTree::MarkovTree(int depth) : depth_(depth) {
  if (depth < 1) {
    throw std::invalid_argument("build_tree: depth must be >= 1");
  }
  nodes_.reserve((std::size_t{1} << std::min(depth, 30)) + 2);
  nodes_.push_back(make_node(std::string(kLeftTipPath), 0, kLeftTipTriple, {0, 1}, Period({3})));
  nodes_.push_back(make_node(std::string(kRightTipPath), 0, kRightTipTriple, {1, 2}, Period({2, 4})));
  TreeNode root = make_node("", 1, kRootTriple, farey_median(nodes_[0].farey, nodes_[1].farey),
                            Period({2, 3, 4}));
  root.left_neighbour = 0;
  root.right_neighbour = 1;
  nodes_.push_back(std::move(root));

  std::size_t level_begin = 2;
  for (int level = 2; level <= depth; ++level) {
    const std::size_t level_end = nodes_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      auto [left_triple, right_triple] = vieta_children(nodes_[i].triple);
      const std::size_t ln = *nodes_[i].left_neighbour;
      const std::size_t rn = *nodes_[i].right_neighbour;
      const bool leftmost = ln == 0;

      for (Turn turn : {Turn::Left, Turn::Right}) {
        const TreeNode& parent = nodes_[i];
        const bool is_left = turn == Turn::Left;
        const std::size_t other = is_left ? ln : rn;
        Period period = child_period(parent.period, nodes_[ln].period, nodes_[rn].period, turn,
                                     leftmost, level);
        FareyFraction farey = is_left ? farey_median(nodes_[other].farey, parent.farey)
                                      : farey_median(parent.farey, nodes_[other].farey);
        TreeNode child = make_node(parent.path + static_cast<char>(turn), level,
                                   is_left ? left_triple : right_triple, farey, std::move(period));
        child.left_neighbour = is_left ? other : i;
        child.right_neighbour = is_left ? i : other;
        nodes_.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    by_path_.emplace(nodes_[i].path, i);
  }
}

std::optional<std::size_t> MarkovTree::find_path(std::string_view path) const {
  const auto it = by_path_.find(std::string(path));
  if (it == by_path_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MarkovTree::find_fraction(const FareyFraction& f) const {
  std::string path;
  try {
    path = path_of_fraction(f);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return find_path(path);
}

const TreeNode& MarkovTree::at_path(std::string_view path) const {
  const auto idx = find_path(path);
  if (!idx) {
    throw std::out_of_range(fmt::format("no node with path '{}' at depth {}", path, depth_));
  }
  return nodes_[*idx];
}

std::vector<std::size_t> MarkovTree::sorted_by_fraction() const {
  std::vector<std::size_t> order(nodes_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t x, std::size_t y) {
    return farey_less(nodes_[x].farey, nodes_[y].farey);
  });
  return order;
}

MarkovTree build_tree(int depth) { return MarkovTree(depth); }

std::string path_of_fraction(const FareyFraction& f) {
  if (f.q == 0 || std::gcd(f.p, f.q) != 1) {
    throw std::invalid_argument(fmt::format("{}/{} is not a reduced fraction", f.p, f.q));
  }
  if (2 * f.p > f.q) {
    throw std::invalid_argument(fmt::format("{}/{} lies outside [0, 1/2]", f.p, f.q));
  }
  if (f == FareyFraction{0, 1}) return std::string(kLeftTipPath);
  if (f == FareyFraction{1, 2}) return std::string(kRightTipPath);

  FareyFraction lo{0, 1};
  FareyFraction hi{1, 2};
  FareyFraction node{1, 3};
  std::string path;
  while (!(node == f)) {
    if (farey_less(f, node)) {
      hi = node;
      path += 'L';
    } else {
      lo = node;
      path += 'R';
    }
    node = FareyFraction{lo.p + hi.p, lo.q + hi.q};
  }
  return path;
}

MarkovTriple markov_triple_of(const FareyFraction& f) {
  const std::string path = path_of_fraction(f);
  if (path == kLeftTipPath) return kLeftTipTriple;
  if (path == kRightTipPath) return kRightTipTriple;
  MarkovTriple t = kRootTriple;
  for (char c : path) {
    auto [l, r] = vieta_children(t);
    t = c == 'L' ? std::move(l) : std::move(r);
  }
  return t;
}

TreeNode node_at_path(std::string_view path) {
  if (path == kLeftTipPath) return make_node(std::string(path), 0, kLeftTipTriple, {0, 1}, period_of_node(path));
  if (path == kRightTipPath) return make_node(std::string(path), 0, kRightTipTriple, {1, 2}, period_of_node(path));
  if (path.find_first_not_of("LR") != std::string_view::npos) {
    throw std::invalid_argument(fmt::format("bad tree path '{}'", path));
  }
  FareyFraction lo{0, 1};
  FareyFraction hi{1, 2};
  FareyFraction f{1, 3};
  MarkovTriple t = kRootTriple;
  for (char c : path) {
    auto [l, r] = vieta_children(t);
    if (c == 'L') {
      hi = f;
      t = std::move(l);
    } else {
      lo = f;
      t = std::move(r);
    }
    f = FareyFraction{lo.p + hi.p, lo.q + hi.q};
  }
  return make_node(std::string(path), static_cast<int>(path.size()) + 1, std::move(t), f,
                   period_of_node(path));
}

}  // namespace markovj
