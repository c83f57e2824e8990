#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace proalg {

// Full binary tree with payloads at the leaves: a completely parenthesized
// sequence. Nodes are shared and immutable.
template <class T>
class Paren {
 public:
  static Paren leaf(T value) {
    auto n = std::make_shared<Node>();
    n->value = std::move(value);
    n->leaves = 1;
    return Paren(std::move(n));
  }
  static Paren pair(const Paren& l, const Paren& r) {
    auto n = std::make_shared<Node>();
    n->left = l.n_;
    n->right = r.n_;
    n->leaves = l.leaf_count() + r.leaf_count();
    return Paren(std::move(n));
  }

  bool is_leaf() const { return !n_->left; }
  std::size_t leaf_count() const { return n_->leaves; }
  const T& value() const {
    if (!is_leaf()) throw std::logic_error("internal node has no payload");
    return n_->value;
  }
  Paren left() const { return Paren(n_->left); }
  Paren right() const { return Paren(n_->right); }

  // Leaf payloads from left to right.
  std::vector<T> leaves() const {
    std::vector<T> out;
    collect(*n_, out);
    return out;
  }

  // Same shape, new payloads taken left to right from `vals`.
  template <class U>
  Paren<U> refill(const std::vector<U>& vals) const {
    std::size_t i = 0;
    auto r = refill_rec<U>(*n_, vals, i);
    if (i != vals.size()) throw std::invalid_argument("payload count does not match shape");
    return r;
  }

  template <class Fn>
  auto map(Fn fn) const -> Paren<std::decay_t<decltype(fn(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(fn(std::declval<const T&>()))>;
    std::vector<U> vals;
    for (auto& v : leaves()) vals.push_back(fn(v));
    return refill(vals);
  }

  friend bool operator==(const Paren& a, const Paren& b) { return a.n_ == b.n_ || eq(*a.n_, *b.n_); }

  // Leaves compare before pairs; pairs lexicographically.
  friend auto operator<=>(const Paren& a, const Paren& b)
    requires std::three_way_comparable<T>
  {
    return order(*a.n_, *b.n_);
  }

  // Text form with a caller-supplied leaf printer: leaves print bare, pairs as "(l r)".
  std::string str(const std::function<std::string(const T&)>& leaf_str, const std::string& sep = " ") const {
    return str_rec(*n_, leaf_str, sep);
  }

 private:
  struct Node {
    T value{};
    std::shared_ptr<const Node> left, right;
    std::size_t leaves = 0;
  };
  explicit Paren(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static void collect(const Node& n, std::vector<T>& out) {
    if (!n.left) {
      out.push_back(n.value);
      return;
    }
    collect(*n.left, out);
    collect(*n.right, out);
  }
  template <class U>
  static Paren<U> refill_rec(const Node& n, const std::vector<U>& vals, std::size_t& i) {
    if (!n.left) {
      if (i >= vals.size()) throw std::invalid_argument("payload count does not match shape");
      return Paren<U>::leaf(vals[i++]);
    }
    auto l = refill_rec<U>(*n.left, vals, i);
    auto r = refill_rec<U>(*n.right, vals, i);
    return Paren<U>::pair(l, r);
  }
  static bool eq(const Node& a, const Node& b) {
    if (&a == &b) return true;
    if (a.leaves != b.leaves || !a.left != !b.left) return false;
    if (!a.left) return a.value == b.value;
    return eq(*a.left, *b.left) && eq(*a.right, *b.right);
  }
  static auto order(const Node& a, const Node& b) -> std::compare_three_way_result_t<T> {
    using R = std::compare_three_way_result_t<T>;
    if (&a == &b) return R::equivalent;
    if (!a.left && !b.left) return a.value <=> b.value;
    if (!a.left) return R::less;
    if (!b.left) return R::greater;
    auto c = order(*a.left, *b.left);
    if (c != 0) return c;
    return order(*a.right, *b.right);
  }
  static std::string str_rec(const Node& n, const std::function<std::string(const T&)>& f, const std::string& sep) {
    if (!n.left) return f(n.value);
    return "(" + str_rec(*n.left, f, sep) + sep + str_rec(*n.right, f, sep) + ")";
  }

  std::shared_ptr<const Node> n_;

  template <class U>
  friend class Paren;
};

// Payload-free shape.
struct Slot {
  friend bool operator==(Slot, Slot) { return true; }
  friend auto operator<=>(Slot, Slot) = default;
};
using ParenShape = Paren<Slot>;

// The concatenation (p, q).
template <class T>
Paren<T> concat(const Paren<T>& p, const Paren<T>& q) {
  return Paren<T>::pair(p, q);
}

inline std::vector<ParenShape> enumerate_shapes(std::size_t m) {
  if (m < 1) throw std::invalid_argument("a parenthesization needs at least one leaf");
  std::vector<std::vector<ParenShape>> memo(m + 1);
  memo[1].push_back(ParenShape::leaf(Slot{}));
  for (std::size_t k = 2; k <= m; ++k)
    for (std::size_t i = 1; i < k; ++i)
      for (auto& l : memo[i])
        for (auto& r : memo[k - i]) memo[k].push_back(ParenShape::pair(l, r));
  return memo[m];
}

// Groups of slots: each leaf is the number of slots in its group.
using SlotPattern = Paren<std::size_t>;

enum class CodecError { malformed, unbalanced, interior_padding, empty, not_binary, mixed_group, too_long };

inline const char* codec_error_name(CodecError e) {
  switch (e) {
    case CodecError::malformed: return "malformed";
    case CodecError::unbalanced: return "unbalanced";
    case CodecError::interior_padding: return "interior padding";
    case CodecError::empty: return "empty";
    case CodecError::not_binary: return "not binary";
    case CodecError::mixed_group: return "mixed group";
    case CodecError::too_long: return "too long";
  }
  return "unknown";
}

class codec_error : public std::runtime_error {
 public:
  codec_error(CodecError kind, const std::string& what)
      : std::runtime_error(std::string(codec_error_name(kind)) + ": " + what), kind_(kind) {}
  CodecError kind() const { return kind_; }

 private:
  CodecError kind_;
};

// Bit string read in blocks of two: 10 "(", 01 ")", 00 slot, 11 padding.
class BitCode {
 public:
  BitCode() = default;
  explicit BitCode(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_)
      if (c != '0' && c != '1') throw codec_error(CodecError::malformed, "bit strings contain only 0 and 1");
    if (bits_.size() % 2) throw codec_error(CodecError::malformed, "odd number of bits");
  }
  // Accepts whitespace anywhere.
  static BitCode parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!isspace(static_cast<unsigned char>(c))) s += c;
    return BitCode(std::move(s));
  }
  const std::string& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  std::size_t blocks() const { return bits_.size() / 2; }
  std::string block(std::size_t i) const { return bits_.substr(2 * i, 2); }

  // Blocks separated by single spaces.
  std::string spaced() const {
    std::string s;
    for (std::size_t i = 0; i < blocks(); ++i) s += (i ? " " : "") + block(i);
    return s;
  }
  friend bool operator==(const BitCode&, const BitCode&) = default;

 private:
  std::string bits_;
};

namespace detail {
inline void encode_rec(const SlotPattern& p, std::string& out) {
  out += "10";
  if (p.is_leaf()) {
    if (p.value() == 0) throw std::invalid_argument("a group needs at least one slot");
    for (std::size_t i = 0; i < p.value(); ++i) out += "00";
  } else {
    encode_rec(p.left(), out);
    encode_rec(p.right(), out);
  }
  out += "01";
}
}  // namespace detail

// Unpadded length in bits.
inline std::size_t natural_length(const SlotPattern& p) {
  std::string s;
  detail::encode_rec(p, s);
  return s.size();
}

// Every group of slots and every internal node gets its own 10 ... 01 pair;
// the code is padded with 11 blocks to exactly r bits.
inline BitCode encode_shape(const SlotPattern& p, std::size_t r) {
  std::string s;
  detail::encode_rec(p, s);
  if (r % 2) throw codec_error(CodecError::malformed, "target length must be even");
  if (s.size() > r)
    throw codec_error(CodecError::too_long, "pattern needs " + std::to_string(s.size()) + " bits, target is " +
                                                std::to_string(r));
  while (s.size() < r) s += "11";
  return BitCode(s);
}
inline BitCode encode_shape(const SlotPattern& p) { return encode_shape(p, natural_length(p)); }

inline SlotPattern decode_shape(const BitCode& c) {
  const std::size_t nb = c.blocks();
  std::size_t end = nb;
  while (end > 0 && c.block(end - 1) == "11") --end;
  for (std::size_t i = 0; i < end; ++i)
    if (c.block(i) == "11") throw codec_error(CodecError::interior_padding, "11 block before the end at block " + std::to_string(i));
  if (end == 0) throw codec_error(CodecError::empty, "no content before padding");
  long depth = 0;
  for (std::size_t i = 0; i < end; ++i) {
    if (c.block(i) == "10") ++depth;
    if (c.block(i) == "01" && --depth < 0) throw codec_error(CodecError::unbalanced, "closing block without opening block");
  }
  if (depth != 0) throw codec_error(CodecError::unbalanced, "parentheses do not balance");
  std::size_t pos = 0;
  std::function<SlotPattern()> parse = [&]() -> SlotPattern {
    if (pos >= end) throw codec_error(CodecError::unbalanced, "unexpected end of code");
    if (c.block(pos) != "10") {
      if (c.block(pos) == "01") throw codec_error(CodecError::unbalanced, "closing block without opening block");
      throw codec_error(CodecError::mixed_group, "slot outside a group at block " + std::to_string(pos));
    }
    ++pos;
    if (pos < end && c.block(pos) == "00") {
      std::size_t k = 0;
      while (pos < end && c.block(pos) == "00") {
        ++k;
        ++pos;
      }
      if (pos >= end) throw codec_error(CodecError::unbalanced, "group is not closed");
      if (c.block(pos) != "01") throw codec_error(CodecError::mixed_group, "slots and groups mixed at block " + std::to_string(pos));
      ++pos;
      return SlotPattern::leaf(k);
    }
    std::vector<SlotPattern> kids;
    while (pos < end && c.block(pos) == "10") kids.push_back(parse());
    if (pos >= end) throw codec_error(CodecError::unbalanced, "group is not closed");
    if (c.block(pos) == "00") throw codec_error(CodecError::mixed_group, "slots and groups mixed at block " + std::to_string(pos));
    ++pos;  // the 01 block
    if (kids.size() != 2)
      throw codec_error(kids.empty() ? CodecError::empty : CodecError::not_binary,
                        "a group holds " + std::to_string(kids.size()) + " subgroups");
    return SlotPattern::pair(kids[0], kids[1]);
  };
  SlotPattern p = parse();
  if (pos != end) {
    if (c.block(pos) == "01") throw codec_error(CodecError::unbalanced, "closing block without opening block");
    throw codec_error(CodecError::unbalanced, "content after the outermost group");
  }
  return p;
}

// Pattern text: "(((_ _ _)(_))(_ _))". Slots are "_" or "•"; a group whose only
// child is a group collapses to that child.
inline SlotPattern parse_pattern(const std::string& text) {
  std::vector<char> tok;  // '(' ')' 's'
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (isspace(c)) continue;
    if (c == '(' || c == ')') {
      tok.push_back(static_cast<char>(c));
    } else if (c == '_' || c == '*' || c == '.') {
      tok.push_back('s');
    } else if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
               static_cast<unsigned char>(text[i + 2]) == 0xA2) {
      tok.push_back('s');
      i += 2;
    } else {
      throw std::invalid_argument("unexpected character in pattern '" + text + "'");
    }
  }
  std::size_t pos = 0;
  std::function<SlotPattern()> group = [&]() -> SlotPattern {
    if (pos >= tok.size() || tok[pos] != '(') throw std::invalid_argument("expected '(' in pattern");
    ++pos;
    if (pos < tok.size() && tok[pos] == 's') {
      std::size_t k = 0;
      while (pos < tok.size() && tok[pos] == 's') {
        ++k;
        ++pos;
      }
      if (pos >= tok.size() || tok[pos] != ')') throw std::invalid_argument("slots and groups mixed in pattern");
      ++pos;
      return SlotPattern::leaf(k);
    }
    std::vector<SlotPattern> kids;
    while (pos < tok.size() && tok[pos] == '(') kids.push_back(group());
    if (pos >= tok.size() || tok[pos] != ')') throw std::invalid_argument("unbalanced pattern");
    ++pos;
    if (kids.size() == 1) return kids[0];
    if (kids.size() != 2) throw std::invalid_argument("every group holds slots or exactly two subgroups");
    return SlotPattern::pair(kids[0], kids[1]);
  };
  SlotPattern p = group();
  if (pos != tok.size()) throw std::invalid_argument("trailing characters in pattern");
  return p;
}

inline std::string format_pattern(const SlotPattern& p, const std::string& slot = "_") {
  std::function<std::string(const SlotPattern&)> rec = [&](const SlotPattern& q) -> std::string {
    if (q.is_leaf()) {
      std::string s = "(";
      for (std::size_t i = 0; i < q.value(); ++i) s += (i ? " " : "") + slot;
      return s + ")";
    }
    return "(" + rec(q.left()) + rec(q.right()) + ")";
  };
  return rec(p);
}

// Uniformly random shape with m leaves (via random split sizes weighted by Catalan counts).
template <class Rng>
ParenShape random_shape(std::size_t m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("a parenthesization needs at least one leaf");
  std::vector<double> cat(m + 1, 0.0);
  cat[1] = 1;
  for (std::size_t k = 2; k <= m; ++k)
    for (std::size_t i = 1; i < k; ++i) cat[k] += cat[i] * cat[k - i];
  std::function<ParenShape(std::size_t)> rec = [&](std::size_t k) -> ParenShape {
    if (k == 1) return ParenShape::leaf(Slot{});
    std::uniform_real_distribution<double> u(0.0, cat[k]);
    double x = u(rng);
    std::size_t i = 1;
    for (; i + 1 < k; ++i) {
      x -= cat[i] * cat[k - i];
      if (x < 0) break;
    }
    auto l = rec(i);
    return ParenShape::pair(l, rec(k - i));
  };
  return rec(m);
}

}  // namespace proalg
