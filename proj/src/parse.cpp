#include "adkit/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "adkit/error.hpp"

namespace adkit {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view token = text_.substr(start, pos_ - start);
    if (!token.empty() && token[0] == '+') token.remove_prefix(1);
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size())
      fail("expected integer", start);
    return value;
  }

  // Decimal or fraction literal, up to the next ',' or ')'.
  std::string number_token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected number", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::uint64_t positive(Parser& p, const char* what) {
  const std::size_t at = (p.skip_space(), p.pos());
  const std::int64_t v = p.integer();
  if (v < 1) p.fail(std::string(what) + " must be at least 1", at);
  return static_cast<std::uint64_t>(v);
}

IntSet parse_set(Parser& p) {
  const std::size_t at = (p.skip_space(), p.pos());
  const std::string name = p.identifier();
  if (name == "all") return IntSet::periodic(UltimatelyPeriodicSet::all());
  if (name == "empty") return IntSet::periodic(UltimatelyPeriodicSet::none());
  if (name == "evens") return IntSet::periodic(UltimatelyPeriodicSet::residue_class(0, 2));
  if (name == "odds") return IntSet::periodic(UltimatelyPeriodicSet::residue_class(1, 2));
  if (name == "squares") return IntSet::squares();
  if (name == "ap") {
    p.expect('(');
    const std::size_t a_at = (p.skip_space(), p.pos());
    const std::int64_t a = p.integer();
    p.expect(',');
    const std::size_t m_at = (p.skip_space(), p.pos());
    const std::int64_t m = p.integer();
    p.expect(')');
    if (a < 0) p.fail("ap residue must be non-negative", a_at);
    if (m < 1) p.fail("ap modulus must be at least 1", m_at);
    return IntSet::periodic(UltimatelyPeriodicSet::residue_class(static_cast<std::uint64_t>(a),
                                                                 static_cast<std::uint64_t>(m)));
  }
  if (name == "union" || name == "inter" || name == "diff") {
    p.expect('(');
    IntSet a = parse_set(p);
    p.expect(',');
    IntSet b = parse_set(p);
    p.expect(')');
    if (name == "union") return set_union(a, b);
    if (name == "inter") return set_intersect(a, b);
    return set_difference(a, b);
  }
  if (name == "window") {
    p.expect('(');
    IntSet a = parse_set(p);
    p.expect(',');
    const std::uint64_t lo = positive(p, "window lower end");
    p.expect(',');
    const std::uint64_t hi = positive(p, "window upper end");
    p.expect(')');
    return window_restrict(a, lo, hi);
  }
  p.fail("unknown set identifier '" + name + "'", at);
}

std::vector<std::uint64_t> int_list(Parser& p) {
  std::vector<std::uint64_t> out;
  p.expect('(');
  do out.push_back(positive(p, "list entry"));
  while (p.accept(','));
  p.expect(')');
  return out;
}

InjectiveMap parse_map(Parser& p) {
  const std::size_t at = (p.skip_space(), p.pos());
  const std::string name = p.identifier();
  if (name == "id") return InjectiveMap::identity();
  if (name == "interleave3") return InjectiveMap::interleave3();
  if (name == "dilate") {
    p.expect('(');
    const std::uint64_t m = positive(p, "dilate factor");
    p.expect(')');
    return InjectiveMap::dilate(m);
  }
  if (name == "blockperm") return InjectiveMap::block_permutation(int_list(p));
  if (name == "finperm") return InjectiveMap::finite_permutation(int_list(p));
  if (name == "compose") {
    p.expect('(');
    InjectiveMap outer = parse_map(p);
    p.expect(',');
    InjectiveMap inner = parse_map(p);
    p.expect(')');
    return compose(outer, inner);
  }
  p.fail("unknown map identifier '" + name + "'", at);
}

std::pair<std::string, std::string> geo_args(Parser& p) {
  const std::size_t at = (p.skip_space(), p.pos());
  if (p.identifier() != "geo") p.fail("expected geo(...)", at);
  p.expect('(');
  std::string first = p.number_token();
  p.expect(',');
  std::string second = p.number_token();
  p.expect(')');
  p.finish();
  return {first, second};
}

}  // namespace

IntSet parse_set_expr(std::string_view text) {
  Parser p(text);
  IntSet out = parse_set(p);
  p.finish();
  return out;
}

InjectiveMap parse_map_expr(std::string_view text) {
  Parser p(text);
  InjectiveMap out = parse_map(p);
  p.finish();
  return out;
}

EpsilonSchedule parse_epsilon_schedule(std::string_view text) {
  Parser p(text);
  auto [a, r] = geo_args(p);
  return EpsilonSchedule::geometric(parse_rational(a), parse_rational(r));
}

CheckpointSchedule parse_checkpoint_schedule(std::string_view text) {
  Parser p(text);
  auto [theta, start] = geo_args(p);
  double ratio = 0;
  auto [end, ec] = std::from_chars(theta.data(), theta.data() + theta.size(), ratio);
  if (ec != std::errc() || end != theta.data() + theta.size())
    throw ParseError("malformed checkpoint ratio '" + theta + "'", 0);
  Parser sp(start);
  const std::int64_t n0 = sp.integer();
  sp.finish();
  if (n0 < 1) throw ParseError("checkpoint start must be at least 1", 0);
  return CheckpointSchedule::geometric(ratio, static_cast<std::uint64_t>(n0));
}

}  // namespace adkit
