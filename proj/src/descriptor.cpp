#include "centerseries/descriptor.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "centerseries/error.hpp"

namespace centerseries {

namespace {

using json = nlohmann::json;

// ---- expression AST ----

struct Expr {
  enum class Op { constant, var_k, var_j, add, sub, mul, div, neg, ipow, alt_k, alt_j };
  Op op = Op::constant;
  double value = 0;
  int ipw = 0;
  std::unique_ptr<Expr> a, b;

  double eval(double k, double j) const {
    switch (op) {
      case Op::constant: return value;
      case Op::var_k: return k;
      case Op::var_j: return j;
      case Op::add: return a->eval(k, j) + b->eval(k, j);
      case Op::sub: return a->eval(k, j) - b->eval(k, j);
      case Op::mul: return a->eval(k, j) * b->eval(k, j);
      case Op::div: return a->eval(k, j) / b->eval(k, j);
      case Op::neg: return -a->eval(k, j);
      case Op::ipow: {
        double base = a->eval(k, j);
        double r = 1;
        for (int i = 0; i < std::abs(ipw); ++i) r *= base;
        return ipw < 0 ? 1 / r : r;
      }
      case Op::alt_k: return static_cast<std::int64_t>(k) % 2 == 0 ? 1 : -1;
      case Op::alt_j: return static_cast<std::int64_t>(j) % 2 == 0 ? 1 : -1;
    }
    return 0;
  }
};

using ExprPtr = std::unique_ptr<Expr>;

void scan_alternation(const Expr& e, bool& has_k, bool& has_j) {
  if (e.op == Expr::Op::alt_k) has_k = true;
  if (e.op == Expr::Op::alt_j) has_j = true;
  if (e.a) scan_alternation(*e.a, has_k, has_j);
  if (e.b) scan_alternation(*e.b, has_k, has_j);
}

ExprPtr make_expr(Expr::Op op, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_unique<Expr>();
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr make_const(double v) {
  auto e = std::make_unique<Expr>();
  e->value = v;
  return e;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::parse_error,
                "rule expression: " + msg + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    while (true) {
      if (eat('+')) e = make_expr(Expr::Op::add, std::move(e), parse_product());
      else if (eat('-')) e = make_expr(Expr::Op::sub, std::move(e), parse_product());
      else return e;
    }
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    while (true) {
      if (eat('*')) e = make_expr(Expr::Op::mul, std::move(e), parse_unary());
      else if (eat('/')) e = make_expr(Expr::Op::div, std::move(e), parse_unary());
      else return e;
    }
  }

  ExprPtr parse_unary() {
    if (eat('-')) return make_expr(Expr::Op::neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (!eat('^')) return base;
    skip_ws();
    // Exponent k or j turns a constant -1 base into an alternating factor.
    if (peek() == 'k' || peek() == 'j') {
      char v = text_[pos_++];
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        fail("exponent variable must stand alone");
      double b = base->op == Expr::Op::constant || base->op == Expr::Op::neg
                     ? base->eval(0, 0)
                     : std::nan("");
      if (b == 1) return make_const(1);
      if (b == -1) return make_expr(v == 'k' ? Expr::Op::alt_k : Expr::Op::alt_j);
      fail("only (-1) may be raised to the power " + std::string(1, v));
    }
    bool neg = eat('-');
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent");
    int n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      n = n * 10 + (text_[pos_++] - '0');
    if (n > 64) fail("exponent too large");
    ExprPtr e = make_expr(Expr::Op::ipow, std::move(base));
    e->ipw = neg ? -n : n;
    return e;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(text_.substr(pos_), &used);
      pos_ += used;
      return make_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string id = text_.substr(start, pos_ - start);
      if (id == "k") return make_expr(Expr::Op::var_k);
      if (id == "j") return make_expr(Expr::Op::var_j);
      if (id == "pi") return make_const(M_PI);
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

class ExprRule final : public TermRule {
 public:
  // extra_sign multiplies the expression value; it is constant when the
  // alternating factor is already written in the expression.
  ExprRule(ExprPtr expr, std::string text, std::int64_t step, std::int64_t offset,
           SignPattern extra_sign = SignPattern::constant)
      : expr_(std::move(expr)), text_(std::move(text)), step_(step), offset_(offset),
        extra_sign_(extra_sign) {}

  std::complex<double> value(std::int64_t k) const override {
    std::int64_t j = (k - offset_) / step_;
    double v = expr_->eval(static_cast<double>(k), static_cast<double>(j));
    if (extra_sign_ == SignPattern::alternating_in_k && k % 2 != 0) v = -v;
    if (extra_sign_ == SignPattern::alternating_in_j && j % 2 != 0) v = -v;
    return {v, 0.0};
  }
  std::string describe() const override { return text_; }

 private:
  ExprPtr expr_;
  std::string text_;
  std::int64_t step_, offset_;
  SignPattern extra_sign_;
};

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::parse_error, "descriptor field '" + field + "': " + why);
}

SignPattern parse_sign_pattern(std::string s) {
  for (char& c : s)
    if (c == '_') c = '-';
  if (s == "constant") return SignPattern::constant;
  if (s == "alternating-in-k") return SignPattern::alternating_in_k;
  if (s == "alternating-in-j") return SignPattern::alternating_in_j;
  bad_field("sign_pattern", "expected constant | alternating-in-k | alternating-in-j");
}

WaveKind parse_kind(const std::string& s) {
  if (s == "sine") return WaveKind::sine;
  if (s == "cosine") return WaveKind::cosine;
  if (s == "complex") return WaveKind::complex_series;
  bad_field("kind", "expected sine | cosine | complex");
}

Degree parse_degree_text(std::string s) {
  for (char& c : s)
    if (c == '_' || c == '-') c = ' ';
  std::istringstream is(s);
  std::string word;
  is >> word;
  if (word == "infinitely") {
    is >> word;
    if (word == "hard") return Degree::infinitely_hard();
    if (word == "soft") return Degree::infinitely_soft();
  } else if (word == "hard" || word == "soft") {
    int n = 0;
    if (is >> n && n >= 0) return word == "hard" ? Degree::hard(n) : Degree::soft(n);
  }
  bad_field("degree", "expected 'hard n', 'soft n', 'infinitely-hard' or 'infinitely-soft'");
}

Angle parse_angle_json(const json& v, const std::string& field) {
  if (v.is_number()) return Angle::from_radians(v.get<double>());
  if (v.is_string()) return parse_angle_text(v.get<std::string>());
  bad_field(field, "expected a number (radians) or an angle string");
}

}  // namespace

Angle parse_angle_text(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s += c;
  if (s.empty()) bad_field("angle", "empty string");

  auto pi_at = s.find("pi");
  if (pi_at == std::string::npos) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size()) return Angle::from_radians(v);
    } catch (const std::exception&) {
    }
    bad_field("angle", "'" + text + "' is neither a number nor a multiple of pi");
  }

  // [sign][p][/q] pi  or  pi/q; the rational part defaults to 1.
  std::string head = s.substr(0, pi_at);
  std::string tail = s.substr(pi_at + 2);
  long num = 1, den = 1;
  bool negative = false;
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
    negative = head[0] == '-';
    head.erase(0, 1);
  }
  try {
    if (!head.empty()) {
      auto slash = head.find('/');
      if (slash == std::string::npos) {
        num = std::stol(head);
      } else {
        num = std::stol(head.substr(0, slash));
        den = std::stol(head.substr(slash + 1));
      }
    }
    if (!tail.empty()) {
      if (tail[0] != '/') bad_field("angle", "unexpected text after pi");
      den = std::stol(tail.substr(1));
    }
  } catch (const std::exception&) {
    bad_field("angle", "'" + text + "' has a malformed rational part");
  }
  if (den == 0) bad_field("angle", "zero denominator");
  if (negative) num = -num;
  return Angle::rational_pi(BigRat(num, den));
}

std::shared_ptr<const TermRule> parse_rule_expression(const std::string& text,
                                                      std::int64_t step, std::int64_t offset) {
  ExprParser p(text);
  return std::make_shared<ExprRule>(p.parse(), text, step, offset);
}

ParsedDescriptor parse_descriptor(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("descriptor JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::parse_error, "descriptor must be a JSON object");
  if (!doc.contains("rule") || !doc["rule"].is_string())
    bad_field("rule", "required string missing");
  std::string rule = doc["rule"].get<std::string>();

  // Built-in names delegate to the corpus entry wholesale.
  bool is_builtin = false;
  for (const std::string& n : corpus_names()) is_builtin = is_builtin || n == rule;
  if (is_builtin) {
    const CorpusEntry& e = corpus_entry(rule);
    ParsedDescriptor d(doc.value("name", e.name), e.kind, e.source);
    d.explicit_singularities = e.singularities;
    d.builtin = true;
    return d;
  }

  std::int64_t step = doc.value("step", std::int64_t{1});
  std::int64_t offset = doc.value("offset", std::int64_t{1});
  if (step < 1) bad_field("step", "must be >= 1");
  if (offset < 1) bad_field("offset", "must be >= 1");
  WaveKind kind = parse_kind(doc.value("kind", std::string("sine")));

  Angle rotation;
  if (doc.contains("rotation")) rotation = parse_angle_json(doc["rotation"], "rotation");
  bool is_real = rotation.radians() == 0;

  ExprPtr ast = ExprParser(rule).parse();
  bool alt_k = false, alt_j = false;
  scan_alternation(*ast, alt_k, alt_j);
  if (alt_k && alt_j) bad_field("rule", "mixes (-1)^k and (-1)^j factors");
  SignPattern in_rule = alt_k   ? SignPattern::alternating_in_k
                        : alt_j ? SignPattern::alternating_in_j
                                : SignPattern::constant;

  // The sign pattern may live in the expression or in the field; when both
  // are given they must agree, and the factor is applied exactly once.
  SignPattern sign = in_rule;
  SignPattern extra = SignPattern::constant;
  if (doc.contains("sign_pattern")) {
    SignPattern declared = parse_sign_pattern(doc["sign_pattern"].get<std::string>());
    if (in_rule != SignPattern::constant && declared != in_rule)
      bad_field("sign_pattern", "conflicts with the alternating factor in the rule");
    sign = declared;
    if (in_rule == SignPattern::constant) extra = declared;
  }

  auto term_rule =
      std::make_shared<ExprRule>(std::move(ast), rule, step, offset, extra);
  // Reject rules that cannot be evaluated where the sequence will ask.
  double probe = std::abs(term_rule->value(offset));
  if (!std::isfinite(probe))
    bad_field("rule", "does not evaluate to a finite value at k = offset");

  ParsedDescriptor d(doc.value("name", rule), kind,
                     CoefficientSequence(term_rule, step, offset, sign, is_real, rotation));

  if (doc.contains("singularities")) {
    if (!doc["singularities"].is_array()) bad_field("singularities", "expected an array");
    std::vector<SingularityPoint> pts;
    for (const json& p : doc["singularities"]) {
      if (!p.is_object() || !p.contains("angle") || !p.contains("degree"))
        bad_field("singularities", "each point needs angle and degree");
      pts.push_back({parse_angle_json(p["angle"], "singularities.angle"),
                     parse_degree_text(p["degree"].get<std::string>())});
    }
    d.explicit_singularities = SingularitySet(std::move(pts));
  }
  return d;
}

ParsedDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open descriptor file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_descriptor(buf.str());
}

}  // namespace centerseries
