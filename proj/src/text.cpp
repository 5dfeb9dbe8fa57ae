#include "eulerdist/text.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "eulerdist/error.hpp"

namespace eulerdist {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= src_.size();
  }
  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view w) {
    skip_space();
    if (src_.substr(pos_, w.size()) != w) return false;
    const std::size_t after = pos_ + w.size();
    // "log" must not swallow the head of a longer identifier.
    if (after < src_.size() && std::isalpha(static_cast<unsigned char>(src_[after]))) return false;
    pos_ = after;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail({std::string(1, c)});
  }
  bool digit_next() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  unsigned long integer() {
    if (!digit_next()) fail({"integer"});
    unsigned long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      const unsigned long next = v * 10 + static_cast<unsigned long>(src_[pos_] - '0');
      if (next / 10 != v) fail({"smaller integer"});
      v = next;
      ++pos_;
    }
    return v;
  }
  long signed_integer() {
    const bool negative = accept('-');
    const auto v = static_cast<long>(integer());
    return negative ? -v : v;
  }
  Rational rational() {
    Rational q(mpz_class(std::to_string(integer())));
    if (accept('/')) {
      const unsigned long den = integer();
      if (den == 0) fail({"nonzero denominator"});
      q /= Rational(mpz_class(std::to_string(den)));
    }
    q.canonicalize();
    return q;
  }

  std::size_t pos() const noexcept { return pos_; }
  void seek(std::size_t pos) noexcept { pos_ = pos; }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    std::ostringstream os;
    os << "parse error at offset " << pos_ << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? " or " : "") << "'" << expected[i] << "'";
    if (pos_ < src_.size()) {
      os << ", found '" << src_[pos_] << "'";
    } else {
      os << ", found end of input";
    }
    throw ParseError(pos_, std::move(expected), os.str());
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

// Polynomials -------------------------------------------------------------

struct RawPoly {
  std::map<MultiIndex, Rational> terms;  // variable-length multi-indices
};

class PolyParser {
 public:
  PolyParser(std::string_view src, char var) : cur_(src), var_(var) {}

  Polynomial run(std::size_t dim) {
    RawPoly p = expr();
    if (!cur_.at_end()) cur_.fail({"+", "-", "*", "^", "end of input"});
    if (dim == 0) dim = std::max<std::size_t>(max_var_, 1);
    if (max_var_ > dim) {
      throw Error(ErrorKind::Dimension, "variable index " + std::to_string(max_var_) +
                                            " exceeds the dimension " + std::to_string(dim));
    }
    Polynomial out(dim);
    for (const auto& [alpha, c] : p.terms) {
      MultiIndex full(dim, 0);
      for (std::size_t j = 0; j < alpha.size(); ++j) full[j] = alpha[j];
      out.add_term(full, c);
    }
    return out;
  }

 private:
  static RawPoly constant(const Rational& c) {
    RawPoly p;
    if (c != 0) p.terms[MultiIndex{}] = c;
    return p;
  }
  static MultiIndex trimmed(MultiIndex a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
  static RawPoly add(const RawPoly& a, const RawPoly& b, const Rational& sb) {
    RawPoly out = a;
    for (const auto& [alpha, c] : b.terms) {
      Rational& slot = out.terms[alpha];
      slot += sb * c;
      if (slot == 0) out.terms.erase(alpha);
    }
    return out;
  }
  static RawPoly mul(const RawPoly& a, const RawPoly& b) {
    RawPoly out;
    for (const auto& [x, cx] : a.terms) {
      for (const auto& [y, cy] : b.terms) {
        MultiIndex z(std::max(x.size(), y.size()), 0);
        for (std::size_t j = 0; j < x.size(); ++j) z[j] += x[j];
        for (std::size_t j = 0; j < y.size(); ++j) z[j] += y[j];
        z = trimmed(std::move(z));
        Rational& slot = out.terms[z];
        slot += cx * cy;
        if (slot == 0) out.terms.erase(z);
      }
    }
    return out;
  }

  RawPoly expr() {
    RawPoly acc = term();
    while (true) {
      if (cur_.accept('+')) {
        acc = add(acc, term(), Rational(1));
      } else if (cur_.accept('-')) {
        acc = add(acc, term(), Rational(-1));
      } else {
        return acc;
      }
    }
  }
  RawPoly term() {
    RawPoly acc = unary();
    while (cur_.accept('*')) acc = mul(acc, unary());
    return acc;
  }
  RawPoly unary() {
    if (cur_.accept('-')) return add(RawPoly{}, unary(), Rational(-1));
    if (cur_.accept('+')) return unary();
    return power();
  }
  RawPoly power() {
    RawPoly base = atom();
    if (!cur_.accept('^')) return base;
    const unsigned long e = cur_.integer();
    if (e > 64) cur_.fail({"exponent <= 64"});
    RawPoly out = constant(Rational(1));
    for (unsigned long i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }
  RawPoly atom() {
    const char c = cur_.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(cur_.rational());
    if (c == var_) {
      cur_.accept(var_);
      const std::size_t before = cur_.pos();
      const unsigned long j = cur_.integer();
      if (j < 1 || j > 9) {
        throw ParseError(before, {"variable index 1..9"},
                         "parse error at offset " + std::to_string(before) + ": variable index must be 1..9");
      }
      max_var_ = std::max<std::size_t>(max_var_, j);
      MultiIndex alpha(j, 0);
      alpha[j - 1] = 1;
      RawPoly p;
      p.terms[alpha] = 1;
      return p;
    }
    if (cur_.accept('(')) {
      RawPoly inner = expr();
      cur_.expect(')');
      return inner;
    }
    cur_.fail({"number", std::string(1, var_) + "<j>", "(", "-"});
  }

  Cursor cur_;
  char var_;
  std::size_t max_var_ = 0;
};

// Distributions -------------------------------------------------------------

struct CoordinateGroup {
  std::optional<unsigned> delta;
  std::optional<long> mono;
  std::optional<long> power;
  std::optional<unsigned> log;
  std::optional<int> heaviside;

  bool empty() const { return !delta && !mono && !power && !log && !heaviside; }
};

using Options = std::vector<std::pair<Rational, Atom1D>>;

Rational sign_power(long n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

Options expand(const CoordinateGroup& g) {
  if (g.delta) return {{Rational(1), Atom1D::delta(*g.delta)}};
  if (g.mono) {
    const int n = static_cast<int>(*g.mono);
    return {{Rational(1), Atom1D::monlog(n, 0, 1)}, {sign_power(n), Atom1D::monlog(n, 0, -1)}};
  }
  const int n = static_cast<int>(g.power.value_or(0));
  const unsigned p = g.log.value_or(0);
  // x^n on the negative half-line is (-1)^n |x|^n.
  Options out;
  if (!g.heaviside || *g.heaviside == 1) out.emplace_back(Rational(1), Atom1D::monlog(n, p, 1));
  if (!g.heaviside || *g.heaviside == -1) out.emplace_back(sign_power(n), Atom1D::monlog(n, p, -1));
  return out;
}

class DistParser {
 public:
  DistParser(std::string_view src, std::size_t dim) : cur_(src), dim_(dim), acc_(dim) {}

  DistExpr run() {
    Rational sign(1);
    if (cur_.accept('-')) {
      sign = -1;
    } else {
      cur_.accept('+');
    }
    term(sign);
    while (true) {
      if (cur_.accept('+')) {
        term(Rational(1));
      } else if (cur_.accept('-')) {
        term(Rational(-1));
      } else {
        break;
      }
    }
    if (!cur_.at_end()) cur_.fail({"+", "-", "*", "end of input"});
    return acc_.finish();
  }

 private:
  void term(const Rational& sign) {
    std::vector<CoordinateGroup> groups(dim_);
    Rational coeff = sign;
    bool need_factor = true;
    if (cur_.digit_next()) {
      coeff *= cur_.rational();
      need_factor = false;
      if (!cur_.accept('*')) {
        emit(coeff, groups);
        return;
      }
      need_factor = true;
    }
    if (need_factor) factor(groups);
    while (cur_.accept('*')) factor(groups);
    emit(coeff, groups);
  }

  std::size_t coordinate() {
    if (!cur_.accept_word("x")) cur_.fail({"x<j>"});
    const std::size_t at = cur_.pos();
    const unsigned long j = cur_.integer();
    if (j < 1 || j > dim_) {
      throw Error(ErrorKind::Dimension, "coordinate x" + std::to_string(j) + " at offset " +
                                            std::to_string(at) + " is outside dimension " +
                                            std::to_string(dim_));
    }
    return j - 1;
  }

  template <class T>
  void set(std::optional<T>& slot, T value, std::size_t j, std::size_t at) {
    if (slot) conflict(j, at);
    slot = value;
  }

  [[noreturn]] void conflict(std::size_t j, std::size_t at) {
    throw Error(ErrorKind::CoordinateConflict, "coordinate x" + std::to_string(j + 1) +
                                                   " has incompatible factors (offset " + std::to_string(at) + ")");
  }

  void factor(std::vector<CoordinateGroup>& groups) {
    cur_.skip_space();
    const std::size_t at = cur_.pos();
    if (cur_.accept_word("delta")) {
      cur_.expect('(');
      const std::size_t j = coordinate();
      cur_.expect(',');
      const auto k = static_cast<unsigned>(cur_.integer());
      cur_.expect(')');
      if (!groups[j].empty()) conflict(j, at);
      groups[j].delta = k;
      return;
    }
    if (cur_.accept_word("mono")) {
      cur_.expect('(');
      const std::size_t j = coordinate();
      cur_.expect(',');
      const long n = cur_.signed_integer();
      cur_.expect(')');
      if (!groups[j].empty()) conflict(j, at);
      groups[j].mono = n;
      return;
    }
    if (cur_.accept_word("log")) {
      cur_.expect('(');
      const std::size_t j = coordinate();
      cur_.expect(')');
      unsigned p = 1;
      if (cur_.accept('^')) p = static_cast<unsigned>(cur_.integer());
      if (groups[j].delta || groups[j].mono) conflict(j, at);
      set(groups[j].log, p, j, at);
      return;
    }
    if (cur_.accept_word("H")) {
      cur_.expect('(');
      const int s = cur_.accept('-') ? -1 : 1;
      const std::size_t j = coordinate();
      cur_.expect(')');
      if (groups[j].delta || groups[j].mono) conflict(j, at);
      set(groups[j].heaviside, s, j, at);
      return;
    }
    if (cur_.peek() == 'x') {
      const std::size_t j = coordinate();
      long n = 1;
      if (cur_.accept('^')) n = cur_.signed_integer();
      if (groups[j].delta || groups[j].mono) conflict(j, at);
      set(groups[j].power, n, j, at);
      return;
    }
    cur_.fail({"x<j>", "log(", "H(", "delta(", "mono(", "number"});
  }

  void emit(const Rational& coeff, const std::vector<CoordinateGroup>& groups) {
    if (coeff == 0) return;
    std::vector<Options> options;
    options.reserve(dim_);
    for (const auto& g : groups) options.push_back(expand(g));
    Factors f(dim_);
    auto rec = [&](auto&& self, std::size_t j, const Rational& c) -> void {
      if (j == dim_) {
        acc_.add(f, c);
        return;
      }
      for (const auto& [oc, atom] : options[j]) {
        f[j] = atom;
        self(self, j + 1, c * oc);
      }
    };
    rec(rec, 0, coeff);
  }

  Cursor cur_;
  std::size_t dim_;
  TermAccumulator acc_;
};

std::string format_factor(const Atom1D& a, std::size_t j) {
  const std::string x = "x" + std::to_string(j + 1);
  if (a.is_delta()) return "delta(" + x + "," + std::to_string(a.k) + ")";
  std::string out;
  if (a.n == 1) out += x + "*";
  if (a.n != 0 && a.n != 1) out += x + "^" + std::to_string(a.n) + "*";
  if (a.p == 1) out += "log(" + x + ")*";
  if (a.p > 1) out += "log(" + x + ")^" + std::to_string(a.p) + "*";
  out += (a.sign == 1) ? "H(" + x + ")" : "H(-" + x + ")";
  return out;
}

}  // namespace

Polynomial parse_poly(std::string_view src, std::size_t dim) { return parse_poly(src, dim, 't'); }

Polynomial parse_poly(std::string_view src, std::size_t dim, char variable) {
  return PolyParser(src, variable).run(dim);
}

std::string format_poly(const Polynomial& p) { return to_string(p, "t"); }

DistExpr parse_dist(std::string_view src, std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::Dimension, "dimension must be positive");
  return DistParser(src, dim).run();
}

std::string format_dist(const DistExpr& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e.terms()) {
    // The text names x^n on H(-x), which is (-1)^n times the atom.
    Rational c = t.coeff;
    for (const auto& a : t.factors)
      if (!a.is_delta() && a.sign == -1 && a.n % 2 != 0) c = -c;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string body;
    for (std::size_t j = 0; j < t.factors.size(); ++j) body += (j ? "*" : "") + format_factor(t.factors[j], j);
    if (body.empty()) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "*";
      os << body;
    }
  }
  return os.str();
}

GaussPoly parse_testfn(std::string_view src, std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::Dimension, "dimension must be positive");
  Cursor cur(src);
  if (!cur.accept_word("gauss")) cur.fail({"gauss("});
  cur.expect('(');
  cur.skip_space();
  const std::size_t body_start = cur.pos();
  // The polynomial runs to the first ';' or unmatched ')'.
  std::size_t body_end = body_start;
  for (int depth = 0; body_end < src.size(); ++body_end) {
    const char c = src[body_end];
    if (c == '(') ++depth;
    if (c == ')' && depth-- == 0) break;
    if (c == ';' && depth == 0) break;
  }
  Polynomial poly(dim);
  try {
    poly = parse_poly(src.substr(body_start, body_end - body_start), dim, 'x');
  } catch (const ParseError& e) {
    throw ParseError(body_start + e.offset(), e.expected(),
                     "parse error at offset " + std::to_string(body_start + e.offset()) + " in test function");
  }
  Cursor rest(src);
  rest.seek(body_end);

  std::vector<Rational> center(dim, Rational(0));
  Rational width(1);
  while (rest.accept(';')) {
    if (rest.accept_word("c")) {
      rest.expect('=');
      for (std::size_t j = 0; j < dim; ++j) {
        if (j) rest.expect(',');
        const bool negative = rest.accept('-');
        center[j] = rest.rational();
        if (negative) center[j] = -center[j];
      }
    } else if (rest.accept_word("w")) {
      rest.expect('=');
      width = rest.rational();
      if (width <= 0) rest.fail({"positive width"});
    } else {
      rest.fail({"c=", "w="});
    }
  }
  rest.expect(')');
  if (!rest.at_end()) rest.fail({"end of input"});
  return GaussPoly(std::move(poly), std::move(center), std::move(width));
}

std::string format_testfn(const GaussPoly& phi) {
  std::ostringstream os;
  os << "gauss(" << to_string(phi.poly(), "x") << "; c=";
  for (std::size_t j = 0; j < phi.dim(); ++j) os << (j ? "," : "") << to_string(phi.center()[j]);
  os << "; w=" << to_string(phi.width()) << ")";
  return os.str();
}

}  // namespace eulerdist
