#include "vproblog/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "vproblog/error.hpp"

namespace vpl {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  int line() const { return line_; }
  int column() const { return col_; }

  bool eof() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    advance(tok.size());
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'" + found());
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) advance(1);
    if (start == pos_) fail("expected an identifier" + found());
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      advance(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) fail("malformed probability");
    return value;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(ErrorCode::Syntax, what, line_, col_);
  }

 private:
  std::string found() {
    if (pos_ >= text_.size()) return " but reached end of input";
    return std::string(" but found '") + text_[pos_] + "'";
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class AtomReader {
 public:
  explicit AtomReader(Scanner& in) : in_(in) {}

  Atom read() {
    char c = in_.peek();
    if (!std::islower(static_cast<unsigned char>(c))) in_.fail("predicate names start with a lowercase letter");
    Atom a{in_.identifier(), {}};
    if (in_.accept("(")) {
      do {
        a.terms.push_back(term());
      } while (in_.accept(","));
      in_.expect(")");
    }
    return a;
  }

 private:
  Term term() {
    std::string name = in_.identifier();
    if (name == "_") return Term::variable("_G" + std::to_string(++anonymous_));
    return is_variable_name(name) ? Term::variable(name) : Term::constant(name);
  }

  Scanner& in_;
  int anonymous_ = 0;
};

}  // namespace

ProbProgram parse_program(std::string_view text) {
  Scanner in(text);
  AtomReader reader(in);
  std::vector<Rule> rules;
  std::vector<Atom> facts;
  std::vector<double> probs;
  ArityChecker arity;
  std::map<std::string, std::pair<int, int>> fact_preds, rule_preds;
  std::set<Atom> seen_facts;

  while (!in.eof()) {
    const int line = in.line();
    const int col = in.column();
    auto fail = [&](ErrorCode code, const std::string& what) -> void {
      throw ParseError(code, what, line, col);
    };
    auto checked = [&](const Atom& a) {
      try {
        arity.check(a);
      } catch (const Error& e) {
        fail(e.code(), e.what());
      }
    };

    std::optional<double> prob;
    char c = in.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      prob = in.number();
      in.expect("::");
    }
    Atom head = reader.read();

    if (in.accept(":-")) {
      if (prob) fail(ErrorCode::Syntax, "probabilistic rules are not supported; annotate a fact instead");
      std::vector<Atom> body;
      do {
        body.push_back(reader.read());
      } while (in.accept(","));
      in.expect(".");
      checked(head);
      for (const auto& b : body) checked(b);
      try {
        rules.emplace_back(head, std::move(body));
      } catch (const Error& e) {
        fail(e.code(), e.what());
      }
      if (fact_preds.contains(head.predicate))
        fail(ErrorCode::PredicateOverlap, "predicate " + head.predicate + " is already defined by facts");
      rule_preds.emplace(head.predicate, std::make_pair(line, col));
      continue;
    }

    in.expect(".");
    checked(head);
    double p = prob.value_or(1.0);
    if (!head.is_ground()) fail(ErrorCode::NonGroundFact, "fact " + head.to_string() + " is not ground");
    if (!(p >= 0.0 && p <= 1.0))
      fail(ErrorCode::ProbabilityRange, "probability of " + head.to_string() + " is outside [0,1]");
    if (rule_preds.contains(head.predicate))
      fail(ErrorCode::PredicateOverlap, "predicate " + head.predicate + " is already defined by rules");
    if (!seen_facts.insert(head).second)
      fail(ErrorCode::InvalidArgument, "duplicate fact " + head.to_string());
    fact_preds.emplace(head.predicate, std::make_pair(line, col));
    facts.push_back(std::move(head));
    probs.push_back(p);
  }
  return ProbProgram(std::move(rules), std::move(facts), std::move(probs));
}

Atom parse_query(std::string_view text) {
  Scanner in(text);
  AtomReader reader(in);
  Atom a = reader.read();
  in.accept(".");
  if (!in.eof()) in.fail("unexpected text after the query atom");
  return a;
}

std::string format_probability(double p) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, ptr);
}

std::string render_program(const ProbProgram& program) {
  std::string out;
  for (std::size_t i = 0; i < program.facts().size(); ++i) {
    double p = program.probability(i);
    if (p != 1.0) out += format_probability(p) + "::";
    out += program.facts()[i].to_string() + ".\n";
  }
  for (const auto& r : program.rules()) out += r.to_string() + "\n";
  return out;
}

}  // namespace vpl
