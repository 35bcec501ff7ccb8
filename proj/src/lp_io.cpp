#include "suc/lp_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace suc {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_terms(std::string& out, const std::vector<std::pair<int, double>>& terms,
                  const MilpModel& model) {
  bool first = true;
  for (const auto& [j, coef] : terms) {
    if (coef == 0) continue;
    if (first) {
      if (coef < 0) out += "- ";
      first = false;
    } else {
      out += coef < 0 ? " - " : " + ";
    }
    out += num(std::abs(coef));
    out += " ";
    out += model.vars[j].name;
  }
  if (first) out += "0 " + model.vars[0].name;  // empty expression guard
}

}  // namespace

std::string lp_text(const MilpModel& model) {
  std::string out;
  out += "\\ " + (model.problem_kind.empty() ? std::string("model") : model.problem_kind) + "\n";
  out += "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (int j = 0; j < model.n_vars(); ++j)
    if (model.objective[j] != 0) obj_terms.emplace_back(j, model.objective[j]);
  append_terms(out, obj_terms, model);
  out += "\nSubject To\n";
  for (const auto& row : model.rows) {
    out += " " + row.name + ": ";
    append_terms(out, row.terms, model);
    switch (row.sense) {
      case RowSense::LE:
        out += " <= ";
        break;
      case RowSense::EQ:
        out += " = ";
        break;
      case RowSense::GE:
        out += " >= ";
        break;
    }
    out += num(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (const auto& v : model.vars) {
    if (v.lb == v.ub) {
      out += " " + v.name + " = " + num(v.lb) + "\n";
    } else {
      out += " ";
      out += std::isinf(v.lb) ? "-inf" : num(v.lb);
      out += " <= " + v.name + " <= ";
      out += std::isinf(v.ub) ? "+inf" : num(v.ub);
      out += "\n";
    }
  }
  bool any_binary = false;
  for (const auto& v : model.vars) any_binary |= v.kind == VarKind::Binary;
  if (any_binary) {
    out += "Binaries\n";
    for (const auto& v : model.vars)
      if (v.kind == VarKind::Binary) out += " " + v.name + "\n";
  }
  out += "End\n";
  return out;
}

void write_lp(const std::string& path, const MilpModel& model) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << lp_text(model);
}

namespace {

struct Token {
  enum Kind { Word, Number, Op, End } kind = End;
  std::string text;
  double value = 0;
};

class Lexer {
 public:
  explicit Lexer(std::istream& is) : is_(is) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    for (;;) {
      int c = is_.get();
      if (c == EOF) {
        tok_ = Token{};
        return;
      }
      if (c == '\\') {  // comment to end of line
        std::string skip;
        std::getline(is_, skip);
        continue;
      }
      if (std::isspace(c)) continue;
      if (c == '<' || c == '>' || c == '=' || c == '+' || c == '-' ||
          c == ':') {
        std::string op(1, static_cast<char>(c));
        if ((c == '<' || c == '>') && is_.peek() == '=')
          op += static_cast<char>(is_.get());
        tok_ = Token{Token::Op, op, 0};
        return;
      }
      std::string word(1, static_cast<char>(c));
      while (is_.peek() != EOF) {
        const int n = is_.peek();
        if (std::isspace(n) || n == '<' || n == '>' || n == '=' || n == '+' ||
            n == '-' || n == ':')
          break;
        word += static_cast<char>(is_.get());
      }
      char* end = nullptr;
      const double v = std::strtod(word.c_str(), &end);
      if (end && *end == '\0' && end != word.c_str()) {
        tok_ = Token{Token::Number, word, v};
      } else if (word == "inf") {
        tok_ = Token{Token::Number, word, kInf};
      } else {
        tok_ = Token{Token::Word, word, 0};
      }
      return;
    }
  }

  std::istream& is_;
  Token tok_;
};

bool word_is(const Token& t, const char* w) {
  if (t.kind != Token::Word) return false;
  std::string a = t.text;
  for (auto& c : a) c = static_cast<char>(std::tolower(c));
  return a == w;
}

}  // namespace

MilpModel read_lp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  Lexer lex(is);
  MilpModel model;

  auto var_index = [&](const std::string& name) {
    int j = model.var_by_name(name);
    if (j < 0)
      j = model.add_var(name, VarKind::Continuous, 0.0, kInf, VarCoord{});
    return j;
  };

  // expression := [+-] [num] name { (+|-) [num] name }
  auto parse_expr = [&](std::vector<std::pair<int, double>>& terms) {
    double sign = 1;
    for (;;) {
      const Token& t = lex.peek();
      if (t.kind == Token::Op && (t.text == "+" || t.text == "-")) {
        sign = (t.text == "-") ? -sign : sign;
        lex.take();
        continue;
      }
      if (t.kind == Token::Number) {
        const double coef = lex.take().value * sign;
        if (lex.peek().kind == Token::Word)
          terms.emplace_back(var_index(lex.take().text), coef);
        // bare number with no variable: constant, ignored (objective shift 0)
        sign = 1;
        continue;
      }
      if (t.kind == Token::Word) {
        // stop on section keywords
        if (word_is(t, "subject") || word_is(t, "st") || word_is(t, "bounds") ||
            word_is(t, "binaries") || word_is(t, "binary") ||
            word_is(t, "end") || word_is(t, "general"))
          return;
        terms.emplace_back(var_index(lex.take().text), sign);
        sign = 1;
        continue;
      }
      return;
    }
  };

  if (!word_is(lex.peek(), "minimize"))
    throw std::runtime_error(path + ": expected Minimize");
  lex.take();

  // objective, optionally labelled
  {
    Token t = lex.take();
    std::string label_name;
    if (t.kind == Token::Word && lex.peek().kind == Token::Op &&
        lex.peek().text == ":") {
      lex.take();
    } else if (t.kind == Token::Word || t.kind == Token::Number ||
               t.kind == Token::Op) {
      throw std::runtime_error(path + ": expected objective label");
    }
    std::vector<std::pair<int, double>> terms;
    parse_expr(terms);
    for (const auto& [j, c] : terms) model.objective[j] += c;
  }

  if (word_is(lex.peek(), "subject")) {
    lex.take();
    if (word_is(lex.peek(), "to")) lex.take();
  } else if (word_is(lex.peek(), "st")) {
    lex.take();
  }

  // constraint rows until Bounds/Binaries/End
  while (lex.peek().kind == Token::Word && !word_is(lex.peek(), "bounds") &&
         !word_is(lex.peek(), "binaries") && !word_is(lex.peek(), "binary") &&
         !word_is(lex.peek(), "end")) {
    Token name = lex.take();
    if (!(lex.peek().kind == Token::Op && lex.peek().text == ":"))
      throw std::runtime_error(path + ": expected ':' after row name " +
                               name.text);
    lex.take();
    std::vector<std::pair<int, double>> terms;
    parse_expr(terms);
    Token op = lex.take();
    if (op.kind != Token::Op)
      throw std::runtime_error(path + ": expected row sense in " + name.text);
    RowSense sense = RowSense::EQ;
    if (op.text == "<=" || op.text == "<")
      sense = RowSense::LE;
    else if (op.text == ">=" || op.text == ">")
      sense = RowSense::GE;
    else if (op.text != "=")
      throw std::runtime_error(path + ": bad sense " + op.text);
    double rhs_sign = 1;
    while (lex.peek().kind == Token::Op &&
           (lex.peek().text == "-" || lex.peek().text == "+")) {
      if (lex.take().text == "-") rhs_sign = -rhs_sign;
    }
    Token rhs = lex.take();
    if (rhs.kind != Token::Number)
      throw std::runtime_error(path + ": expected rhs in " + name.text);
    auto& row = model.add_row(name.text, sense, rhs_sign * rhs.value);
    row.terms = std::move(terms);
  }

  if (word_is(lex.peek(), "bounds")) {
    lex.take();
    while (!word_is(lex.peek(), "binaries") && !word_is(lex.peek(), "binary") &&
           !word_is(lex.peek(), "end") && lex.peek().kind != Token::End) {
      // forms: "lb <= name <= ub"  |  "name = v"  |  "name <= ub"
      double sign = 1;
      while (lex.peek().kind == Token::Op &&
             (lex.peek().text == "-" || lex.peek().text == "+"))
        if (lex.take().text == "-") sign = -sign;
      Token first = lex.take();
      if (first.kind == Token::Number) {
        const double lb = sign * first.value;
        Token op = lex.take();  // <=
        if (op.kind != Token::Op)
          throw std::runtime_error(path + ": bad bounds line");
        Token name = lex.take();
        int j = var_index(name.text);
        model.vars[j].lb = lb;
        if (lex.peek().kind == Token::Op && (lex.peek().text == "<=" ||
                                             lex.peek().text == "<")) {
          lex.take();
          double s2 = 1;
          while (lex.peek().kind == Token::Op &&
                 (lex.peek().text == "-" || lex.peek().text == "+"))
            if (lex.take().text == "-") s2 = -s2;
          Token ub = lex.take();
          model.vars[j].ub = s2 * ub.value;
        }
      } else if (first.kind == Token::Word) {
        int j = var_index(first.text);
        Token op = lex.take();
        double s2 = 1;
        while (lex.peek().kind == Token::Op &&
               (lex.peek().text == "-" || lex.peek().text == "+"))
          if (lex.take().text == "-") s2 = -s2;
        Token v = lex.take();
        if (v.kind != Token::Number)
          throw std::runtime_error(path + ": bad bound for " + first.text);
        if (op.text == "=") {
          model.vars[j].lb = model.vars[j].ub = s2 * v.value;
        } else if (op.text == "<=" || op.text == "<") {
          model.vars[j].ub = s2 * v.value;
        } else if (op.text == ">=" || op.text == ">") {
          model.vars[j].lb = s2 * v.value;
        } else {
          throw std::runtime_error(path + ": bad bound op " + op.text);
        }
      } else {
        throw std::runtime_error(path + ": bad bounds section");
      }
    }
  }

  if (word_is(lex.peek(), "binaries") || word_is(lex.peek(), "binary")) {
    lex.take();
    while (lex.peek().kind == Token::Word && !word_is(lex.peek(), "end")) {
      int j = var_index(lex.take().text);
      model.vars[j].kind = VarKind::Binary;
    }
  }
  return model;
}

void write_solution(const std::string& path, const SolutionFile& solution) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "# status " << solution.status << "\n";
  os << "# objective " << num(solution.objective) << "\n";
  for (const auto& [name, value] : solution.values)
    os << name << " " << num(value) << "\n";
}

SolutionFile read_solution(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  SolutionFile out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "status") ls >> out.status;
      if (key == "objective") ls >> out.objective;
      continue;
    }
    std::string name;
    double value;
    ls >> name >> value;
    if (!ls) throw std::runtime_error(path + ": bad solution row: " + line);
    out.values.emplace_back(name, value);
  }
  return out;
}

std::vector<double> solution_values_for(const MilpModel& model,
                                        const SolutionFile& solution) {
  std::vector<double> x(model.n_vars(), 0.0);
  std::vector<bool> seen(model.n_vars(), false);
  for (const auto& [name, value] : solution.values) {
    const int j = model.var_by_name(name);
    if (j < 0) continue;  // foreign solver may add extras
    x[j] = value;
    seen[j] = true;
  }
  for (int j = 0; j < model.n_vars(); ++j)
    if (!seen[j])
      throw std::runtime_error("solution file misses variable " +
                               model.vars[j].name);
  return x;
}

}  // namespace suc
