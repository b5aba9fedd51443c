#pragma once

#include "valnag/seshadri.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace valnag {

/// A parsed scene: surface, valuation, curve catalog, flag and overrides.
/// Parsing makes every default explicit, so two scenes compare equal exactly
/// when they describe the same computation.
struct Scene {
  SurfaceModel surface;
  ProximityStructure valuation = ProximityStructure::all_free(1);
  std::vector<CurveRecord> curves;
  Flag flag;
  TangentSpec tangent;
  std::optional<Rational> t_max;  // nullopt = auto
  Assertions assertions;

  BlowupModel model() const { return BlowupModel(valuation, surface, curves); }

  friend bool operator==(const Scene& a, const Scene& b) {
    return a.surface == b.surface && a.valuation == b.valuation && a.curves == b.curves && a.flag == b.flag &&
           a.tangent.incidence == b.tangent.incidence && a.tangent.satellite_ok == b.tangent.satellite_ok &&
           a.t_max == b.t_max && a.assertions == b.assertions;
  }
};

struct SourceLocation {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  SourceLocation location;

  bool is_error() const { return severity == Severity::Error; }
  std::string str() const {
    return std::to_string(location.line) + ":" + std::to_string(location.col) + ": " +
           (is_error() ? "error: " : "warning: ") + message;
  }
};

struct ParseResult {
  std::optional<Scene> scene;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return scene.has_value(); }
  std::vector<Diagnostic> errors() const {
    std::vector<Diagnostic> out;
    for (const auto& d : diagnostics)
      if (d.is_error()) out.push_back(d);
    return out;
  }
};

namespace dsl {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation loc;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SourceLocation loc, const std::string& what) : std::runtime_error(what), loc_(loc) {}
  SourceLocation location() const { return loc_; }

 private:
  SourceLocation loc_;
};

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        t.text += text[i];
        advance();
      }
    } else if (is_digit(c) || ((c == '-' || c == '+') && i + 1 < text.size() && is_digit(text[i + 1]))) {
      t.kind = Tok::Number;
      t.text += c;
      advance();
      while (i < text.size() && is_digit(text[i])) {
        t.text += text[i];
        advance();
      }
      if (i + 1 < text.size() && text[i] == '/' && is_digit(text[i + 1])) {
        t.text += '/';
        advance();
        while (i < text.size() && is_digit(text[i])) {
          t.text += text[i];
          advance();
        }
      }
    } else if (std::string_view("{}();,:").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
    } else {
      throw SyntaxError(t.loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

/// Locations kept for semantic checks after the syntax pass.
struct CurveSource {
  SourceLocation at;
  std::map<int, SourceLocation> mult_at;
  std::map<std::string, SourceLocation> dot_at;
  bool has_deg = false, has_dc = false, has_selfint = false;
  SourceLocation system_at;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ParseResult run() {
    ParseResult res;
    try {
      while (peek().kind != Tok::End) statement();
    } catch (const SyntaxError& e) {
      res.diagnostics.push_back({Diagnostic::Severity::Error, e.what(), e.location()});
      return res;
    }
    finish(res);
    return res;
  }

 private:
  // token helpers
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(peek().loc, msg); }

  std::string describe(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  void expect(char c) {
    if (!at_punct(c)) fail(std::string("expected '") + c + "', found " + describe(peek()));
    next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected a name, found " + describe(peek()));
    return next().text;
  }
  Rational rational() {
    if (peek().kind != Tok::Number) fail("expected a number, found " + describe(peek()));
    SourceLocation at = peek().loc;
    auto q = parse_rational(next().text);
    if (!q) throw SyntaxError(at, "invalid rational number");
    return *q;
  }
  Integer integer() {
    if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos)
      fail("expected an integer, found " + describe(peek()));
    return numer(*parse_rational(next().text));
  }
  int small_int() {
    SourceLocation at = peek().loc;
    Integer z = integer();
    if (z < -1000000 || z > 1000000) throw SyntaxError(at, "index out of range");
    return static_cast<int>(z);
  }
  void optional_semicolon() {
    if (at_punct(';')) next();
  }
  void error(SourceLocation at, std::string msg) { semantic_.push_back({Diagnostic::Severity::Error, std::move(msg), at}); }
  void warning(SourceLocation at, std::string msg) {
    semantic_.push_back({Diagnostic::Severity::Warning, std::move(msg), at});
  }

  void once(const char* what, bool& seen, SourceLocation at) {
    if (seen) error(at, std::string("duplicate ") + what + " statement");
    seen = true;
  }

  void statement() {
    SourceLocation at = peek().loc;
    std::string word = ident();
    if (word == "surface") {
      once("surface", seen_surface_, at);
      surface_stmt(at);
    } else if (word == "valuation") {
      once("valuation", seen_valuation_, at);
      valuation_stmt(at);
    } else if (word == "curve") {
      curve_stmt(at);
    } else if (word == "flag") {
      once("flag", seen_flag_, at);
      flag_stmt(at);
    } else if (word == "tangent") {
      once("tangent", seen_tangent_, at);
      tangent_stmt(at);
    } else if (word == "t_max") {
      once("t_max", seen_tmax_, at);
      if (at_word("auto")) {
        next();
        scene_.t_max.reset();
      } else {
        SourceLocation vat = peek().loc;
        scene_.t_max = rational();
        if (*scene_.t_max <= 0) error(vat, "t_max must be positive");
      }
      expect(';');
    } else if (word == "assert") {
      assert_stmt();
    } else {
      throw SyntaxError(at, "unknown statement '" + word + "'");
    }
  }

  void surface_stmt(SourceLocation at) {
    if (at_word("p2")) {
      next();
      scene_.surface = SurfaceModel::p2();
      expect(';');
      return;
    }
    expect_word("custom");
    expect('{');
    std::optional<int> rho;
    std::optional<Rational> d2;
    while (!at_punct('}')) {
      SourceLocation fat = peek().loc;
      std::string field = ident();
      if (field == "rho") {
        if (rho) error(fat, "duplicate rho");
        rho = small_int();
      } else if (field == "d2") {
        if (d2) error(fat, "duplicate d2");
        d2 = rational();
      } else {
        throw SyntaxError(fat, "unknown surface field '" + field + "'");
      }
      expect(';');
    }
    expect('}');
    optional_semicolon();
    if (!rho || !d2) {
      error(at, "custom surface needs both rho and d2");
      return;
    }
    try {
      scene_.surface = SurfaceModel::custom(*rho, *d2);
    } catch (const InvalidInput& e) {
      error(at, e.what());
    }
  }

  void valuation_stmt(SourceLocation at) {
    expect('{');
    while (!at_punct('}')) {
      point_at_.push_back(peek().loc);
      decls_.push_back(point_decl());
      expect(';');
    }
    expect('}');
    optional_semicolon();
    if (decls_.empty()) error(at, "valuation needs at least one center");
  }

  PointDecl point_decl() {
    if (at_word("free")) {
      next();
      return PointDecl::free();
    }
    if (at_word("sat")) {
      next();
      expect('(');
      int target = small_int();
      expect(')');
      return PointDecl::satellite(target);
    }
    fail("expected 'free' or 'sat(j)', found " + describe(peek()));
  }

  void curve_stmt(SourceLocation at) {
    CurveRecord c;
    CurveSource src;
    src.at = at;
    c.name = ident();
    expect('{');
    while (!at_punct('}')) {
      SourceLocation fat = peek().loc;
      std::string field = ident();
      if (field == "deg") {
        if (src.has_deg) error(fat, "duplicate deg");
        src.has_deg = true;
        c.degree = integer();
      } else if (field == "dC") {
        if (src.has_dc) error(fat, "duplicate dC");
        src.has_dc = true;
        c.dC = rational();
      } else if (field == "selfint") {
        if (src.has_selfint) error(fat, "duplicate selfint");
        src.has_selfint = true;
        c.selfint = rational();
      } else if (field == "dot") {
        std::string other = ident();
        if (src.dot_at.count(other)) error(fat, "duplicate dot " + other);
        src.dot_at[other] = fat;
        c.pairwise[other] = rational();
      } else if (field == "mult") {
        mult_list(src);
      } else if (field == "system") {
        if (c.system_m) error(fat, "duplicate system");
        src.system_at = fat;
        c.system_m = integer();
      } else if (field == "meets_flag") {
        if (c.flag_meet) error(fat, "duplicate meets_flag");
        c.flag_meet = integer();
        if (*c.flag_meet < 0) error(fat, "meets_flag must be non-negative");
      } else if (field == "irreducible") {
        c.irreducible = true;
      } else if (field == "satellite_ok") {
        c.satellite_ok = true;
      } else {
        throw SyntaxError(fat, "unknown curve field '" + field + "'");
      }
      expect(';');
    }
    expect('}');
    optional_semicolon();
    curves_.push_back(std::move(c));
    curve_src_.push_back(std::move(src));
  }

  void mult_list(CurveSource& src) {
    for (;;) {
      SourceLocation at = peek().loc;
      int idx = small_int();
      expect(':');
      Integer m = integer();
      if (src.mult_at.count(idx)) error(at, "duplicate multiplicity at p" + std::to_string(idx));
      if (m < 0) error(at, "multiplicity must be non-negative");
      src.mult_at[idx] = at;
      pending_mults_.push_back({curves_.size() + 1, idx, m});
      if (!at_punct(',')) break;
      next();
    }
  }

  void flag_stmt(SourceLocation at) {
    expect('{');
    flag_at_ = at;
    PointDecl d = point_decl();
    scene_.flag = d.satellite_of ? Flag::satellite(*d.satellite_of) : Flag::free();
    expect(';');
    expect('}');
    optional_semicolon();
  }

  void tangent_stmt(SourceLocation at) {
    tangent_at_ = at;
    std::vector<int> inc;
    for (;;) {
      inc.push_back(small_int());
      if (!at_punct(',')) break;
      next();
    }
    if (at_word("satellite_ok")) {
      next();
      scene_.tangent.satellite_ok = true;
    }
    scene_.tangent.incidence = inc;
    expect(';');
  }

  void assert_stmt() {
    SourceLocation at = peek().loc;
    std::string what = ident();
    if (what == "status") {
      SourceLocation sat = peek().loc;
      auto s = parse_status(ident());
      if (!s) throw SyntaxError(sat, "status must be Minimal, NonMinimal or Undetermined");
      if (scene_.assertions.status) error(at, "duplicate assert status");
      scene_.assertions.status = s;
    } else if (what == "eps") {
      if (scene_.assertions.eps) error(at, "duplicate assert eps");
      scene_.assertions.eps = rational();
    } else if (what == "mu") {
      if (scene_.assertions.mu) error(at, "duplicate assert mu");
      scene_.assertions.mu = rational();
    } else {
      throw SyntaxError(at, "unknown assertion '" + what + "'");
    }
    expect(';');
  }

  // semantic pass
  void finish(ParseResult& res) {
    bool fatal = false;
    if (!seen_valuation_) {
      error({1, 1}, "missing valuation block");
      fatal = true;
    } else if (!decls_.empty()) {
      try {
        scene_.valuation = ProximityStructure::validate(decls_);
      } catch (const StructureError& e) {
        int k = e.point();
        error(k >= 1 && k <= static_cast<int>(point_at_.size()) ? point_at_[k - 1] : SourceLocation{1, 1}, e.what());
        fatal = true;
      }
    } else {
      fatal = true;
    }
    const int r = fatal ? 0 : scene_.valuation.size();

    if (!fatal) {
      for (auto& c : curves_) c.germ.assign(static_cast<std::size_t>(r), Integer(0));
      for (const auto& pm : pending_mults_) {
        auto& c = curves_[pm.curve - 1];
        if (pm.index < 1 || pm.index > r) {
          error(curve_src_[pm.curve - 1].mult_at.at(pm.index),
                "multiplicity at undeclared point p" + std::to_string(pm.index) + " (r = " + std::to_string(r) + ")");
          continue;
        }
        c.germ[pm.index - 1] = pm.mult;
      }
      check_curves(r);
      check_flag(r);
      check_tangent();
    }
    scene_.curves = curves_;

    if (!has_errors() && !fatal) {
      try {
        auto model = scene_.model();
        (void)model;
      } catch (const InvalidInput& e) {
        error(curve_src_.empty() ? SourceLocation{1, 1} : curve_src_.front().at, e.what());
      }
    }
    res.diagnostics.insert(res.diagnostics.end(), semantic_.begin(), semantic_.end());
    if (!has_errors() && !fatal) res.scene = scene_;
  }

  bool has_errors() const {
    for (const auto& d : semantic_)
      if (d.is_error()) return true;
    return false;
  }

  void check_curves(int r) {
    std::set<std::string> names;
    const bool p2 = scene_.surface.is_p2();
    for (std::size_t k = 0; k < curves_.size(); ++k) {
      auto& c = curves_[k];
      const auto& src = curve_src_[k];
      if (!names.insert(c.name).second) error(src.at, "duplicate curve name " + c.name);
      if (c.name.size() >= 2 && c.name[0] == 'E' &&
          c.name.find_first_not_of("0123456789", 1) == std::string::npos)
        error(src.at, "curve name " + c.name + " is reserved for exceptional divisors");
      if (p2) {
        if (!c.degree) error(src.at, "curve " + c.name + " on p2 needs deg");
        else if (*c.degree < 1) error(src.at, "degree must be positive");
        if (src.has_dc || src.has_selfint || !src.dot_at.empty())
          error(src.at, "on p2 dC, selfint and dot follow from the degrees and may not be declared");
        if (c.system_m && c.degree && *c.system_m != *c.degree)
          error(src.system_at, "on p2 the system of a curve is its degree");
      } else {
        if (src.has_deg) error(src.at, "deg is only meaningful on p2; declare dC and selfint");
        if (!src.has_dc || !src.has_selfint) error(src.at, "curve " + c.name + " needs dC and selfint");
        if (c.system_m && *c.system_m < 1) error(src.system_at, "system must be positive");
      }
      check_germ(c, src, r);
    }
    if (has_errors()) return;
    if (p2) {
      fill_p2_curve_data(curves_);
      return;
    }
    // symmetric completion of pairwise intersections
    for (std::size_t k = 0; k < curves_.size(); ++k) {
      for (const auto& [other, v] : std::map<std::string, Rational>(curves_[k].pairwise)) {
        if (!names.count(other)) {
          error(curve_src_[k].dot_at.at(other), "dot with unknown curve " + other);
          continue;
        }
        if (other == curves_[k].name) {
          error(curve_src_[k].dot_at.at(other), "use selfint for a curve's own square");
          continue;
        }
        for (std::size_t l = 0; l < curves_.size(); ++l) {
          if (curves_[l].name != other) continue;
          auto it = curves_[l].pairwise.find(curves_[k].name);
          if (it == curves_[l].pairwise.end()) curves_[l].pairwise[curves_[k].name] = v;
          else if (it->second != v)
            error(curve_src_[k].dot_at.at(other),
                  "conflicting intersection numbers " + curves_[k].name + "." + other);
        }
      }
    }
    for (std::size_t k = 0; k < curves_.size(); ++k)
      for (const auto& other : curves_)
        if (other.name != curves_[k].name && !curves_[k].pairwise.count(other.name))
          error(curve_src_[k].at, "missing intersection number " + curves_[k].name + "." + other.name);
  }

  void check_germ(const CurveRecord& c, const CurveSource& src, int r) {
    const auto& ps = scene_.valuation;
    if (c.irreducible) {
      for (int i = 1; i <= r; ++i) {
        Integer tail = 0;
        for (int j : ps.proximate_points(i)) tail += c.germ[j - 1];
        if (c.germ[i - 1] < tail)
          error(src.at, "curve " + c.name + " is declared irreducible but violates the proximity inequality at p" +
                            std::to_string(i));
      }
    }
    bool smooth = true;
    for (const auto& m : c.germ)
      if (m > 1) smooth = false;
    if (smooth && !c.satellite_ok)
      for (int i = 1; i <= r; ++i)
        if (c.germ[i - 1] > 0 && ps.is_satellite(i)) {
          error(src.at, "smooth curve " + c.name + " passes through satellite point p" + std::to_string(i) +
                            " (add satellite_ok to confirm)");
          break;
        }
  }

  void check_flag(int r) {
    if (!scene_.flag.is_satellite()) return;
    int eta = scene_.flag.eta;
    if (eta < 1 || eta >= r || scene_.valuation.last_proximate(eta) != r)
      error(flag_at_, "flag sat(" + std::to_string(eta) + ") is not a point of E" + std::to_string(r) +
                          ": E" + std::to_string(eta) + " must meet E" + std::to_string(r));
  }

  void check_tangent() {
    if (!scene_.tangent.incidence) return;
    try {
      auto t = tangent_line_value(scene_.valuation, scene_.tangent.incidence, scene_.tangent.satellite_ok);
      for (const auto& w : t.warnings) warning(tangent_at_, w);
      // keep the incidence in canonical order
      scene_.tangent.incidence = t.incidence;
    } catch (const InvalidInput& e) {
      error(tangent_at_, e.what());
    }
  }

  struct PendingMult {
    std::size_t curve;  // 1-based position in curves_ at parse time
    int index;
    Integer mult;
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Scene scene_;
  std::vector<PointDecl> decls_;
  std::vector<SourceLocation> point_at_;
  std::vector<CurveRecord> curves_;
  std::vector<CurveSource> curve_src_;
  std::vector<PendingMult> pending_mults_;
  SourceLocation flag_at_, tangent_at_;
  bool seen_surface_ = false, seen_valuation_ = false, seen_flag_ = false, seen_tangent_ = false,
       seen_tmax_ = false;
  std::vector<Diagnostic> semantic_;
};

}  // namespace dsl

inline ParseResult parse_scene(std::string_view text) {
  try {
    return dsl::Parser(dsl::lex(text)).run();
  } catch (const dsl::SyntaxError& e) {
    ParseResult res;
    res.diagnostics.push_back({Diagnostic::Severity::Error, e.what(), e.location()});
    return res;
  }
}

/// Canonical text: one statement per line, every default written out.
inline std::string serialize_scene(const Scene& s) {
  std::ostringstream out;
  if (s.surface.is_p2()) out << "surface p2;\n";
  else out << "surface custom { rho " << s.surface.rho << "; d2 " << to_string(s.surface.d2) << "; };\n";
  out << "valuation {";
  for (const auto& d : s.valuation.declarations()) {
    if (d.satellite_of) out << " sat(" << *d.satellite_of << ");";
    else out << " free;";
  }
  out << " }\n";
  for (const auto& c : s.curves) {
    out << "curve " << c.name << " {";
    if (s.surface.is_p2()) {
      out << " deg " << *c.degree << ";";
    } else {
      out << " dC " << to_string(c.dC) << "; selfint " << to_string(c.selfint) << ";";
      for (const auto& [other, v] : c.pairwise) out << " dot " << other << " " << to_string(v) << ";";
    }
    if (!c.germ.empty()) {
      out << " mult";
      for (std::size_t i = 0; i < c.germ.size(); ++i) out << (i ? ", " : " ") << i + 1 << ":" << c.germ[i];
      out << ";";
    }
    if (c.system_m) out << " system " << *c.system_m << ";";
    if (c.flag_meet) out << " meets_flag " << *c.flag_meet << ";";
    if (c.irreducible) out << " irreducible;";
    if (c.satellite_ok) out << " satellite_ok;";
    out << " }\n";
  }
  out << "flag { " << (s.flag.is_satellite() ? "sat(" + std::to_string(s.flag.eta) + ")" : std::string("free"))
      << "; }\n";
  if (s.tangent.incidence) {
    out << "tangent";
    for (std::size_t i = 0; i < s.tangent.incidence->size(); ++i)
      out << (i ? "," : " ") << (*s.tangent.incidence)[i];
    if (s.tangent.satellite_ok) out << " satellite_ok";
    out << ";\n";
  }
  out << "t_max " << (s.t_max ? to_string(*s.t_max) : std::string("auto")) << ";\n";
  if (s.assertions.status) out << "assert status " << to_string(*s.assertions.status) << ";\n";
  if (s.assertions.eps) out << "assert eps " << to_string(*s.assertions.eps) << ";\n";
  if (s.assertions.mu) out << "assert mu " << to_string(*s.assertions.mu) << ";\n";
  return out.str();
}

}  // namespace valnag
