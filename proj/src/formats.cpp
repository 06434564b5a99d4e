#include "gradedrel/formats.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gradedrel {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::string_view text;
  std::size_t number;  // 1-based
};

[[noreturn]] void fail(std::string_view code, std::size_t line, std::size_t column, std::string message) {
  throw ParseError(Diagnostic{std::string(code), line, column, std::move(message)});
}

std::string_view rstrip(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back({s.substr(start, i - start), start + 1});
  }
  return out;
}

// Significant lines: trailing whitespace removed, blank lines and '#' comments skipped.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = text.find('\n', pos);
      const std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
      ++number;
      const std::string_view line = rstrip(raw);
      if (!line.empty() && line.front() != '#') lines_.push_back({line, number});
      last_ = number;
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
  }

  bool done() const { return next_ >= lines_.size(); }
  std::size_t last_line() const { return last_; }

  Line next(std::string_view expecting) {
    if (done()) fail(kDiagDimension, last_, 0, "unexpected end of file, expected " + std::string(expecting));
    return lines_[next_++];
  }
  const Line* peek() const { return done() ? nullptr : &lines_[next_]; }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::size_t last_ = 0;
};

void expect_header(LineReader& in, std::string_view header) {
  const Line l = in.next(header);
  if (l.text != header) fail(kDiagSyntax, l.number, 1, "expected header '" + std::string(header) + "'");
}

// "key: rest" -> tokens of rest.
std::vector<Token> keyed(const Line& l, std::string_view key) {
  const std::string prefix = std::string(key) + ":";
  if (l.text.substr(0, prefix.size()) != prefix) fail(kDiagSyntax, l.number, 1, "expected '" + prefix + "'");
  auto toks = tokenize(l.text.substr(prefix.size()));
  for (auto& t : toks) t.column += prefix.size();
  return toks;
}

long parse_int(const Token& t, std::size_t line) {
  long v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(kDiagSyntax, line, t.column, "not an integer: '" + std::string(t.text) + "'");
  return v;
}

std::size_t parse_count(LineReader& in) {
  const Line l = in.next("points");
  const auto toks = keyed(l, "points");
  if (toks.size() != 1) fail(kDiagSyntax, l.number, 1, "points takes one value");
  const long n = parse_int(toks[0], l.number);
  if (n < 1) fail(kDiagRange, l.number, toks[0].column, "point count must be positive");
  return static_cast<std::size_t>(n);
}

void expect_end(const LineReader& in) {
  if (const Line* l = in.peek()) fail(kDiagDimension, l->number, 1, "unexpected trailing content");
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ' ';
    out += parts[i];
  }
  return out;
}

}  // namespace

RelationalSystem parse_system_file(std::string_view text) {
  LineReader in(text);
  expect_header(in, "gradedsystem v1");
  const std::size_t n = parse_count(in);

  Line l = in.next("window");
  std::vector<std::string> labels;
  if (l.text.rfind("labels:", 0) == 0) {
    const auto toks = keyed(l, "labels");
    if (toks.size() != n) {
      fail(kDiagDimension, l.number, 1, "expected " + std::to_string(n) + " labels, found " + std::to_string(toks.size()));
    }
    std::set<std::string_view> seen;
    for (const auto& t : toks) {
      if (!seen.insert(t.text).second) fail(kDiagLabels, l.number, t.column, "duplicate label '" + std::string(t.text) + "'");
      labels.emplace_back(t.text);
    }
    l = in.next("window");
  } else {
    labels = default_labels(n);
  }

  const auto wt = keyed(l, "window");
  if (wt.size() != 2) fail(kDiagSyntax, l.number, 1, "window takes two integers");
  const Window w{static_cast<int>(parse_int(wt[0], l.number)), static_cast<int>(parse_int(wt[1], l.number))};
  if (w.lo > w.hi) fail(kDiagRange, l.number, wt[0].column, "window lo exceeds hi");

  l = in.next("grades");
  if (!keyed(l, "grades").empty()) fail(kDiagSyntax, l.number, 1, "'grades:' stands on its own line");

  GradeMatrix grades(n, Grade(w.below()));
  std::vector<std::size_t> row_line(n);
  for (std::size_t x = 0; x < n; ++x) {
    const Line row = in.next("grade row " + std::to_string(x));
    row_line[x] = row.number;
    const auto toks = tokenize(row.text);
    if (toks.size() != n) {
      fail(kDiagDimension, row.number, 1,
           "row " + std::to_string(x) + " has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t y = 0; y < n; ++y) {
      const Token& t = toks[y];
      if (x == y) {
        if (t.text != "-") fail(kDiagDiagonal, row.number, t.column, "diagonal entry must be '-'");
        continue;
      }
      if (t.text == "-") fail(kDiagDiagonal, row.number, t.column, "'-' is only allowed on the diagonal");
      const long v = parse_int(t, row.number);
      if (v < w.below() || v > w.hi) {
        fail(kDiagRange, row.number, t.column,
             "grade " + std::to_string(v) + " outside [" + std::to_string(w.below()) + ", " + std::to_string(w.hi) + "]");
      }
      if (y < x) {
        const Grade mirror = grades(y, x);
        if (mirror != Grade(static_cast<int>(v))) {
          fail(kDiagSymmetry, row.number, t.column,
               "cell (" + std::to_string(x) + "," + std::to_string(y) + ") = " + std::to_string(v) + " but cell (" +
                   std::to_string(y) + "," + std::to_string(x) + ") = " + mirror.to_string() + " on line " +
                   std::to_string(row_line[y]));
        }
      } else {
        grades.set(x, y, Grade(static_cast<int>(v)));
      }
    }
  }
  expect_end(in);
  return RelationalSystem(std::move(labels), w, std::move(grades));
}

std::string serialize_system(const RelationalSystem& sys) {
  std::ostringstream os;
  const std::size_t n = sys.size();
  os << "gradedsystem v1\n";
  os << "points: " << n << "\n";
  os << "labels: " << join(sys.labels()) << "\n";
  os << "window: " << sys.window().lo << ' ' << sys.window().hi << "\n";
  os << "grades:\n";
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::string> row;
    for (std::size_t y = 0; y < n; ++y) row.push_back(x == y ? "-" : sys.grade(x, y).to_string());
    os << join(row) << "\n";
  }
  return os.str();
}

SelfMap parse_map_file(std::string_view text) {
  LineReader in(text);
  expect_header(in, "selfmap v1");
  const std::size_t n = parse_count(in);
  const Line l = in.next("map");
  const auto toks = keyed(l, "map");
  if (toks.size() != n) {
    fail(kDiagDimension, l.number, 1, "expected " + std::to_string(n) + " images, found " + std::to_string(toks.size()));
  }
  std::vector<std::size_t> image;
  for (const auto& t : toks) {
    const long v = parse_int(t, l.number);
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      fail(kDiagRange, l.number, t.column, "image index " + std::to_string(v) + " out of range");
    }
    image.push_back(static_cast<std::size_t>(v));
  }
  expect_end(in);
  return SelfMap(std::move(image));
}

std::string serialize_map(const SelfMap& t) {
  std::vector<std::string> parts;
  for (std::size_t v : t.image()) parts.push_back(std::to_string(v));
  return "selfmap v1\npoints: " + std::to_string(t.size()) + "\nmap: " + join(parts) + "\n";
}

namespace {

// Decimal digits only; cpp_int would read a leading zero as an octal prefix.
BigInt decimal(std::string_view digits) {
  const auto nz = digits.find_first_not_of('0');
  return nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(digits.substr(nz)));
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto all_digits = [](std::string_view d) {
    return !d.empty() && d.find_first_not_of("0123456789") == std::string_view::npos;
  };
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    const BigInt d = decimal(den);
    if (d == 0) return std::nullopt;
    value = Rational(decimal(num), d);
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view ex = s.substr(e + 1);
      bool neg_ex = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        neg_ex = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(ex));
      if (neg_ex) exponent = -exponent;
    }
    const auto dot = mantissa.find('.');
    std::string digits(mantissa.substr(0, dot));
    if (dot != std::string_view::npos) {
      const auto frac = mantissa.substr(dot + 1);
      if (!frac.empty() && !all_digits(frac)) return std::nullopt;
      digits += frac;
      exponent -= static_cast<long>(frac.size());
    }
    if (!all_digits(digits)) return std::nullopt;
    const BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(decimal(digits), ten_pow) : Rational(decimal(digits) * ten_pow);
  }
  return negative ? Rational(-value) : value;
}

DistanceMatrix parse_matrix_file(std::string_view text) {
  LineReader in(text);
  expect_header(in, "distmatrix v1");
  const std::size_t n = parse_count(in);
  DistanceMatrix d(n);
  for (std::size_t x = 0; x < n; ++x) {
    const Line row = in.next("matrix row " + std::to_string(x));
    const auto toks = tokenize(row.text);
    if (toks.size() != n) {
      fail(kDiagDimension, row.number, 1,
           "row " + std::to_string(x) + " has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t y = 0; y < n; ++y) {
      const auto v = parse_rational(toks[y].text);
      if (!v) fail(kDiagSyntax, row.number, toks[y].column, "not a rational: '" + std::string(toks[y].text) + "'");
      if (*v < 0) fail(kDiagRange, row.number, toks[y].column, "negative distance");
      if (x == y && *v != 0) fail(kDiagDiagonal, row.number, toks[y].column, "diagonal distance must be 0");
      if (y < x && *v != d(y, x)) {
        fail(kDiagSymmetry, row.number, toks[y].column,
             "cell (" + std::to_string(x) + "," + std::to_string(y) + ") = " + rational_to_string(*v) + " but cell (" +
                 std::to_string(y) + "," + std::to_string(x) + ") = " + rational_to_string(d(y, x)));
      }
      d(x, y) = *v;
    }
  }
  expect_end(in);
  return d;
}

std::string serialize_matrix(const DistanceMatrix& d) {
  std::ostringstream os;
  os << "distmatrix v1\npoints: " << d.size() << "\n";
  for (std::size_t x = 0; x < d.size(); ++x) {
    std::vector<std::string> row;
    for (std::size_t y = 0; y < d.size(); ++y) row.push_back(rational_to_string(d(x, y)));
    os << join(row) << "\n";
  }
  return os.str();
}

std::string serialize_counterexample(const Verdict& verdict) {
  if (!verdict.instance) throw Error(ErrorCode::Usage, "verdict carries no counterexample");
  std::ostringstream os;
  os << "counterexample v1 claim=" << claim_info(verdict.claim).name << " seed=" << verdict.seed
     << " trial=" << verdict.trial_index.value_or(0) << "\n";
  os << serialize_system(verdict.instance->system);
  if (verdict.instance->map) os << serialize_map(*verdict.instance->map);
  return os.str();
}

CounterexampleBundle parse_counterexample(std::string_view text) {
  const auto first_nl = text.find('\n');
  const std::string_view manifest = rstrip(text.substr(0, first_nl));
  const auto toks = tokenize(manifest);
  if (toks.size() != 5 || toks[0].text != "counterexample" || toks[1].text != "v1") {
    fail(kDiagSyntax, 1, 1, "expected 'counterexample v1 claim=<id> seed=<s> trial=<t>'");
  }
  auto field = [&](const Token& t, std::string_view key) {
    const std::string prefix = std::string(key) + "=";
    if (t.text.substr(0, prefix.size()) != prefix) fail(kDiagSyntax, 1, t.column, "expected " + prefix);
    return t.text.substr(prefix.size());
  };
  const auto claim = parse_claim_id(field(toks[2], "claim"));
  if (!claim) fail(kDiagSyntax, 1, toks[2].column, "unknown claim");
  auto number = [&](const Token& t, std::string_view key) {
    const auto v = field(t, key);
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail(kDiagSyntax, 1, t.column, "bad " + std::string(key));
    return out;
  };
  CounterexampleBundle b{*claim, number(toks[3], "seed"), number(toks[4], "trial"),
                         Instance{RelationalSystem::unlabelled(Window{0, 0}, GradeMatrix(1, Grade(0))), std::nullopt}};
  const std::string_view rest = text.substr(first_nl == std::string_view::npos ? text.size() : first_nl + 1);
  const auto map_at = rest.find("selfmap v1");
  b.instance.system = parse_system_file(rest.substr(0, map_at));
  if (map_at != std::string_view::npos) b.instance.map = parse_map_file(rest.substr(map_at));
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Usage, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Usage, "cannot write " + path);
  out << contents;
}

}  // namespace gradedrel
