#include "psets/weights.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "psets/error.hpp"
#include "psets/format.hpp"

namespace psets {

namespace {

void require_weight(double v, const std::string& what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidArgument(what + " must be a finite nonnegative number");
  }
}

void validate_tail(const TailRule& tail) {
  if (const auto* g = std::get_if<GeometricTail>(&tail)) {
    if (!(g->ratio > 0.0 && g->ratio < 1.0)) {
      throw InvalidArgument("geometric tail ratio must lie in (0, 1)");
    }
  } else if (const auto* pl = std::get_if<PowerLawTail>(&tail)) {
    if (!(pl->exponent > 0.0) || !std::isfinite(pl->exponent)) {
      throw InvalidArgument("power-law tail exponent must be positive");
    }
    if (!(pl->scale > 0.0) || !std::isfinite(pl->scale)) {
      throw InvalidArgument("power-law tail scale must be positive");
    }
  }
}

// sum_{j > m} j^{-b} for b > 1.
long double zeta_tail(long double b, long double m) {
  constexpr int kDirectTerms = 4096;
  long double direct = 0.0L;
  const long double first = m + 1.0L;
  // Smallest terms first.
  for (int i = kDirectTerms - 1; i >= 0; --i) direct += std::pow(first + i, -b);
  const long double big_j = first + kDirectTerms;
  // Euler-Maclaurin for sum_{j >= J} f(j), f(x) = x^{-b}.
  const long double fj = std::pow(big_j, -b);
  const long double from_j = big_j * fj / (b - 1.0L) + fj / 2.0L + b * fj / big_j / 12.0L -
                             b * (b + 1.0L) * (b + 2.0L) * fj / (big_j * big_j * big_j) / 720.0L;
  return direct + from_j;
}

}  // namespace

ProductWeights::ProductWeights(std::vector<double> prefix, TailRule tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  for (std::size_t j = 0; j < prefix_.size(); ++j) {
    require_weight(prefix_[j], "gamma_" + std::to_string(j + 1));
  }
  validate_tail(tail_);
}

double ProductWeights::gamma(std::size_t j) const {
  if (j == 0) throw InvalidArgument("weight indices start at 1");
  if (j <= prefix_.size()) return prefix_[j - 1];
  const std::size_t listed = prefix_.size();
  return std::visit(
      [&](const auto& rule) -> double {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ZeroTail>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, GeometricTail>) {
          const double base = listed == 0 ? 1.0 : prefix_.back();
          return base * std::pow(rule.ratio, static_cast<double>(j - listed));
        } else {
          return rule.scale * std::pow(static_cast<double>(j), -rule.exponent);
        }
      },
      tail_);
}

bool ProductWeights::non_increasing() const {
  for (std::size_t j = 1; j < prefix_.size(); ++j) {
    if (prefix_[j] > prefix_[j - 1]) return false;
  }
  if (!prefix_.empty() && gamma(prefix_.size() + 1) > prefix_.back()) return false;
  return true;
}

GeneralWeights::GeneralWeights(std::map<Subset, double> entries) : entries_(std::move(entries)) {
  for (const auto& [u, g] : entries_) {
    validate_subset(u, u.empty() ? 0 : u.back());
    require_weight(g, "gamma_{" + format_subset(u) + "}");
  }
}

double GeneralWeights::gamma(const Subset& u) const {
  const auto it = entries_.find(u);
  return it == entries_.end() ? 0.0 : it->second;
}

Weights Weights::unit(std::size_t s) {
  return ProductWeights(std::vector<double>(s, 1.0), ZeroTail{});
}

const ProductWeights& Weights::product() const {
  if (const auto* p = std::get_if<ProductWeights>(&model_)) return *p;
  throw InvalidArgument("product weights required");
}

const GeneralWeights& Weights::general() const {
  if (const auto* g = std::get_if<GeneralWeights>(&model_)) return *g;
  throw InvalidArgument("general weights required");
}

double gamma_of(const Weights& w, const Subset& u) {
  if (u.empty()) throw InvalidArgument("gamma_of: subset must be nonempty");
  if (!w.is_product()) return w.general().gamma(u);
  const ProductWeights& pw = w.product();
  double g = 1.0;
  for (std::size_t j : u) g *= pw.gamma(j);
  return g;
}

double gamma_tail_sum(const Weights& w, std::size_t k, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("gamma_tail_sum: t must be positive");
  const ProductWeights& pw = w.product();
  const auto& prefix = pw.prefix();
  const std::size_t listed = prefix.size();

  long double total = 0.0L;
  for (std::size_t j = prefix.size(); j > k; --j) {
    total += std::pow(static_cast<long double>(prefix[j - 1]), static_cast<long double>(t));
  }
  const std::size_t m = std::max(k, listed);
  total += std::visit(
      [&](const auto& rule) -> long double {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ZeroTail>) {
          return 0.0L;
        } else if constexpr (std::is_same_v<T, GeometricTail>) {
          const long double base = listed == 0 ? 1.0L : prefix.back();
          const long double rt = std::pow(static_cast<long double>(rule.ratio), (long double)t);
          // sum_{j > m} (base r^{j-K})^t
          return std::pow(base, (long double)t) *
                 std::pow(rt, static_cast<long double>(m + 1 - listed)) / (1.0L - rt);
        } else {
          const long double b = static_cast<long double>(rule.exponent) * t;
          if (b <= 1.0L) {
            throw DivergenceError("power-law weights: sum of gamma_j^t diverges (exponent * t = " +
                                  format_shortest(static_cast<double>(b)) + " <= 1)");
          }
          return std::pow(static_cast<long double>(rule.scale), (long double)t) *
                 zeta_tail(b, static_cast<long double>(m));
        }
      },
      pw.tail());
  return static_cast<double>(std::pow(total, 1.0L / t));
}

namespace {

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InvalidArgument("weights line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail(line, "bad number '" + tok + "'");
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0) {
    fail(line, "bad coordinate index '" + tok + "'");
  }
  return v;
}

}  // namespace

Weights parse_weights(std::string_view text) {
  enum class Mode { Unknown, Product, General } mode = Mode::Unknown;
  std::vector<double> prefix;
  std::map<Subset, double> entries;
  TailRule tail = ZeroTail{};
  bool tail_seen = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto toks = tokens_of(line);
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (mode == Mode::Unknown) {
      if (toks.size() == 1 && toks[0] == "product") {
        mode = Mode::Product;
      } else if (toks.size() == 1 && toks[0] == "general") {
        mode = Mode::General;
      } else {
        fail(line_no, "expected 'product' or 'general'");
      }
    } else if (tail_seen) {
      fail(line_no, "nothing may follow the tail line");
    } else if (mode == Mode::Product && toks[0] == "tail") {
      tail_seen = true;
      if (toks.size() == 2 && toks[1] == "zero") {
        tail = ZeroTail{};
      } else if (toks.size() == 3 && toks[1] == "geometric") {
        tail = GeometricTail{parse_number(toks[2], line_no)};
      } else if (toks.size() == 4 && toks[1] == "powerlaw") {
        tail = PowerLawTail{parse_number(toks[2], line_no), parse_number(toks[3], line_no)};
      } else {
        fail(line_no, "expected 'tail zero', 'tail geometric <r>' or 'tail powerlaw <a> <c>'");
      }
      try {
        validate_tail(tail);
      } catch (const InvalidArgument& e) {
        fail(line_no, e.what());
      }
    } else if (mode == Mode::Product) {
      if (toks.size() != 2) fail(line_no, "expected '<j> <gamma_j>'");
      const std::size_t j = parse_index(toks[0], line_no);
      if (j != prefix.size() + 1) {
        fail(line_no, "index " + toks[0] + " out of sequence (expected " +
                          std::to_string(prefix.size() + 1) + ")");
      }
      const double g = parse_number(toks[1], line_no);
      if (g < 0.0) fail(line_no, "negative weight");
      prefix.push_back(g);
    } else {
      if (toks.size() != 2) fail(line_no, "expected '<i1,i2,...> <gamma>'");
      Subset u;
      std::size_t start = 0;
      const std::string& list = toks[0];
      while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        u.push_back(parse_index(list.substr(start, comma - start), line_no));
        start = comma + 1;
      }
      for (std::size_t i = 1; i < u.size(); ++i) {
        if (u[i] <= u[i - 1]) fail(line_no, "indices must be strictly increasing");
      }
      const double g = parse_number(toks[1], line_no);
      if (g < 0.0) fail(line_no, "negative weight");
      if (!entries.emplace(std::move(u), g).second) fail(line_no, "duplicate subset");
    }
    if (eol == text.size()) break;
  }

  switch (mode) {
    case Mode::Product:
      return ProductWeights(std::move(prefix), tail);
    case Mode::General:
      return GeneralWeights(std::move(entries));
    case Mode::Unknown:
      break;
  }
  throw InvalidArgument("weights: empty input (expected 'product' or 'general')");
}

std::string serialize_weights(const Weights& w) {
  std::string out;
  if (w.is_product()) {
    const auto& pw = w.product();
    out += "product\n";
    for (std::size_t j = 0; j < pw.prefix().size(); ++j) {
      out += std::to_string(j + 1) + " " + format_sig17(pw.prefix()[j]) + "\n";
    }
    std::visit(
        [&](const auto& rule) {
          using T = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<T, ZeroTail>) {
            out += "tail zero\n";
          } else if constexpr (std::is_same_v<T, GeometricTail>) {
            out += "tail geometric " + format_sig17(rule.ratio) + "\n";
          } else {
            out += "tail powerlaw " + format_sig17(rule.exponent) + " " + format_sig17(rule.scale) +
                   "\n";
          }
        },
        pw.tail());
  } else {
    out += "general\n";
    for (const auto& [u, g] : w.general().entries()) {
      out += format_subset(u) + " " + format_sig17(g) + "\n";
    }
  }
  return out;
}

Weights load_weights_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open weight file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weights(buf.str());
}

}  // namespace psets
