#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "psets/bounds.hpp"
#include "psets/discrepancy.hpp"
#include "psets/error.hpp"
#include "psets/expsum.hpp"
#include "psets/format.hpp"
#include "psets/limits.hpp"
#include "psets/pointset.hpp"
#include "psets/qmc.hpp"
#include "psets/weights.hpp"

namespace psets::cli {

namespace {

struct Flags {
  std::string kind = "P";
  std::uint64_t p = 0;
  std::size_t s = 0;
  bool exact = false;
  std::string weights;
  std::string h;
  int mod_power = 1;
  bool double_sum = false;
  int lemma = 3;
  std::uint64_t cap = 10'000'000;
  std::uint64_t seed = 0;
  std::string thm;
  std::optional<double> delta;
  std::optional<double> t;
  double eps = 0.0;
  std::string primes;
  std::string coeffs;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    T v{};
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw InvalidArgument(std::string("bad entry '") + item + "' in --" + what);
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string join_ints(std::span<const std::int64_t> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_doubles(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += format_shortest(v[i]);
  }
  return out;
}

std::string num(double v) { return format_shortest(v); }

const char* side_name(BoxSide side) { return side == BoxSide::Open ? "open" : "closed"; }

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::ostream& out)
      : args_(args), out_(out), limits_(Limits::from_environment()) {}

  void metadata(bool natural_log = false) {
    out_ << "# command: psets";
    for (const auto& a : args_) out_ << ' ' << a;
    out_ << "\n# version: " << kVersion << '\n';
    out_ << "# caps: max_pointset_entries=" << limits_.max_pointset_entries
         << " max_corner_ops=" << limits_.max_corner_ops
         << " max_frequency_vectors=" << limits_.max_frequency_vectors
         << " max_subset_dim=" << limits_.max_subset_dim << '\n';
    if (natural_log) out_ << "# log: natural (base e) throughout\n";
  }

  void kv(const std::string& key, const std::string& value) { out_ << key << '=' << value << '\n'; }

  RationalPointSet points(const Flags& f) const {
    return generate(parse_kind(f.kind), Prime(f.p), f.s, limits_);
  }

  Weights weights(const Flags& f) const {
    if (f.weights.empty()) throw InvalidArgument("--weights is required");
    return load_weights_file(f.weights);
  }

  int gen(const Flags& f) {
    const auto ps = points(f);
    metadata();
    for (std::size_t j = 1; j <= ps.dim(); ++j) out_ << (j > 1 ? "," : "") << 'x' << j;
    out_ << '\n';
    const std::string den = "/" + std::to_string(ps.modulus());
    for (std::size_t n = 0; n < ps.size(); ++n) {
      for (std::size_t j = 0; j < ps.dim(); ++j) {
        if (j > 0) out_ << ',';
        if (f.exact) {
          out_ << ps.numerator(n, j) << den;
        } else {
          out_ << format_sig17(ps.coordinate(n, j));
        }
      }
      out_ << '\n';
    }
    return kOk;
  }

  int disc(const Flags& f) {
    const auto ps = points(f);
    const auto r = star_discrepancy_exact(ps, limits_);
    metadata();
    kv("dstar", num(r.value));
    kv("exact", r.exact ? "true" : "false");
    if (r.exact) kv("fraction", r.fraction());
    kv("side", side_name(r.side));
    std::string corner;
    for (std::size_t j = 0; j < r.witness.size(); ++j) {
      corner += (j > 0 ? "," : "") + std::to_string(r.witness[j]) + "/" + std::to_string(r.modulus);
    }
    kv("witness", corner);
    return kOk;
  }

  int wdisc(const Flags& f) {
    const auto ps = points(f);
    const auto w = weights(f);
    const auto r = weighted_star_discrepancy_exact(ps, w, limits_);
    metadata();
    kv("wdstar", num(r.value));
    kv("subset", format_subset(r.subset));
    kv("projected_dstar", num(r.projected.value));
    kv("side", side_name(r.projected.side));
    kv("witness", join_doubles(r.witness_box(ps.dim())));
    return kOk;
  }

  int sum(const Flags& f) {
    const Prime p(f.p);
    const auto h = parse_list<std::int64_t>(f.h, "h");
    if (h.size() != f.s) throw InvalidArgument("--h must have exactly s entries");
    if (f.mod_power != 1 && f.mod_power != 2) throw InvalidArgument("--mod-power must be 1 or 2");
    const ExpSumValue v = f.double_sum ? hua_wang_double_sum(h, p) : korobov_sum(h, p, f.mod_power);
    metadata();
    kv("family", f.double_sum ? "double" : (f.mod_power == 1 ? "mod_p" : "mod_p2"));
    kv("h", join_ints(h));
    kv("re", num(v.value.real()));
    kv("im", num(v.value.imag()));
    kv("magnitude", num(v.magnitude));
    kv("terms", std::to_string(v.terms));
    return kOk;
  }

  int check_weil(const Flags& f) {
    const Prime p(f.p);
    const SumFamily family = sum_family_from_label(f.lemma);
    if (f.s == 0) throw InvalidArgument("--s must be >= 1");
    const auto r = weil_bound_check(family, p, f.s, f.cap, f.seed);
    metadata();
    kv("lemma", std::to_string(f.lemma));
    kv("p", std::to_string(r.p));
    kv("s", std::to_string(r.s));
    kv("modulus", std::to_string(r.modulus));
    kv("bound", num(r.bound));
    kv("mode", r.exhaustive ? "exhaustive" : "sampled");
    kv("vectors", std::to_string(r.vectors_checked));
    kv("violations", std::to_string(r.violations));
    kv("max_magnitude", num(r.max_magnitude));
    kv("max_ratio", format_fixed(r.max_ratio, 6));
    kv("worst_h", join_ints(r.worst_h));
    kv("status", r.violations == 0 ? "PASS" : "FAIL");
    return r.violations == 0 ? kOk : kInvariant;
  }

  int bound(const Flags& f) {
    const PSetKind kind = parse_kind(f.kind);
    const Prime p(f.p);
    if (f.s == 0) throw InvalidArgument("--s must be >= 1");
    std::vector<std::pair<std::string, std::string>> rows;
    double value = 0.0;
    if (f.thm == "1") {
      const auto r = explicit_bound(kind, p, f.s, weights(f), limits_);
      value = r.value;
      rows.emplace_back("maximizing_subset", format_subset(r.maximizing_subset));
      for (const auto& [name, v] : r.constants) rows.emplace_back(name, num(v));
    } else if (f.thm == "2") {
      if (!f.delta) throw InvalidArgument("--delta is required for --thm 2");
      const auto params = envelope_params(weights(f), *f.delta, f.t);
      value = envelope_bound(kind, p, f.s, params);
      rows.emplace_back("delta", num(params.delta));
      if (params.t) rows.emplace_back("t", num(*params.t));
      rows.emplace_back("cutoff", std::to_string(params.cutoff));
      rows.emplace_back("threshold", num(params.threshold));
      rows.emplace_back("cutoff_tail", num(params.cutoff_tail));
      if (params.cutoff > 0) rows.emplace_back("previous_tail", num(params.previous_tail));
      rows.emplace_back("gamma_total", num(params.gamma_total));
      rows.emplace_back("gamma_first", num(params.gamma_first));
      rows.emplace_back("constant", num(params.constant(kind)));
      rows.emplace_back("exponent", num(bound_shape(kind).p_exponent - params.delta));
      rows.emplace_back("certified", params.certified ? "true" : "false");
    } else if (f.thm == "lemma1") {
      const auto ps = points(f);
      value = niederreiter_rhs(ps, limits_);
      rows.emplace_back("dimension_term", num(static_cast<double>(f.s) / static_cast<double>(ps.modulus())));
      rows.emplace_back("frequency_sum", num(frequency_sum(ps, limits_)));
    } else if (f.thm == "lemma2") {
      const auto ps = points(f);
      const auto r = weighted_niederreiter_rhs(ps, weights(f), limits_);
      value = r.value;
      rows.emplace_back("dimension_term", num(r.dimension_term));
      rows.emplace_back("dimension_subset", format_subset(r.dimension_subset));
      rows.emplace_back("sum_term", num(r.sum_term));
      rows.emplace_back("sum_subset", format_subset(r.sum_subset));
    } else {
      throw InvalidArgument("--thm must be one of 1, 2, lemma1, lemma2");
    }
    metadata(true);
    kv("thm", f.thm);
    kv("kind", std::string(kind_letter(kind)));
    kv("p", std::to_string(p.value()));
    kv("s", std::to_string(f.s));
    kv("value", num(value));
    for (const auto& [k, v] : rows) kv(k, v);
    out_ << "thm,kind,p,s,value\n";
    out_ << f.thm << ',' << kind_letter(kind) << ',' << p.value() << ',' << f.s << ',' << num(value) << '\n';
    return kOk;
  }

  int nmin(const Flags& f) {
    const PSetKind kind = parse_kind(f.kind);
    if (!f.delta) throw InvalidArgument("--delta is required");
    const auto r = n_min_from_bound(kind, f.eps, f.s, weights(f), *f.delta, f.t);
    metadata(true);
    kv("m", r.m);
    kv("p", r.p);
    kv("p_certain", r.p_certain ? "true" : "probable");
    kv("points", r.points);
    kv("constant", num(r.constant));
    kv("exponent", num(r.exponent));
    kv("achieved", num(r.achieved));
    return kOk;
  }

  int integrate(const Flags& f) {
    const PSetKind kind = parse_kind(f.kind);
    std::vector<Prime> primes;
    if (!f.primes.empty()) {
      for (auto v : parse_list<std::uint64_t>(f.primes, "primes")) primes.emplace_back(v);
    }
    const ProductIntegrand fn(parse_list<double>(f.coeffs, "coeffs"));
    const auto rows = convergence_table(kind, f.s, fn, primes, limits_);
    metadata();
    out_ << "# variation=" << num(hk_variation(fn)) << '\n';
    out_ << "p,N,estimate,error,dstar,kh_bound\n";
    for (const auto& r : rows) {
      out_ << r.p << ',' << r.points << ',' << format_sig17(r.estimate) << ',' << format_sig17(r.error) << ','
           << (r.dstar ? format_sig17(*r.dstar) : std::string()) << ',' << format_sig17(r.kh_bound) << '\n';
    }
    return kOk;
  }

  int chain(const Flags& f) {
    const PSetKind kind = parse_kind(f.kind);
    const Prime p(f.p);
    if (!f.delta) throw InvalidArgument("--delta is required");
    const Weights w = weights(f);
    const auto params = envelope_params(w, *f.delta, f.t);
    const auto ps = points(f);
    const double exact = weighted_star_discrepancy_exact(ps, w, limits_).value;
    const double lemma2 = weighted_niederreiter_rhs(ps, w, limits_).value;
    const double thm1 = explicit_bound(kind, p, f.s, w, limits_).value;
    const double thm2 = envelope_bound(kind, p, f.s, params);
    const bool pass = exact <= lemma2 && lemma2 <= thm1 && thm1 <= thm2;
    metadata(true);
    out_ << "kind,p,s,exact,lemma2,thm1,thm2,status\n";
    out_ << kind_letter(kind) << ',' << p.value() << ',' << f.s << ',' << format_sig17(exact) << ','
         << format_sig17(lemma2) << ',' << format_sig17(thm1) << ',' << format_sig17(thm2) << ','
         << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kInvariant;
  }

 private:
  const std::vector<std::string>& args_;
  std::ostream& out_;
  Limits limits_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-set construction, discrepancy and bound evaluation", "psets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;
  int (Runner::*action)(const Flags&) = nullptr;

  const auto kind_opt = [&](CLI::App* sub) {
    sub->add_option("--kind", f.kind, "P, Q or R")->required();
  };
  const auto point_opts = [&](CLI::App* sub) {
    kind_opt(sub);
    sub->add_option("--p", f.p, "prime")->required();
    sub->add_option("--s", f.s, "dimension")->required();
  };

  auto* gen = app.add_subcommand("gen", "emit a p-set as CSV");
  point_opts(gen);
  gen->add_flag("--exact", f.exact, "write coordinates as num/den");
  gen->callback([&] { action = &Runner::gen; });

  auto* disc = app.add_subcommand("disc", "exact star discrepancy");
  point_opts(disc);
  disc->callback([&] { action = &Runner::disc; });

  auto* wdisc = app.add_subcommand("wdisc", "exact weighted star discrepancy");
  point_opts(wdisc);
  wdisc->add_option("--weights", f.weights, "weight file")->required();
  wdisc->callback([&] { action = &Runner::wdisc; });

  auto* sum = app.add_subcommand("sum", "exponential sum");
  sum->set_help_flag("--help", "print this help");  // -h would clash with --h
  sum->add_option("--p", f.p, "prime")->required();
  sum->add_option("--s", f.s, "number of frequencies")->required();
  sum->add_option("--h", f.h, "comma-separated h_1..h_s")->required()->allow_extra_args(false);
  sum->add_option("--mod-power", f.mod_power, "1 for mod p, 2 for mod p^2");
  sum->add_flag("--double", f.double_sum, "double sum over a and k");
  sum->callback([&] { action = &Runner::sum; });

  auto* weil = app.add_subcommand("check-weil", "exhaustive bound check for the sum lemmas");
  weil->add_option("--p", f.p, "prime")->required();
  weil->add_option("--s", f.s, "dimension")->required();
  weil->add_option("--lemma", f.lemma, "3, 5 or 6")->required();
  weil->add_option("--cap", f.cap, "largest exhaustive enumeration");
  weil->add_option("--seed", f.seed, "seed for sampling above the cap");
  weil->callback([&] { action = &Runner::check_weil; });

  auto* bound = app.add_subcommand("bound", "evaluate a bound");
  bound->add_option("--thm", f.thm, "1, 2, lemma1 or lemma2")->required();
  point_opts(bound);
  bound->add_option("--weights", f.weights, "weight file");
  bound->add_option("--delta", f.delta, "delta in (0, 1/2)");
  bound->add_option("--t", f.t, "power-summability exponent");
  bound->callback([&] { action = &Runner::bound; });

  auto* nmin = app.add_subcommand("nmin", "points needed for a target discrepancy");
  kind_opt(nmin);
  nmin->add_option("--eps", f.eps, "target in (0, 1)")->required();
  nmin->add_option("--s", f.s, "dimension")->required();
  nmin->add_option("--weights", f.weights, "weight file")->required();
  nmin->add_option("--delta", f.delta, "delta in (0, 1/2)")->required();
  nmin->add_option("--t", f.t, "power-summability exponent");
  nmin->callback([&] { action = &Runner::nmin; });

  auto* integrate = app.add_subcommand("integrate", "QMC convergence table");
  kind_opt(integrate);
  integrate->add_option("--s", f.s, "dimension")->required();
  integrate->add_option("--primes", f.primes, "comma-separated primes")->required();
  integrate->add_option("--coeffs", f.coeffs, "comma-separated c_1..c_s")->required();
  integrate->callback([&] { action = &Runner::integrate; });

  auto* chain = app.add_subcommand("chain", "check exact <= lemma2 <= thm1 <= thm2");
  point_opts(chain);
  chain->add_option("--weights", f.weights, "weight file")->required();
  chain->add_option("--delta", f.delta, "delta in (0, 1/2)")->required();
  chain->add_option("--t", f.t, "power-summability exponent");
  chain->callback([&] { action = &Runner::chain; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  // Build the whole output before writing so a failure leaves stdout empty.
  std::ostringstream buffer;
  Runner runner(args, buffer);
  try {
    const int code = (runner.*action)(f);
    out << buffer.str();
    return code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
}

}  // namespace psets::cli
