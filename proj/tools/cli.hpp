#pragma once

// The `crossmat` command-line tool. `run` takes the argument list (without
// the program name) and output streams so tests can drive it in-process.
//
// Exit codes: 0 success, 1 domain error (singular, not positive definite,
// zero pivot, ...), 2 usage, I/O or parse error.

#include <algorithm>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bench.hpp"
#include "crossmat/crossmat.hpp"

namespace crossmat::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::CenterConflict:
    case ErrorKind::NotSquare:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::MalformedForm:
      return usage_error;
    default:
      return domain_error;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string file;
  bool report = false;
  bool sorted = false;
  std::string rhs;
  std::string func;
  std::optional<double> power;
  double tol = 0;
  std::string from_dense;
  bool to_dense = false;
  std::vector<std::size_t> sizes{1024, 4096, 16384, 65536};
  std::vector<std::string> ops;
  int repeats = 5;
  std::size_t dense_max = 2048;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes either plain results or key=value report lines.
class Printer {
 public:
  Printer(std::ostream& out, bool report) : out_(out), report_(report) {}

  bool report() const { return report_; }

  void header(const Options& o, std::size_t n, bool complex) {
    if (!report_) return;
    out_ << "command=" << o.command << "\n";
    out_ << "order=" << n << "\n";
    out_ << "scalar=" << (complex ? "complex" : "real") << "\n";
  }

  void value(const std::string& key, const std::string& v) {
    if (report_) {
      out_ << key << "=" << v << "\n";
    } else {
      out_ << v << "\n";
    }
  }

  template <Scalar T>
  void scalar(const std::string& key, const T& v) {
    value(key, xmat::format_scalar(v));
  }

  template <typename V>
  void vector(const std::string& key, const std::vector<V>& v) {
    value(key, xmat::format_vector(v));
  }

  /// A matrix result. `label` is printed as a "# label" comment line when
  /// a command emits several matrices.
  template <Scalar T>
  void matrix(const std::string& key, const CrossMatrix<T>& x, bool labelled) {
    if (report_) {
      out_ << key << ".diag=" << xmat::format_vector(std::vector<T>(x.diag().begin(), x.diag().end()))
           << "\n";
      out_ << key << ".anti=" << xmat::format_vector(std::vector<T>(x.anti().begin(), x.anti().end()))
           << "\n";
      return;
    }
    if (labelled) out_ << "# " << key << "\n";
    out_ << xmat::serialize(x);
  }

  /// A vector printed under a "# label" line in multi-result output.
  template <typename V>
  void labelled_vector(const std::string& key, const std::vector<V>& v) {
    if (!report_) out_ << "# " << key << "\n";
    vector(key, v);
  }

  void kv(const std::string& key, const std::string& v) { out_ << key << "=" << v << "\n"; }

 private:
  std::ostream& out_;
  bool report_;
};

// Complex values print as real numbers when every imaginary part is zero
// and the input was real.
template <Scalar T>
std::vector<std::string> format_values(const std::vector<complex_t<T>>& v) {
  bool real = !is_complex_v<T>;
  if (real)
    for (const auto& z : v)
      if (z.imag() != 0) real = false;
  std::vector<std::string> out;
  for (const auto& z : v) out.push_back(real ? xmat::format_scalar(z.real()) : xmat::format_scalar(z));
  return out;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += v[i];
  }
  return s;
}

inline std::string join_indices(const std::vector<std::size_t>& v) {
  std::vector<std::string> s;
  for (auto i : v) s.push_back(std::to_string(i + 1));
  return join(s);
}

template <Scalar T>
CrossMatrix<T> apply_named(const CrossMatrix<T>& x, const Options& o) {
  if (o.func == "exp") return expm(x);
  if (o.func == "log") return logm(x);
  if (o.func == "sqrt") return sqrtm(x);
  if (o.func == "pow") {
    if (!o.power) throw UsageError("--func pow needs --power");
    return powm(x, *o.power);
  }
  throw UsageError("unknown function '" + o.func + "' (expected exp, log, sqrt or pow)");
}

template <Scalar T>
void info(const CrossMatrix<T>& x, Printer& pr) {
  const std::size_t n = x.order();
  pr.kv("order", std::to_string(n));
  pr.kv("scalar", is_complex_v<T> ? "complex" : "real");
  pr.kv("pairs", std::to_string(x.pairs()));
  pr.kv("center", x.has_center() ? xmat::format_scalar(x.center()) : "none");
  pr.kv("det", xmat::format_scalar(det(x)));
  pr.kv("frobenius", xmat::format_scalar(frobenius(x)));
  pr.kv("max_abs", xmat::format_scalar(max_abs(x)));
  pr.kv("hermitian", is_hermitian(x) ? "true" : "false");
  std::string singular = "none";
  try {
    crossmat::detail::require_nonsingular(x);
  } catch (const Error& e) {
    singular = e.pair() ? std::to_string(*e.pair()) : "yes";
  }
  pr.kv("singular_pair", singular);
}

template <Scalar T>
int execute(const Options& o, const std::string& text, std::ostream& out) {
  Printer pr(out, o.report);
  const bool complex = is_complex_v<T>;

  if (o.command == "convert" && !o.from_dense.empty()) {
    const auto dense = xmat::parse_dense<T>(read_file(o.from_dense));
    const auto x = from_dense(dense, o.tol);
    pr.header(o, x.order(), complex);
    pr.matrix("result", x, false);
    return ok;
  }

  const CrossMatrix<T> x = xmat::parse<T>(text);
  const std::size_t n = x.order();

  if (o.command == "info") {
    if (o.report) out << "command=info\n";
    info(x, pr);
    return ok;
  }
  pr.header(o, n, complex);

  if (o.command == "det") {
    pr.scalar("det", det(x));
  } else if (o.command == "inv") {
    pr.matrix("inverse", inverse(x), false);
  } else if (o.command == "solve") {
    const auto b = xmat::parse_vector<T>(read_file(o.rhs));
    pr.vector("solution", solve(x, b));
  } else if (o.command == "eig") {
    auto ev = eigenvalues_complex(x);
    if (o.sorted) {
      const auto s = sorted_by_magnitude(ev);
      std::vector<std::size_t> idx;
      ev.clear();
      for (const auto& [v, i] : s) {
        ev.push_back(v);
        idx.push_back(i);
      }
      pr.value("eigenvalues", join(format_values<T>(ev)));
      if (pr.report()) pr.kv("eigenvalues.index", join_indices(idx));
    } else {
      pr.value("eigenvalues", join(format_values<T>(ev)));
    }
  } else if (o.command == "lu") {
    const auto f = lu(x);
    pr.matrix("L", f.L, true);
    pr.matrix("U", f.U, true);
  } else if (o.command == "chol") {
    pr.matrix("R", cholesky(x), false);
  } else if (o.command == "qr") {
    const auto f = qr(x);
    pr.matrix("Q", f.Q, true);
    pr.matrix("R", f.R, true);
  } else if (o.command == "svd") {
    const auto f = svd(x);
    pr.matrix("U", f.U, true);
    if (o.sorted) {
      std::vector<real_t<T>> s;
      std::vector<std::size_t> idx;
      for (const auto& [v, i] : sorted_singular_values(f)) {
        s.push_back(v);
        idx.push_back(i);
      }
      pr.labelled_vector("S", s);
      if (pr.report()) pr.kv("S.index", join_indices(idx));
    } else {
      pr.labelled_vector("S", f.S);
    }
    pr.matrix("V", f.V, true);
  } else if (o.command == "polar") {
    const auto f = polar(x);
    pr.matrix("U", f.U, true);
    pr.matrix("H", f.H, true);
  } else if (o.command == "spectral") {
    const auto f = spectral(x);
    pr.matrix("V", f.V, true);
    pr.labelled_vector("D", f.D);
  } else if (o.command == "apply") {
    pr.matrix("result", apply_named(x, o), false);
  } else if (o.command == "convert") {
    if (!o.to_dense) throw UsageError("convert needs --from-dense <file> or --to-dense");
    if (o.report) {
      pr.matrix("result", x, false);
    } else {
      out << xmat::format_dense(to_dense(x));
    }
  } else {
    throw UsageError("unknown command '" + o.command + "'");
  }
  return ok;
}

inline std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", s);
  return buf;
}

inline int bench_command(const Options& o, std::ostream& out) {
  if (std::all_of(o.ops.begin(), o.ops.end(), [](const std::string& op) { return op.empty(); }))
    throw UsageError("bench needs at least one op (--ops det,inv,...)");
  for (const auto& op : o.ops)
    if (!bench::is_known_op(op)) throw UsageError("unknown bench op '" + op + "'");
  if (o.sizes.empty()) throw UsageError("bench needs at least one size");
  for (std::size_t i = 0; i < o.sizes.size(); ++i) {
    if (o.sizes[i] == 0) throw UsageError("bench sizes must be positive");
    if (i > 0 && o.sizes[i] <= o.sizes[i - 1]) throw UsageError("bench sizes must be ascending");
  }
  if (o.repeats < 1) throw UsageError("--repeats must be at least 1");

  bench::Config cfg;
  cfg.sizes = o.sizes;
  cfg.ops = o.ops;
  cfg.repeats = o.repeats;
  cfg.dense_max = o.dense_max;
  const auto rep = bench::run(cfg);
  const auto mi = bench::machine_info();

  if (o.report) {
    out << "command=bench\n";
    out << "machine.cpu=" << mi.cpu << "\n";
    out << "machine.threads=" << mi.threads << "\n";
    out << "machine.compiler=" << mi.compiler << "\n";
    for (const auto& r : rep.rows) {
      const std::string key = "bench." + r.op + "." + std::to_string(r.n);
      out << key << ".structured_s=" << format_seconds(r.structured) << "\n";
      out << key << ".dense_s=" << (r.dense ? format_seconds(*r.dense) : "skipped") << "\n";
    }
    for (const auto& s : rep.slopes) out << "slope." << s.op << "=" << std::fixed << std::setprecision(3) << s.slope << std::defaultfloat << "\n";
    return ok;
  }
  out << "# cpu: " << mi.cpu << "\n# threads: " << mi.threads << "\n# compiler: " << mi.compiler
      << "\n";
  out << std::left << std::setw(7) << "op" << std::setw(10) << "n" << std::setw(14) << "structured_s"
      << std::setw(14) << "dense_s" << "ratio\n";
  for (const auto& r : rep.rows) {
    out << std::setw(7) << r.op << std::setw(10) << r.n << std::setw(14) << format_seconds(r.structured)
        << std::setw(14) << (r.dense ? format_seconds(*r.dense) : "skipped")
        << (r.dense ? format_seconds(*r.dense / r.structured) : "-") << "\n";
  }
  for (const auto& s : rep.slopes)
    out << "# slope " << s.op << " " << std::fixed << std::setprecision(3) << s.slope
        << std::defaultfloat << "\n";
  return ok;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Structured linear algebra on cross (X-shaped) matrices", "crossmat"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool file_required) {
    auto* f = sub->add_option("file", o.file, "XMAT input file ('-' for stdin)");
    if (file_required) f->required();
    sub->add_flag("--report", o.report, "Print key=value lines");
    sub->add_flag("--complex", "Treat the input as complex even if written with real entries");
  };

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd simple[] = {
      {"info", "Summary of a matrix"},
      {"det", "Determinant"},
      {"inv", "Inverse"},
      {"lu", "LU factorization without pivoting"},
      {"chol", "Cholesky factor R with X = R* R"},
      {"qr", "Givens QR factorization"},
      {"polar", "Polar decomposition X = U H"},
      {"spectral", "Eigenvectors V and eigenvalues D with X V = V diag(D)"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : simple) {
    auto* s = app.add_subcommand(c.name, c.help);
    add_common(s, true);
    subs.push_back(s);
  }
  auto* solve_cmd = app.add_subcommand("solve", "Solve X v = b");
  add_common(solve_cmd, true);
  solve_cmd->add_option("--rhs", o.rhs, "Right-hand side vector file")->required();

  auto* eig_cmd = app.add_subcommand("eig", "Eigenvalues, pair-aligned");
  add_common(eig_cmd, true);
  eig_cmd->add_flag("--sorted", o.sorted, "Sort by descending magnitude");

  auto* svd_cmd = app.add_subcommand("svd", "Singular value decomposition");
  add_common(svd_cmd, true);
  svd_cmd->add_flag("--sorted", o.sorted, "Print singular values in descending order");

  auto* apply_cmd = app.add_subcommand("apply", "Matrix function f(X)");
  add_common(apply_cmd, true);
  apply_cmd->add_option("--func", o.func, "exp, log, sqrt or pow")->required();
  apply_cmd->add_option("--power", o.power, "Exponent for --func pow");

  auto* convert_cmd = app.add_subcommand("convert", "Convert between dense text and XMAT");
  add_common(convert_cmd, false);
  convert_cmd->add_option("--from-dense", o.from_dense, "Dense input, one row per line");
  convert_cmd->add_option("--tol", o.tol, "Largest off-cross magnitude to drop")
      ->check(CLI::NonNegativeNumber);
  convert_cmd->add_flag("--to-dense", o.to_dense, "Print the XMAT input as dense rows");

  auto* bench_cmd = app.add_subcommand("bench", "Time structured operations against dense ones");
  bench_cmd->add_option("--sizes", o.sizes, "Ascending matrix orders")->delimiter(',');
  bench_cmd->add_option("--ops", o.ops, "Operations: det, inv, mul, solve, eig, svd")
      ->delimiter(',');
  bench_cmd->add_option("--repeats", o.repeats, "Samples per timing (minimum is reported)");
  bench_cmd->add_option("--dense-max", o.dense_max, "Largest order timed densely");
  bench_cmd->add_flag("--report", o.report, "Print key=value lines");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'crossmat --help' for usage\n";
    return usage_error;
  }

  CLI::App* chosen = app.get_subcommands().front();
  o.command = chosen->get_name();
  const bool force_complex = chosen->get_option_no_throw("--complex") &&
                             chosen->get_option("--complex")->count() > 0;

  try {
    if (o.command == "bench") return detail::bench_command(o, out);

    std::string text, probe;
    if (o.command == "convert" && !o.from_dense.empty()) {
      if (!o.file.empty()) throw UsageError("convert takes either a file or --from-dense, not both");
      probe = detail::read_file(o.from_dense);
    } else {
      if (o.file.empty()) throw UsageError(o.command + " needs an input file");
      text = detail::read_file(o.file);
      probe = text;
    }
    bool complex = force_complex || xmat::has_complex_entries(probe);
    if (!o.rhs.empty() && xmat::has_complex_entries(detail::read_file(o.rhs))) complex = true;

    if (complex) return detail::execute<std::complex<double>>(o, text, out);
    return detail::execute<double>(o, text, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace crossmat::cli
