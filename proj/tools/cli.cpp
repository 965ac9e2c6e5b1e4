#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "finite_hgf/chars.hpp"
#include "finite_hgf/error.hpp"
#include "finite_hgf/hgf.hpp"
#include "finite_hgf/sums.hpp"
#include "finite_hgf/verify.hpp"

namespace finite_hgf::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct FieldOptions {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  unsigned f = 1;
  std::string modulus;
};

struct Config {
  FieldOptions field;
  std::uint32_t psi_shift = 1;
  std::string format = "json";
  std::string num, den;
  std::string lambda;
  std::string chi = "0", chi2 = "0";
  std::string alpha = "0", beta = "0", gamma = "0", gamma2 = "0";
  std::string x, y;
  // verify
  std::string qs;
  std::string ids = "all";
  std::string mode = "auto";
  std::uint64_t n = 2000;
  std::uint64_t seed = 42;
  std::string out_path;
  int threads = 0;
  bool timings = false;
  bool mutate = false;
  bool list = false;
};

std::uint32_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  if (text.empty()) throw Error(ErrorCode::ParseError, std::string(what) + " is empty");
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9' || v > (1u << 31)) {
      throw Error(ErrorCode::ParseError,
                  std::string(what) + ": invalid number '" + std::string(text) + "' at position " + std::to_string(i));
    }
    v = v * 10 + std::uint64_t(text[i] - '0');
  }
  return std::uint32_t(v);
}

std::vector<std::uint32_t> parse_uint_list(std::string_view text, std::string_view what) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(parse_uint(text.substr(start, end - start), what));
    start = end + 1;
  }
  return out;
}

FieldHandle resolve_field(const FieldOptions& o) {
  std::optional<std::vector<std::uint32_t>> modulus;
  if (!o.modulus.empty()) modulus = parse_uint_list(o.modulus, "--modulus");
  if (o.q != 0) {
    const FieldHandle k = FiniteField::from_order(o.q);
    if (o.p != 0 && o.p != k->p()) throw Error(ErrorCode::InvalidField, "--p disagrees with --q");
    return modulus ? FiniteField::construct(k->p(), k->f(), modulus) : k;
  }
  if (o.p == 0) throw Error(ErrorCode::InvalidField, "give --q, or --p with optional --f");
  return FiniteField::construct(o.p, o.f, modulus);
}

/// Element code in [0, q), or a negative integer read in the prime field.
FieldElem parse_element(const FiniteField& k, std::string_view text, std::string_view what) {
  if (!text.empty() && text[0] == '-') {
    const std::uint32_t v = parse_uint(text.substr(1), what);
    return k.from_int(-std::int64_t(v));
  }
  const std::uint32_t v = parse_uint(text, what);
  if (v >= k.q()) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": element code " + std::to_string(v) + " is not below q");
  }
  return k.element(v);
}

std::string approx_text(const CycloNum& v) {
  const auto z = v.approx();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_value(std::ostream& out, const std::string& format, const CycloNum& value, ojson context) {
  const CycloNum v = value.minimal();
  if (format == "text") {
    out << "value: " << v.to_string() << "\n";
    out << "approx (approximate): " << approx_text(v) << "\n";
  } else if (format == "csv") {
    out << "value\n" << csv_quote(v.to_json().dump()) << "\n";
  } else {
    ojson doc;
    doc["value"] = v.to_json();
    for (auto& [key, val] : context.items()) doc[key] = val;
    out << doc.dump(2) << "\n";
  }
}

void apply_threads(int threads) {
  if (threads > 0) {
    omp_set_num_threads(threads);
    return;
  }
  if (const char* env = std::getenv("FINITE_HGF_THREADS"); env != nullptr && *env != '\0') {
    const std::uint32_t n = parse_uint(env, "FINITE_HGF_THREADS");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "FINITE_HGF_THREADS must be positive");
    omp_set_num_threads(int(n));
  }
}

int cmd_field_info(const Config& c, std::ostream& out) {
  const FieldHandle k = resolve_field(c.field);
  const nlohmann::json d = k->descriptor();
  if (c.format == "text") {
    for (const auto& key : {"p", "f", "q", "modulus", "generator"}) out << key << ": " << d[key].dump() << "\n";
  } else if (c.format == "csv") {
    out << "p,f,q,modulus,generator\n"
        << d["p"] << "," << d["f"] << "," << d["q"] << "," << csv_quote(d["modulus"].dump()) << "," << d["generator"]
        << "\n";
  } else {
    ojson doc;
    for (const auto& key : {"p", "f", "q", "modulus", "generator"}) doc[key] = d[key];
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

FieldElem psi_shift(const FiniteField& k, const Config& c) {
  if (c.psi_shift >= k.q()) throw Error(ErrorCode::InvalidArgument, "--psi-shift must be an element code below q");
  return k.element(c.psi_shift);
}

HgfSpec make_spec(const FiniteField& k, const Config& c) {
  return HgfSpec(parse_paramset(k, c.num), parse_paramset(k, c.den), AddChar(k, psi_shift(k, c)));
}

ojson field_json(const FiniteField& k) {
  const nlohmann::json d = k.descriptor();
  ojson out;
  for (const auto& key : {"p", "f", "q", "modulus", "generator"}) out[key] = d[key];
  return out;
}

int cmd_eval(const Config& c, std::ostream& out) {
  const FieldHandle k = resolve_field(c.field);
  const HgfSpec spec = make_spec(*k, c);
  const FieldElem lambda = parse_element(*k, c.lambda, "--lambda");
  ojson ctx;
  ctx["field"] = field_json(*k);
  ctx["spec"] = spec.to_json();
  print_value(out, c.format, hgf_eval(spec, lambda), std::move(ctx));
  return kExitOk;
}

int cmd_gauss(const Config& c, std::ostream& out) {
  const FieldHandle k = resolve_field(c.field);
  const MultChar chi = parse_char(*k, c.chi);
  const AddChar psi(*k, psi_shift(*k, c));
  ojson ctx;
  ctx["field"] = field_json(*k);
  ctx["chi"] = to_string(chi);
  ctx["psi_shift"] = c.psi_shift;
  print_value(out, c.format, gauss(chi, psi), std::move(ctx));
  return kExitOk;
}

int cmd_jacobi(const Config& c, std::ostream& out) {
  const FieldHandle k = resolve_field(c.field);
  const MultChar chi = parse_char(*k, c.chi), chi2 = parse_char(*k, c.chi2);
  ojson ctx;
  ctx["field"] = field_json(*k);
  ctx["chi"] = to_string(chi);
  ctx["chi2"] = to_string(chi2);
  print_value(out, c.format, jacobi(chi, chi2), std::move(ctx));
  return kExitOk;
}

int cmd_f4(const Config& c, std::ostream& out) {
  const FieldHandle k = resolve_field(c.field);
  const MultChar a = parse_char(*k, c.alpha), b = parse_char(*k, c.beta);
  const MultChar g = parse_char(*k, c.gamma), g2 = parse_char(*k, c.gamma2);
  const FieldElem x = parse_element(*k, c.x, "--x"), y = parse_element(*k, c.y, "--y");
  const AddChar psi(*k, psi_shift(*k, c));
  ojson ctx;
  ctx["field"] = field_json(*k);
  ctx["params"] = {{"alpha", to_string(a)}, {"beta", to_string(b)}, {"gamma", to_string(g)}, {"gamma2", to_string(g2)}};
  ctx["x"] = x.code;
  ctx["y"] = y.code;
  ctx["psi_shift"] = c.psi_shift;
  print_value(out, c.format, appell_f4(a, b, g, g2, psi, x, y), std::move(ctx));
  return kExitOk;
}

int cmd_table(const Config& c, std::ostream& out) {
  const FieldHandle k = resolve_field(c.field);
  const HgfSpec spec = make_spec(*k, c);
  const std::vector<CycloNum> values = hgf_table(spec);
  if (c.format == "csv") {
    out << "lambda,value\n";
    for (std::uint32_t i = 0; i < values.size(); ++i) out << i << "," << csv_quote(values[i].minimal().to_json().dump()) << "\n";
  } else if (c.format == "text") {
    for (std::uint32_t i = 0; i < values.size(); ++i) {
      const CycloNum v = values[i].minimal();
      out << "lambda=" << i << "  " << v.to_string() << "  (approx " << approx_text(v) << ")\n";
    }
  } else {
    ojson doc;
    doc["field"] = field_json(*k);
    doc["spec"] = spec.to_json();
    doc["rows"] = ojson::array();
    for (std::uint32_t i = 0; i < values.size(); ++i) doc["rows"].push_back({{"lambda", i}, {"value", values[i].minimal().to_json()}});
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.list) {
    for (const auto& entry : catalog()) out << entry.name << "\t" << entry.hypothesis << "\n";
    return kExitOk;
  }
  std::vector<FieldHandle> fields;
  if (!c.qs.empty()) {
    for (auto q : parse_uint_list(c.qs, "--q")) fields.push_back(FiniteField::from_order(q));
  } else {
    fields.push_back(resolve_field(c.field));
  }
  const std::vector<IdentityId> ids = parse_identities(c.ids);
  VerifyOptions options;
  if (c.mode == "exhaustive") {
    options.mode.kind = Mode::Kind::Exhaustive;
  } else if (c.mode == "sample") {
    options.mode.kind = Mode::Kind::Sample;
  } else {
    options.mode.kind = Mode::Kind::Auto;
  }
  options.mode.n = c.n;
  options.mode.seed = c.seed;
  options.mutate = c.mutate;
  options.timings = c.timings;
  apply_threads(c.threads);

  const auto reports = verify_suite(fields, ids, options);
  bool pass = true;
  for (const auto& r : reports) {
    pass = pass && r.passed();
    if (r.tuples_enumerated == 0) {
      err << "warning: " << name(r.identity) << " q=" << r.q << ": empty enumeration ("
          << r.reason.value_or("no tuple satisfies the hypotheses") << ")\n";
    }
  }

  std::ostringstream body;
  if (c.format == "text") {
    for (const auto& r : reports) {
      body << (r.passed() ? "PASS " : "FAIL ") << name(r.identity) << " q=" << r.q << " tuples=" << r.tuples_checked
           << "/" << r.tuples_enumerated << " points=" << r.lambdas_per_tuple << " failures=" << r.failures.size()
           << "\n";
    }
  } else if (c.format == "csv") {
    body << "identity,p,f,q,tuples_enumerated,tuples_checked,lambdas_per_tuple,failures,seed\n";
    for (const auto& r : reports) {
      body << name(r.identity) << "," << r.p << "," << r.f << "," << r.q << "," << r.tuples_enumerated << ","
           << r.tuples_checked << "," << r.lambdas_per_tuple << "," << r.failures.size() << ","
           << (r.seed ? std::to_string(*r.seed) : "") << "\n";
    }
  } else {
    ojson doc = ojson::array();
    for (const auto& r : reports) doc.push_back(r.to_json());
    body << doc.dump(2) << "\n";
  }

  if (c.out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.out_path);
    file << body.str();
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.passed() ? 0 : 1;
    out << (pass ? "PASS" : "FAIL") << ": " << reports.size() << " reports, " << failed << " failing, written to "
        << c.out_path << "\n";
  }
  return pass ? kExitOk : kExitVerificationFailed;
}

void add_field_options(CLI::App* sub, Config& c) {
  sub->add_option("--q", c.field.q, "field order, a prime power");
  sub->add_option("--p", c.field.p, "characteristic");
  sub->add_option("--f", c.field.f, "degree over the prime field")->check(CLI::Range(1u, 64u));
  sub->add_option("--modulus", c.field.modulus, "monic modulus coefficients, lowest degree first, comma separated");
}

void add_format(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact hypergeometric functions over finite fields", "finite-hgf"};
  app.require_subcommand(1);

  auto* field_info = app.add_subcommand("field-info", "print {p, f, q, modulus, generator}");
  add_field_options(field_info, c);
  add_format(field_info, c);

  auto* eval = app.add_subcommand("eval", "evaluate F(num, den; lambda)");
  add_field_options(eval, c);
  add_format(eval, c);
  eval->add_option("--num", c.num, "numerator characters, e.g. chi:1,chi:2");
  eval->add_option("--den", c.den, "denominator characters, e.g. eps,chi:3");
  eval->add_option("--lambda", c.lambda, "element code, or a negative integer")->required();
  eval->add_option("--psi-shift", c.psi_shift, "additive character psi(x) = zeta_p^Tr(a x)");

  auto* gauss_cmd = app.add_subcommand("gauss", "Gauss sum g(chi)");
  add_field_options(gauss_cmd, c);
  add_format(gauss_cmd, c);
  gauss_cmd->add_option("--chi", c.chi, "character");
  gauss_cmd->add_option("--psi-shift", c.psi_shift, "additive character shift");

  auto* jacobi_cmd = app.add_subcommand("jacobi", "Jacobi sum j(chi, chi2)");
  add_field_options(jacobi_cmd, c);
  add_format(jacobi_cmd, c);
  jacobi_cmd->add_option("--chi", c.chi, "first character");
  jacobi_cmd->add_option("--chi2", c.chi2, "second character");

  auto* f4 = app.add_subcommand("f4", "Appell F4(alpha, beta; gamma, gamma2; x, y)");
  add_field_options(f4, c);
  add_format(f4, c);
  f4->add_option("--alpha", c.alpha);
  f4->add_option("--beta", c.beta);
  f4->add_option("--gamma", c.gamma);
  f4->add_option("--gamma2", c.gamma2);
  f4->add_option("--x", c.x)->required();
  f4->add_option("--y", c.y)->required();
  f4->add_option("--psi-shift", c.psi_shift, "additive character shift");

  auto* verify_cmd = app.add_subcommand("verify", "check catalog identities exactly");
  verify_cmd->add_option("--q", c.qs, "comma list of field orders");
  verify_cmd->add_option("--p", c.field.p, "characteristic (single field)");
  verify_cmd->add_option("--f", c.field.f, "degree (single field)");
  verify_cmd->add_option("--modulus", c.field.modulus, "modulus for a single field");
  add_format(verify_cmd, c);
  verify_cmd->add_option("--ids", c.ids, "'all' or a comma list of identity names");
  verify_cmd->add_option("--mode", c.mode, "tuple selection")->check(CLI::IsMember({"exhaustive", "sample", "auto"}));
  verify_cmd->add_option("--n", c.n, "tuples per identity when sampling");
  verify_cmd->add_option("--seed", c.seed, "sampling seed");
  verify_cmd->add_option("--out", c.out_path, "write the report here instead of stdout");
  verify_cmd->add_option("--threads", c.threads, "worker threads (default: FINITE_HGF_THREADS, then OpenMP)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--timings", c.timings, "fill in elapsed_ms (reports stop being reproducible)");
  verify_cmd->add_flag("--mutate", c.mutate, "perturb each right-hand side by one character index");
  verify_cmd->add_flag("--list", c.list, "print the catalog and exit");

  auto* table = app.add_subcommand("table", "F(num, den; lambda) for every lambda");
  add_field_options(table, c);
  add_format(table, c);
  table->add_option("--num", c.num, "numerator characters");
  table->add_option("--den", c.den, "denominator characters");
  table->add_option("--psi-shift", c.psi_shift, "additive character shift");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (field_info->parsed()) return cmd_field_info(c, out);
    if (eval->parsed()) return cmd_eval(c, out);
    if (gauss_cmd->parsed()) return cmd_gauss(c, out);
    if (jacobi_cmd->parsed()) return cmd_jacobi(c, out);
    if (f4->parsed()) return cmd_f4(c, out);
    if (verify_cmd->parsed()) return cmd_verify(c, out, err);
    if (table->parsed()) return cmd_table(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace finite_hgf::cli
