#include "spincc/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spincc/chern.hpp"
#include "spincc/errors.hpp"
#include "spincc/geometry.hpp"
#include "spincc/json_io.hpp"
#include "spincc/properties.hpp"
#include "spincc/selftest.hpp"
#include "spincc/spin_classes.hpp"
#include "spincc/steenrod.hpp"
#include "spincc/text.hpp"

namespace spincc::cli {

namespace {

using nlohmann::json;

// Collects labelled results and writes them in the requested format.
class Emitter {
 public:
  explicit Emitter(Format format) : format_(format) {}

  template <class P>
  void poly(const std::string& key, const std::string& latex_key, const P& p) {
    if (format_ == Format::Json) {
      json_[key] = to_json(p);
    } else {
      add_line(format_ == Format::Latex ? latex_key : key, render(p, format_));
    }
  }

  void value(const std::string& key, const json& v) {
    if (format_ == Format::Json) {
      json_[key] = v;
    } else {
      add_line(key, v.is_string() ? v.get<std::string>() : v.dump());
    }
  }

  void raw(const std::string& key, const json& j, const std::string& text) {
    if (format_ == Format::Json) {
      json_[key] = j;
    } else {
      add_line(key, text);
    }
  }

  void write(std::ostream& out) const {
    if (format_ == Format::Json) {
      out << json_.dump(2) << "\n";
    } else {
      for (const auto& line : lines_) out << line << "\n";
    }
  }

 private:
  void add_line(const std::string& key, const std::string& text) { lines_.push_back(key + " = " + text); }

  Format format_;
  std::vector<std::string> lines_;
  json json_ = json::object();
};

json mpz_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class parse_integer(const std::string& text, const std::string& what) {
  mpz_class z;
  if (text.empty() || z.set_str(text, 10) != 0) throw DomainError(what + " is not an integer: '" + text + "'");
  return z;
}

mpz_class integer_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>(), what);
  throw DomainError(what + " must be an integer");
}

std::string latex_index(const std::string& base, int i) { return base + "_{" + std::to_string(i) + "}"; }

// "q1^2[W]=4" -> ("q1^2", 4)
std::pair<std::string, mpz_class> characteristic_number(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw DomainError("expected <monomial>[W]=<integer>, got '" + text + "'");
  std::string key = text.substr(0, eq);
  const std::string suffix = "[W]";
  if (key.size() >= suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
    key.resize(key.size() - suffix.size());
  }
  return {key, parse_integer(text.substr(eq + 1), "characteristic number")};
}

WallPair wall_pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("b")) {
    throw DomainError("a Wall pair needs the fields \"A\" and \"b\"");
  }
  WallPair pair;
  if (!j["A"].is_array() || !j["b"].is_array()) throw DomainError("A and b must be arrays");
  for (const auto& row : j["A"]) {
    if (!row.is_array()) throw DomainError("A must be an array of rows");
    std::vector<mpz_class> r;
    for (const auto& x : row) r.push_back(integer_from_json(x, "matrix entry"));
    pair.a.push_back(std::move(r));
  }
  for (const auto& x : j["b"]) pair.b.push_back(integer_from_json(x, "b entry"));
  return pair;
}

// Field order follows SmoothabilityReport.
nlohmann::ordered_json report_json(const SmoothabilityReport& r) {
  using ojson = nlohmann::ordered_json;
  const ojson undefined = "undefined";
  ojson j;
  j["wall_ok"] = r.wall_ok;
  j["signature"] = r.signature ? ojson(*r.signature) : undefined;
  j["bAbT"] = r.bab ? ojson::parse(mpz_json(*r.bab).dump()) : undefined;
  j["smoothable"] = r.smoothable ? ojson(*r.smoothable) : undefined;
  j["psc"] = r.psc ? ojson(*r.psc) : undefined;
  j["mu"] = r.mu ? ojson(r.mu->get_str()) : undefined;
  if (r.q2_coefficient) {
    ojson b = ojson::array();
    for (const auto& x : r.q1_coefficients) b.push_back(ojson::parse(mpz_json(x).dump()));
    j["total_spin_class"] = ojson::array({1, b, ojson::parse(mpz_json(*r.q2_coefficient).dump())});
  } else {
    j["total_spin_class"] = undefined;
  }
  return j;
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(what + ": " + e.what());
  }
}

struct Globals {
  std::string format = "plain";
  int degree_bound = BsoModel::kDefaultDegreeBound;
  std::uint64_t seed = 1;
};

int selftest(const std::string& corpus, const std::string& filter, bool prop, int cases,
             std::uint64_t seed, std::ostream& out) {
  int passed = 0, failed = 0;
  auto report = [&](const CheckOutcome& c) {
    if (c.pass) {
      ++passed;
      out << "PASS " << c.id << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    } else {
      ++failed;
      out << "FAIL " << c.id << "\n" << c.detail;
      if (!c.detail.empty() && c.detail.back() != '\n') out << "\n";
    }
  };
  for (const auto& entry : load_corpus(corpus)) {
    if (!filter.empty() && entry.id.find(filter) == std::string::npos) continue;
    report(check_entry(entry));
  }
  for (const auto& c : cross_checks(filter)) report(c);
  if (prop) {
    for (const auto& name : property_names()) {
      std::string id = "prop." + name;
      if (!filter.empty() && id.find(filter) == std::string::npos) continue;
      PropertyResult r = run_property(name, seed, cases);
      std::string detail = std::to_string(r.cases) + " cases, seed " + std::to_string(seed);
      if (r.failures > 0) {
        detail = std::to_string(r.failures) + "/" + std::to_string(r.cases) + " failed; first: " + r.first_failure;
      }
      report({id, r.failures == 0, detail});
    }
  }
  out << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitInternal;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic classes of B_SO(n), B_Spin(n) and B_Spin^c(n)", "spincc"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"plain", "latex", "json"}))
      ->capture_default_str();
  app.add_option("--degree-bound", g.degree_bound, "Largest degree handled by the Sq^1 solver")
      ->check(CLI::Range(8, 64))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized property checks")->capture_default_str();

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  int n = 0, i = 0, k = 0, m = 0, steps = 3, max_degree = 16, cases = 200;
  std::string poly, direction = "p2q", form = "signed", type, sigma, file, filter, corpus;
  std::vector<std::string> qnums, pnums;
  bool view = false, batch = false, prop = false;

  auto* sq = sub("sq", "Steenrod square Sq^I of a class in H*(B_SO(n); Z/2)");
  sq->add_option("--n", n, "Rank n >= 7")->required();
  sq->add_option("--i", i, "Square index")->required()->check(CLI::NonNegativeNumber);
  sq->add_option("--poly", poly, "Class in w2..wn")->required();

  auto* sigma_cmd = sub("sigma", "Transgressions sigma(x_1), ..., sigma(x_K)");
  sigma_cmd->add_option("--n", n, "Rank n >= 7")->required();
  sigma_cmd->add_option("--k", k, "Number of classes")->required()->check(CLI::PositiveNumber);

  auto* derived = sub("derived-w2", "Derived sequence w2^(1), ..., w2^(R) with certificates");
  derived->add_option("--n", n, "Rank n >= 7")->required();
  derived->add_option("--steps", steps, "R")->required()->check(CLI::Range(1, 5));

  auto* ffree = sub("f-free", "Torsion-free part of the integral representation f");
  ffree->add_option("--n", n, "Rank n >= 7")->required();
  ffree->add_option("--poly", poly, "Class in w2..wn")->required();

  auto* delta = sub("delta-seq", "delta^r(2y - c1) in Z[y, c1..cK]");
  delta->add_option("--k", k, "Rank K in 1..8")->required();
  delta->add_option("--steps", steps, "R in 0..4")->capture_default_str();
  delta->add_flag("--pontryagin-view", view, "Also print psi(delta^r) in y, P1..PK");

  auto* weyl = sub("weyl", "Weyl invariants g_r, alpha_r, f_r of Spin(n) and their relation residues");
  weyl->add_option("--n", n, "n in 2..17")->required();
  weyl->add_option("--steps", steps, "Number of alpha_r, 1..4")->capture_default_str();

  auto* theta = sub("theta", "Pullback of theta_n to Z[y, c1..c_{n/2}]");
  theta->add_option("--n", n, "n in {4, 6, 8, 10}")->required();

  auto* transition = sub("transition", "Pontryagin <-> spin class transition");
  transition->add_option("--max-degree", max_degree, "16 or 32")->capture_default_str();
  transition->add_option("--direction", direction, "p2q or q2p")
      ->check(CLI::IsMember({"p2q", "q2p"}))
      ->capture_default_str();
  transition->add_option("--poly", poly, "Expression to convert; prints the table when omitted");

  auto* spin8 = sub("spin8-check", "Relation between theta_8, q2 and a8 in Z[y, c1..c4]");
  spin8->add_option("--form", form, "signed: 4(-1)^3 theta8 + q2^2 - a8; presentation: 4 theta8 - q2^2 - a8")
      ->check(CLI::IsMember({"signed", "presentation"}))
      ->capture_default_str();

  auto* torsion = sub("torsion-mul", "Product Q_K * delta_2(x) as delta_2 of a mod-2 class");
  torsion->add_option("--k", k, "K >= 1")->required();
  torsion->add_option("--x", poly, "Mod-2 class in w2..wn")->required();
  int torsion_n = 16;
  torsion->add_option("--n", torsion_n, "Rank n")->capture_default_str();

  auto* genus = sub("genus", "A-hat or L genus polynomial in p1..p4");
  genus->add_option("--m", m, "m in 1..4")->required();
  genus->add_option("--type", type, "ahat or L")->required()->check(CLI::IsMember({"ahat", "L"}));

  auto* signature = sub("signature-q", "Signature of a spin 4m-manifold in q1..q4 and alpha_m");
  signature->add_option("--m", m, "m in 1..4")->required();

  auto* ek = sub("ek", "Eells-Kuiper invariant mu_K mod 1; prints the forms without numbers");
  ek->add_option("--k", k, "K in 2..4")->required();
  ek->add_option("--sigma", sigma, "Signature of the coboundary");
  auto* q_opt = ek->add_option("--q", qnums, "Spin numbers, e.g. q1^2[W]=4");
  auto* p_opt = ek->add_option("--p", pnums, "Pontryagin numbers, e.g. p1^2[W]=16");
  q_opt->excludes(p_opt);

  auto* wu = sub("wu", "Integral lift of the Wu class v_{4K} in q's and p's");
  wu->add_option("--k", k, "K in 1..4")->required();

  auto* wall = sub("wall", "Wall pairs (A, b)");
  wall->require_subcommand(1);
  auto* classify = wall->add_subcommand("classify", "Smoothability, psc and mu of Wall pairs");
  classify->fallthrough();
  std::string pair_text;
  auto* file_opt = classify->add_option("--file", file, "JSON file ('-' for stdin)");
  auto* pair_opt = classify->add_option("--pair", pair_text, "Inline JSON, e.g. {\"A\":[[1]],\"b\":[1]}");
  file_opt->excludes(pair_opt);
  classify->add_flag("--batch", batch, "File holds an array of pairs");

  auto* self = sub("selftest", "Golden corpus, cross-module checks and optional property checks");
  self->add_option("--filter", filter, "Only checks whose id contains this text");
  self->add_flag("--prop", prop, "Also run the randomized property checks (see --seed)");
  self->add_option("--cases", cases, "Cases per property")->check(CLI::PositiveNumber)->capture_default_str();
  self->add_option("--corpus", corpus, "Corpus file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  const Format fmt = parse_format(g.format);
  Emitter emit(fmt);
  int status = kExitOk;

  if (*sq) {
    BsoModel model(n, g.degree_bound);
    emit.poly("Sq^" + std::to_string(i), "Sq^{" + std::to_string(i) + "}", model.sq(i, model.parse(poly)));
  } else if (*sigma_cmd) {
    BsoModel model(n, g.degree_bound);
    auto s = model.sigma(k);
    for (std::size_t j = 0; j < s.size(); ++j) {
      int idx = int(j) + 1;
      emit.poly("sigma(x" + std::to_string(idx) + ")", "\\sigma(" + latex_index("x", idx) + ")", s[j]);
    }
  } else if (*derived) {
    BsoModel model(n, g.degree_bound);
    auto s = model.derived_w2(steps);
    for (int r = 1; r <= steps; ++r) {
      const DerivedStep& step = s[std::size_t(r)];
      std::string rs = std::to_string(r);
      emit.poly("w2^(" + rs + ")", "w_{2}^{(" + rs + ")}", step.value);
      emit.value("certificate(" + rs + ")", step.holds);
      if (!step.holds) status = kExitInternal;
    }
  } else if (*ffree) {
    BsoModel model(n, g.degree_bound);
    FreeImage f = model.f_free(model.parse(poly));
    emit.poly("free", "f", f.free);
    emit.poly("torsion", "\\tau", f.torsion);
  } else if (*delta) {
    UcModel model(k);
    DeltaSequence s = model.delta_sequence(steps);
    for (int r = 0; r <= steps; ++r) {
      std::string rs = std::to_string(r);
      emit.poly("delta^" + rs, "\\delta^{" + rs + "}(u)", s.terms[std::size_t(r)]);
      if (view) emit.poly("psi(delta^" + rs + ")", "\\psi(\\delta^{" + rs + "}(u))", s.psi_images[std::size_t(r)]);
    }
    for (int r = 0; r < steps; ++r) {
      bool ok = s.certificates[std::size_t(r)];
      emit.value("certificate(" + std::to_string(r + 1) + ")", ok);
      if (!ok) status = kExitInternal;
    }
  } else if (*weyl) {
    if (n < 2 || n > 2 * UcModel::kMaxRank + 1) throw DomainError("weyl needs n in 2..17");
    if (steps < 1 || steps > 4) throw DomainError("weyl needs --steps in 1..4");
    UcModel model(n / 2);
    WeylGenerators w = model.weyl_generators(steps);
    for (std::size_t r = 0; r < w.g.size(); ++r) {
      emit.poly("g" + std::to_string(r + 1), latex_index("g", int(r) + 1), w.g[r]);
    }
    for (int r = 1; r <= steps; ++r) {
      std::string rs = std::to_string(r);
      emit.poly("alpha" + rs, latex_index("\\alpha", r), w.alpha[std::size_t(r)]);
      emit.value("e(alpha" + rs + ")", mpz_json(e_hom(w.alpha[std::size_t(r)])));
    }
    for (int r = 0; r < steps; ++r) {
      emit.poly("f" + std::to_string(r), latex_index("f", r), w.f[std::size_t(r)]);
    }
    for (int r = 0; r < steps; ++r) {
      const Poly& res = w.residues[std::size_t(r)];
      emit.poly("residue" + std::to_string(r), latex_index("\\rho", r), res);
      if (!res.is_zero()) status = kExitInternal;
    }
  } else if (*theta) {
    emit.poly("theta" + std::to_string(n), latex_index("\\theta", n), theta_pullback(n));
  } else if (*transition) {
    TransitionTable table(max_degree);
    bool p2q = direction == "p2q";
    if (!poly.empty()) {
      RatPoly input = parse_rational(poly, p2q ? table.p_ring() : table.q_ring());
      emit.poly("result", "r", p2q ? table.p_to_q(input) : table.q_to_p(input));
    } else {
      for (int j = 1; j <= table.max_index(); ++j) {
        if (p2q) {
          emit.poly("p" + std::to_string(j), latex_index("p", j), table.p_row(j));
        } else {
          emit.poly("q" + std::to_string(j), latex_index("q", j), table.q_row(j));
        }
      }
    }
  } else if (*spin8) {
    Spin8Result r = spin8_consistency(form == "signed" ? RelationForm::Signed : RelationForm::Presentation);
    emit.poly("residual", "R", r.residual);
    emit.value("holds", r.holds);
    if (!r.holds) status = kExitInternal;
  } else if (*torsion) {
    BsoModel model(torsion_n, g.degree_bound);
    TorsionClass t = torsion_product(model, k, model.parse(poly));
    const Poly& x = t.bockstein_of();
    json j = {{"bockstein_of", to_json(x)}};
    emit.raw("product", j, "delta2(" + render(x, fmt) + ")");
  } else if (*genus) {
    GenusTable table;
    bool ahat = type == "ahat";
    const RatPoly& value = ahat ? table.a_hat(m) : table.l_genus(m);
    std::string ms = std::to_string(m);
    emit.poly((ahat ? "ahat" : "L") + ms, ahat ? latex_index("\\hat{A}", m) : latex_index("L", m), value);
  } else if (*signature) {
    GenusTable table;
    emit.poly("sigma", "\\sigma_{M}", table.signature_in_q(m));
  } else if (*ek) {
    if (qnums.empty() && pnums.empty()) {
      EkForms f = eells_kuiper_forms(k);
      emit.poly("p_form", "\\mu^{p}", f.p_form);
      emit.poly("q_form", "\\mu^{q}", f.q_form);
      emit.poly("q_form_reference", "\\mu^{q}_{ref}", f.q_form_reference);
    } else {
      if (sigma.empty()) throw DomainError("--sigma is required with characteristic numbers");
      std::map<std::string, mpz_class> numbers;
      for (const auto& text : qnums.empty() ? pnums : qnums) {
        auto [key, value] = characteristic_number(text);
        numbers[key] = value;
      }
      mpq_class mu = eells_kuiper(k, qnums.empty() ? EkVariables::P : EkVariables::Q, numbers,
                                  parse_integer(sigma, "--sigma"));
      emit.value("mu", mu.get_str());
    }
  } else if (*wu) {
    WuLift w = wu_lift(k);
    std::string ks = std::to_string(4 * k);
    emit.poly("v" + ks, latex_index("\\tilde{v}", 4 * k), w.q_form);
    emit.poly("v" + ks + "(p)", latex_index("\\tilde{v}", 4 * k) + "(p)", w.p_form);
    emit.poly("classical" + ks, latex_index("v", 4 * k), w.classical);
  } else if (*wall) {
    if (file.empty() && pair_text.empty()) throw DomainError("wall classify needs --file or --pair");
    json input = pair_text.empty() ? parse_json_text(read_input(file), file) : parse_json_text(pair_text, "--pair");
    if (batch) {
      if (!input.is_array()) throw DomainError("--batch expects an array of Wall pairs");
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      std::size_t idx = 0;
      for (const auto& item : input) {
        std::string prefix = "pair[" + std::to_string(idx++) + "].";
        nlohmann::ordered_json r;
        try {
          r = report_json(wall_classify(wall_pair_from_json(item)));
        } catch (const DomainError& e) {
          r = {{"error", e.what()}};
          status = kExitBadInput;
        }
        all.push_back(r);
        if (fmt != Format::Json) {
          for (const auto& [key, v] : r.items()) emit.value(prefix + key, json::parse(v.dump()));
        }
      }
      if (fmt == Format::Json) {
        out << all.dump(2) << "\n";
        return status;
      }
    } else {
      auto r = report_json(wall_classify(wall_pair_from_json(input)));
      if (fmt == Format::Json) {
        out << r.dump(2) << "\n";
        return status;
      }
      for (const auto& [key, v] : r.items()) emit.value(key, json::parse(v.dump()));
    }
  } else if (*self) {
    return selftest(corpus.empty() ? default_corpus_path() : corpus, filter, prop, cases, g.seed, out);
  }

  emit.write(out);
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace spincc::cli
