// teichforge: JSON on stdout, human summary on stderr.
// Exit codes: 0 success, 1 a check failed, 2 malformed input, 3 other errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "teichforge/io.hpp"

using namespace tf;

namespace {

struct CheckFailed {};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Origami read_origami(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    Json j = read_json_file(path);
    Json t = {{"mark", "pi11"}, {"degree", j.at("degree")}, {"perms", {{"a", j.at("a")}, {"b", j.at("b")}}}};
    return Origami{table_from_json(t)};
  }
  try {
    return Origami::parse_text(read_text(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::array<uint32_t, 4> parse_toy_primes(const std::string& s) {
  std::array<uint32_t, 4> out{};
  std::stringstream ss(s);
  std::string item;
  size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 4) throw InputError("--toy-primes takes exactly four values p1,p2,p3,ell");
    try {
      size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0 || v > 1000) throw std::invalid_argument(item);
      out[i++] = static_cast<uint32_t>(v);
    } catch (const std::logic_error&) {
      throw InputError("bad --toy-primes entry \"" + item + "\"");
    }
  }
  if (i != 4) throw InputError("--toy-primes takes exactly four values p1,p2,p3,ell");
  return out;
}

Mat2 parse_matrix(const std::string& s) {
  Json j = Json::array();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) j.push_back(item);
  return mat2_from_json(j);
}

void summarize(const std::vector<TheoremCheck>& checks) {
  for (const auto& c : checks) std::cerr << (c.pass ? "  ok   " : "  FAIL ") << c.name << ": " << c.detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic Veech groups from subgroups of Gamma(2)"};
  app.require_subcommand(1);

  std::string delta_path, cert_path, out_path, table_path, origami_path, word_text, matrix_text, toy, suite, format = "text";
  uint64_t seed = 1, budget = 10000, bound = 100000;
  uint32_t samples = 12, words = 25;
  bool no_refine = false;

  auto* construct_cmd = app.add_subcommand("construct", "build Lambda and write a certificate");
  construct_cmd->add_option("--delta", delta_path, "Delta table JSON")->required();
  construct_cmd->add_option("--seed", seed);
  construct_cmd->add_option("--budget", budget, "self-normalizing search budget");
  construct_cmd->add_option("--out", out_path, "certificate path (stdout if absent)");
  construct_cmd->add_option("--toy-primes", toy, "p1,p2,p3,ell; certificate is flagged non-faithful");
  construct_cmd->add_flag("--no-refine", no_refine, "keep Delta0 unrefined (toy runs)");

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate against Delta");
  verify_cmd->add_option("--cert", cert_path)->required();
  verify_cmd->add_option("--delta", delta_path)->required();

  auto* veech_cmd = app.add_subcommand("veech", "Veech group of an origami, a table, or a certificate's Lambda");
  auto* vo = veech_cmd->add_option("--origami", origami_path, "origami text, or JSON if the name ends in .json");
  auto* vt = veech_cmd->add_option("--table", table_path, "table JSON over pi11");
  auto* vc = veech_cmd->add_option("--cert", cert_path);
  vo->excludes(vt)->excludes(vc);
  vt->excludes(vc);

  auto* decompose_cmd = app.add_subcommand("decompose", "cyclic classes of a word, or a Gamma(2) word for a matrix");
  auto* dt = decompose_cmd->add_option("--table", table_path);
  decompose_cmd->add_option("--word", word_text)->needs(dt);
  auto* dm = decompose_cmd->add_option("--matrix", matrix_text, "a,b,c,d");
  dm->excludes(dt);

  auto* selfnorm_cmd = app.add_subcommand("selfnorm", "self-normalizing refinement of Delta0");
  selfnorm_cmd->add_option("--delta", delta_path)->required();
  selfnorm_cmd->add_option("--seed", seed);
  selfnorm_cmd->add_option("--budget", budget);

  app.add_subcommand("atlas", "dump the fixed subgroup atlas");

  auto* lemmas_cmd = app.add_subcommand("lemmas", "run the reproduction suites");
  lemmas_cmd->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  lemmas_cmd->add_option("--samples", samples);
  lemmas_cmd->add_option("--words", words);
  lemmas_cmd->add_option("--seed", seed);
  lemmas_cmd->add_option("--budget", budget);

  auto* export_cmd = app.add_subcommand("export", "origami of a table or of a materialized certificate");
  auto* et = export_cmd->add_option("--table", table_path);
  auto* ec = export_cmd->add_option("--cert", cert_path);
  et->excludes(ec);
  export_cmd->add_option("--bound", bound, "largest degree to materialize");
  export_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (construct_cmd->parsed()) {
      PipelineConfig cfg;
      cfg.seed = seed;
      cfg.budget = budget;
      cfg.refine = !no_refine;
      if (!toy.empty()) cfg.toy_primes = parse_toy_primes(toy);
      const CosetAction delta = delta_from_json(read_json_file(delta_path));
      const Construction c = construct(delta, cfg);
      const Json cert = certificate(c);
      if (out_path.empty()) emit(cert);
      else write_file(out_path, cert);
      std::cerr << "index " << delta.degree() << ", Lambda index " << c.lambda.index_string() << "\n";
      for (const auto& s : c.checks) std::cerr << "  ok   " << s << "\n";
      if (c.toy) std::cerr << "warning: toy parameters, not faithful\n";
      if (c.degenerate) std::cerr << "warning: construction degenerate (Delta is Gamma(2))\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      const Json cert = read_json_file(cert_path);
      const CosetAction delta = delta_from_json(read_json_file(delta_path));
      const VerifyReport r = verify_certificate(cert, delta);
      emit(to_json(r));
      summarize(r.checks);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      if (r.pass) std::cerr << (r.warnings.empty() ? "PASS\n" : "PASS (with warnings)\n");
      else std::cerr << "FAIL: " << r.first_failure() << "\n";
      return r.pass ? 0 : 1;
    }
    if (veech_cmd->parsed()) {
      VeechGroupResult r;
      Json extra = Json::object();
      if (!origami_path.empty()) {
        const Origami o = read_origami(origami_path);
        r = veech_of_origami(o);
        extra = to_json(o);
      } else if (!table_path.empty()) {
        const CosetAction t = table_from_json(read_json_file(table_path));
        if (!same_alphabet(t.mark(), marks::pi11())) throw InputError("--table must be over pi11 (a, b)");
        r = veech_of_table(t);
      } else if (!cert_path.empty()) {
        const Json cert = read_json_file(cert_path);
        std::vector<ModSubspace> layers;
        for (const auto& u : cert.at("lambda").at("layers")) layers.push_back(subspace_from_json(u));
        r = stabilizer(LayeredSubgroup(table_from_json(cert.at("d")), layers));
      } else {
        throw InputError("veech needs one of --origami, --table, --cert");
      }
      Json j = to_json(r);
      if (!extra.empty()) j["origami"] = extra;
      emit(j);
      std::cerr << "orbit " << r.orbit_size << " (projective " << r.projective_orbit_size << "), "
                << r.generators.size() << " generators\n";
      return 0;
    }
    if (decompose_cmd->parsed()) {
      if (!matrix_text.empty()) {
        const Mat2 m = parse_matrix(matrix_text);
        Json j = {{"matrix", to_json(m)}, {"sl2_word", sl2_word(m).str()}};
        if (m.in_gamma2()) {
          const SignedWord w = gamma2_word(m);
          j["gamma2_word"] = w.word.str();
          j["sign"] = w.sign;
        }
        emit(j);
        return 0;
      }
      if (table_path.empty()) throw InputError("decompose needs --matrix or --table with --word");
      const CosetAction t = table_from_json(read_json_file(table_path));
      FreeWord w(t.mark());
      try {
        w = FreeWord::parse(t.mark(), word_text);
      } catch (const std::exception& e) {
        throw InputError(std::string("bad --word: ") + e.what());
      }
      Json classes = Json::array();
      for (const auto& e : cyclic_class_decomposition(t, w.letters()))
        classes.push_back({{"coset", e.coset},
                           {"representative", FreeWord(t.mark(), e.representative).str()},
                           {"conjugator", FreeWord(t.mark(), e.conjugator).str()},
                           {"size", e.size}});
      emit({{"word", w.str()}, {"degree", t.degree()}, {"classes", classes}});
      std::cerr << classes.size() << " classes\n";
      return 0;
    }
    if (selfnorm_cmd->parsed()) {
      const CosetAction delta = delta_from_json(read_json_file(delta_path));
      const CosetAction d0 = delta0_from_delta(delta);
      const RefineResult r = self_normalizing_refine(d0, seed, budget);
      emit({{"seed", seed},
            {"budget", budget},
            {"found", r.found},
            {"candidates", r.candidates},
            {"cover_degree", r.cover_degree},
            {"delta0", to_json(d0)},
            {"refined", r.found ? to_json(r.refined) : Json(nullptr)}});
      std::cerr << (r.found ? "found" : "not found") << " after " << r.candidates << " candidates\n";
      return r.found ? 0 : 1;
    }
    if (app.got_subcommand("atlas")) {
      emit(atlas_json());
      return 0;
    }
    if (lemmas_cmd->parsed()) {
      SuiteOptions opt{samples, words, seed, budget};
      Json out = Json::array();
      bool all = true;
      for (const auto& name : suite_names()) {
        if (!suite.empty() && name != suite) continue;
        const SuiteResult r = run_suite(name, opt);
        all = all && r.pass;
        out.push_back(to_json(r));
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " " << r.title << ": " << r.detail << "\n";
        for (const auto& w : r.warnings) std::cerr << "  warning: " << w << "\n";
      }
      emit({{"pass", all}, {"suites", out}});
      return all ? 0 : 1;
    }
    if (export_cmd->parsed()) {
      CosetAction t;
      if (!table_path.empty()) {
        t = table_from_json(read_json_file(table_path));
      } else if (!cert_path.empty()) {
        const Json cert = read_json_file(cert_path);
        std::vector<ModSubspace> layers;
        for (const auto& u : cert.at("lambda").at("layers")) layers.push_back(subspace_from_json(u));
        t = materialize(LayeredSubgroup(table_from_json(cert.at("d")), layers), bound);
      } else {
        throw InputError("export needs --table or --cert");
      }
      const Origami o = origami_export(t, bound);
      if (format == "json") emit(to_json(o));
      else std::cout << o.text();
      std::cerr << o.degree() << " squares, genus " << o.genus() << ", " << o.punctures() << " punctures\n";
      return 0;
    }
  } catch (const Json::parse_error& e) {
    emit({{"error", {{"kind", "parse"}, {"message", e.what()}}}});
    return 2;
  } catch (const Json::exception& e) {
    emit({{"error", {{"kind", "input"}, {"message", e.what()}}}});
    return 2;
  } catch (const InputError& e) {
    emit({{"error", {{"kind", "input"}, {"message", e.what()}}}});
    return 2;
  } catch (const std::exception& e) {
    emit({{"error", {{"kind", "runtime"}, {"message", e.what()}}}});
    return 3;
  }
  return 0;
}
