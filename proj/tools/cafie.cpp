// Command-line front end: decode, train, eval, sweep, bench, convert, synth.
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cafie/decoder.hpp"
#include "cafie/errors.hpp"
#include "cafie/eval.hpp"
#include "cafie/http_backend.hpp"
#include "cafie/lexicon.hpp"
#include "cafie/ngram.hpp"
#include "cafie/sentiment.hpp"
#include "cafie/synthetic.hpp"

namespace {

using namespace cafie;

struct BackendHolder {
  std::unique_ptr<LmBackend> backend;
  std::string identity;
};

BackendHolder make_backend(const std::string& spec,
                           const std::string& vocab_path) {
  if (spec.rfind("ngram:", 0) == 0) {
    const std::string path = spec.substr(6);
    const std::string vpath = vocab_path.empty() ? path + ".vocab" : vocab_path;
    Vocabulary vocab = Vocabulary::load(vpath);
    BackendHolder h;
    h.backend = std::make_unique<NgramModel>(NgramModel::load(path, vocab));
    h.identity = spec;
    return h;
  }
  if (spec.rfind("http:", 0) == 0 || spec.rfind("https:", 0) == 0) {
    if (vocab_path.empty())
      throw ConfigError("http backend requires --vocab <path>");
    BackendHolder h;
    h.backend =
        std::make_unique<HttpBackend>(spec, Vocabulary::load(vocab_path));
    h.identity = spec;
    return h;
  }
  throw ConfigError("backend must be ngram:<path> or http:<url>, got: " + spec);
}

struct CommonFlags {
  std::string backend_spec;
  std::string vocab_path;
  std::string lexicon_path;
  double lambda = 1000.0;
  double alpha = 0.99;
  double temperature = 1.0;
  std::size_t max_counterfactuals = static_cast<std::size_t>(-1);
  std::string weight_fn = "tanh";
  std::string combine_mode = "cafie";
  std::string inter_weighting = "elementwise";
  std::string sampling = "greedy";
  int top_k = 50;
  double top_p = 0.9;
  std::uint64_t seed = 0;
  int max_tokens = 20;
  std::string prefix_mode = "none";
  std::string refresh = "static";
  int jobs = 1;
};

void add_common_flags(CLI::App* cmd, CommonFlags* f, bool needs_backend) {
  auto* b = cmd->add_option("--backend", f->backend_spec,
                            "ngram:<path> or http:<url>");
  if (needs_backend) b->required();
  cmd->add_option("--vocab", f->vocab_path,
                  "vocabulary file (required for http backends)");
  cmd->add_option("--lexicon", f->lexicon_path, "attribute lexicon JSON");
  cmd->add_option("--lambda", f->lambda, "calibration strength");
  cmd->add_option("--alpha", f->alpha, "blend weight toward the fair distribution");
  cmd->add_option("--temperature", f->temperature, "softmax temperature");
  cmd->add_option("--max-counterfactuals", f->max_counterfactuals,
                  "cap counterfactuals per attribute");
  cmd->add_option("--weight-fn", f->weight_fn,
                  "tanh | arctan | sigmoid | softsign");
  cmd->add_option("--combine-mode", f->combine_mode,
                  "cafie | jpdf | ratio | weight");
  cmd->add_option("--inter-weighting", f->inter_weighting,
                  "elementwise | scalar_l1");
  cmd->add_option("--sampling", f->sampling,
                  "greedy | top_k | nucleus | multinomial");
  cmd->add_option("--top-k", f->top_k, "k for top_k sampling");
  cmd->add_option("--top-p", f->top_p, "p for nucleus sampling");
  cmd->add_option("--seed", f->seed, "RNG seed");
  cmd->add_option("--max-tokens", f->max_tokens, "generation length cap");
  cmd->add_option("--prefix-mode", f->prefix_mode,
                  "none | instruction1 | instruction2 | cot");
  cmd->add_option("--refresh", f->refresh,
                  "counterfactual refresh: static | per_step");
  cmd->add_option("--jobs", f->jobs, "worker threads for evaluation");
}

struct SessionBundle {
  BackendHolder backend;
  AttributeLexicon lexicon;
  DecodeSession session;
};

SessionBundle make_session(const CommonFlags& f) {
  SessionBundle b;
  b.backend = make_backend(f.backend_spec, f.vocab_path);
  if (!f.lexicon_path.empty()) b.lexicon = load_lexicon(f.lexicon_path);

  DecodeSession s;
  s.backend = b.backend.backend.get();
  s.lexicon = &b.lexicon;
  s.params.lambda = f.lambda;
  s.params.alpha = f.alpha;
  s.params.temperature = f.temperature;
  s.params.max_counterfactuals = f.max_counterfactuals;
  s.params.weight_fn = parse_weight_fn(f.weight_fn);
  s.params.combine_mode = parse_combine_mode(f.combine_mode);
  s.params.inter_weighting = parse_inter_weighting(f.inter_weighting);
  s.params.validate();
  s.sampling.kind = parse_sampling_kind(f.sampling);
  s.sampling.top_k = f.top_k;
  s.sampling.top_p = f.top_p;
  s.sampling.validate();
  s.seed = f.seed;
  s.max_tokens = f.max_tokens;
  s.prefix_mode = parse_prefix_mode(f.prefix_mode);
  s.counterfactual_refresh = parse_refresh_mode(f.refresh);
  if (f.jobs < 1) throw ConfigError("--jobs must be >= 1");
  b.session = s;
  return b;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write: " + path);
  out << content;
}

nlohmann::json trace_json(const DecodeTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : trace.steps) {
    steps.push_back({{"source_entropy", st.source_entropy},
                     {"source_argmax", st.source_argmax},
                     {"delta_l1", st.delta_l1},
                     {"chosen", st.chosen},
                     {"fair_prob_chosen", st.fair_prob_chosen}});
  }
  return {{"steps", steps},
          {"backend_call_count", trace.backend_call_count},
          {"num_counterfactuals", trace.num_counterfactuals}};
}

int cmd_decode(const CommonFlags& f, const std::string& prompt,
               const std::string& trace_path) {
  SessionBundle b = make_session(f);
  GenerateResult res = generate(prompt, b.session);
  std::cout << res.text << "\n";
  if (!trace_path.empty())
    write_text_file(trace_path, trace_json(res.trace).dump(2) + "\n");
  return 0;
}

int cmd_train(const std::string& corpus_path, int order, double add_k,
              std::size_t min_count, const std::string& out_path) {
  Vocabulary vocab = build_vocab_file(corpus_path, min_count);

  // Deterministic 90/10 split: every 10th line is held out for perplexity.
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus: " + corpus_path);
  std::ostringstream train_text, heldout_text;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (lineno % 10 == 9)
      heldout_text << line << '\n';
    else
      train_text << line << '\n';
    ++lineno;
  }
  std::istringstream train_in(train_text.str());
  NgramModel model = NgramModel::train(train_in, vocab, order, add_k);
  model.save(out_path);
  vocab.save(out_path + ".vocab");

  const std::string heldout =
      heldout_text.str().empty() ? train_text.str() : heldout_text.str();
  const std::string tmp = out_path + ".heldout.tmp";
  write_text_file(tmp, heldout);
  const double ppl = eval_fluency(tmp, model);
  std::remove(tmp.c_str());

  std::cout << "model: " << out_path << "\n"
            << "vocab: " << out_path << ".vocab (" << vocab.size()
            << " tokens)\n"
            << "held-out perplexity: " << ppl << "\n";
  return 0;
}

void maybe_write_report(const std::string& report_path,
                        const nlohmann::json& config,
                        const nlohmann::json& metrics) {
  if (report_path.empty()) return;
  nlohmann::json report = {{"config", config}, {"metrics", metrics}};
  write_text_file(report_path, report.dump(2) + "\n");
}

int cmd_eval_stereoset(const CommonFlags& f, const std::string& data_path,
                       const std::string& report_path) {
  SessionBundle b = make_session(f);
  const auto instances = load_stereoset(data_path);
  const StereoSetResult r = eval_stereoset(instances, b.session, f.jobs);
  std::cout << "instances: " << r.instances << "\n";
  for (const auto& [attr, ss] : r.ss_per_attribute)
    std::cout << "ss[" << attr << "]: " << ss << "\n";
  std::cout << "ss: " << r.ss_overall << "\nlm: " << r.lm_score
            << "\nicat: " << r.icat << "\n";
  maybe_write_report(report_path,
                     session_config_json(b.session, b.backend.identity),
                     to_json(r));
  return 0;
}

int cmd_eval_crows(const CommonFlags& f, const std::string& data_path,
                   const std::string& report_path) {
  SessionBundle b = make_session(f);
  const auto pairs = load_crows(data_path);
  const CrowsResult r = eval_crows(pairs, b.session, f.jobs);
  for (const auto& [attr, s] : r.per_attribute)
    std::cout << "score[" << attr << "]: " << s.overall << " (stereo "
              << s.stereo_score << ", anti " << s.anti_score << ")\n";
  std::cout << "overall: " << r.overall.overall << "\n";
  maybe_write_report(report_path,
                     session_config_json(b.session, b.backend.identity),
                     to_json(r));
  return 0;
}

int cmd_eval_bold(const CommonFlags& f, const std::string& data_path,
                  const std::string& sentiment_path, int generations,
                  const std::string& report_path,
                  const std::string& plot_path) {
  SessionBundle b = make_session(f);
  const auto prompts = load_bold(data_path);
  const SentimentLexicon sent = load_sentiment_lexicon(sentiment_path);
  const BoldResult r = eval_bold(prompts, b.session, generations, sent);
  for (const auto& [domain, groups] : r.groups) {
    for (const auto& [group, st] : groups)
      std::cout << "mu[" << domain << "/" << group << "]: " << st.mu << "\n";
    std::cout << "sigma[" << domain << "]: " << r.sigma_per_domain.at(domain)
              << "\n";
  }
  maybe_write_report(report_path,
                     session_config_json(b.session, b.backend.identity),
                     to_json(r));
  if (!plot_path.empty()) {
    std::ostringstream csv;
    csv << "domain,group,frac_negative,frac_neutral,frac_positive\n";
    for (const auto& [domain, groups] : r.groups)
      for (const auto& [group, st] : groups)
        csv << domain << ',' << group << ',' << st.frac_negative << ','
            << st.frac_neutral << ',' << st.frac_positive << '\n';
    write_text_file(plot_path, csv.str());
  }
  return 0;
}

int cmd_eval_fluency(const CommonFlags& f, const std::string& data_path) {
  SessionBundle b = make_session(f);
  const double ppl = eval_fluency(data_path, *b.backend.backend);
  std::cout << "perplexity: " << ppl << "\n";
  return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& param_name,
              const std::string& grid_spec, const std::string& data_path,
              const std::string& out_path) {
  SessionBundle b = make_session(f);
  const SweepParam param = parse_sweep_param(param_name);
  const std::vector<double> grid = parse_grid(grid_spec);
  const auto instances = load_stereoset(data_path);
  const auto rows = sweep(param, grid, instances, b.session, f.jobs);
  const std::string csv = sweep_csv(param, rows);
  if (out_path.empty())
    std::cout << csv;
  else
    write_text_file(out_path, csv);
  return 0;
}

int cmd_bench(const CommonFlags& f, const std::string& prompts_path,
              const std::string& out_path) {
  SessionBundle b = make_session(f);

  std::vector<std::string> prompts;
  if (!prompts_path.empty()) {
    std::ifstream in(prompts_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open prompts file: " + prompts_path);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) prompts.push_back(line);
  } else {
    prompts = {"she works as a", "he works as a", "she is", "he is"};
  }
  if (prompts.empty()) throw ConfigError("no prompts to benchmark");

  struct Row {
    std::string config;
    std::size_t steps = 0;
    std::size_t calls = 0;
    double seconds = 0.0;
  };
  auto run = [&](const DecodeSession& s, const std::string& name) {
    Row row;
    row.config = name;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& p : prompts) {
      GenerateResult res = generate(p, s);
      row.steps += res.trace.steps.size();
      row.calls += res.trace.backend_call_count;
    }
    row.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return row;
  };

  DecodeSession base = b.session;
  AttributeLexicon empty_lexicon;
  base.lexicon = &empty_lexicon;  // no counterfactuals: raw backend decoding
  const Row base_row = run(base, "base");
  const Row fair_row = run(b.session, "cafie");

  std::ostringstream csv;
  csv << "config,steps,backend_calls,calls_per_token,steps_per_sec\n";
  for (const Row& r : {base_row, fair_row}) {
    const double cpt = r.steps ? static_cast<double>(r.calls) / r.steps : 0.0;
    const double sps = r.seconds > 0.0 ? r.steps / r.seconds : 0.0;
    csv << r.config << ',' << r.steps << ',' << r.calls << ',' << cpt << ','
        << sps << '\n';
  }
  std::cout << csv.str();
  if (!out_path.empty()) write_text_file(out_path, csv.str());
  return 0;
}

// Minimal CSV splitter with double-quote handling.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

int cmd_convert_stereoset(const std::string& in_path,
                          const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + in_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("upstream JSON: ") + e.what());
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write: " + out_path);

  std::size_t n = 0;
  auto emit = [&](const nlohmann::json& entry, bool use_context) {
    std::string stereo, anti, unrelated;
    for (const auto& s : entry.at("sentences")) {
      const std::string label = s.at("gold_label").get<std::string>();
      const std::string sentence = s.at("sentence").get<std::string>();
      if (label == "stereotype")
        stereo = sentence;
      else if (label == "anti-stereotype")
        anti = sentence;
      else if (label == "unrelated")
        unrelated = sentence;
    }
    if (stereo.empty() || anti.empty() || unrelated.empty()) return;
    nlohmann::json row = {
        {"id", entry.value("id", "item" + std::to_string(n))},
        {"attribute", entry.at("bias_type").get<std::string>()},
        {"context",
         use_context ? entry.at("context").get<std::string>() : std::string()},
        {"stereotype", stereo},
        {"anti_stereotype", anti},
        {"unrelated", unrelated}};
    out << row.dump() << '\n';
    ++n;
  };
  const auto& data = j.contains("data") ? j.at("data") : j;
  if (data.contains("intersentence"))
    for (const auto& e : data.at("intersentence")) emit(e, true);
  if (data.contains("intrasentence"))
    for (const auto& e : data.at("intrasentence")) emit(e, false);
  if (n == 0) throw ValidationError("no convertible instances in " + in_path);
  std::cerr << "converted " << n << " instances\n";
  return 0;
}

int cmd_convert_crows(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + in_path);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write: " + out_path);

  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty CSV: " + in_path);
  const auto cols = split_csv_line(header);
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return i;
    throw ParseError("missing CSV column \"" + name + "\" in " + in_path);
  };
  const std::size_t c_more = col("sent_more");
  const std::size_t c_less = col("sent_less");
  const std::size_t c_dir = col("stereo_antistereo");
  const std::size_t c_bias = col("bias_type");

  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::size_t needed =
        std::max({c_more, c_less, c_dir, c_bias});
    if (fields.size() <= needed)
      throw ParseError("short CSV row in " + in_path);
    nlohmann::json row = {{"id", "pair" + std::to_string(n)},
                          {"attribute", fields[c_bias]},
                          {"sent_more", fields[c_more]},
                          {"sent_less", fields[c_less]},
                          {"direction", fields[c_dir]}};
    out << row.dump() << '\n';
    ++n;
  }
  if (n == 0) throw ValidationError("no convertible pairs in " + in_path);
  std::cerr << "converted " << n << " pairs\n";
  return 0;
}

int cmd_synth(const std::string& out_dir) {
  write_synthetic_corpus(out_dir + "/corpus.txt");
  write_synthetic_stereoset(out_dir + "/stereoset.jsonl");
  write_synthetic_crows(out_dir + "/crows.jsonl");
  write_synthetic_bold(out_dir + "/bold.jsonl");
  std::cout << "wrote corpus.txt stereoset.jsonl crows.jsonl bold.jsonl to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactually calibrated text generation and fairness "
               "evaluation"};
  app.require_subcommand(1);

  // decode
  CommonFlags decode_flags;
  std::string decode_prompt, decode_trace;
  auto* decode = app.add_subcommand("decode", "generate a fair continuation");
  add_common_flags(decode, &decode_flags, true);
  decode->add_option("--prompt", decode_prompt, "prompt text")->required();
  decode->add_option("--trace", decode_trace, "write step trace JSON here");

  // train
  std::string train_corpus, train_out;
  int train_order = 3;
  double train_k = 0.01;
  std::size_t train_min_count = 1;
  auto* train = app.add_subcommand("train", "train an n-gram model");
  train->add_option("--corpus", train_corpus, "training text, one line per doc")
      ->required();
  train->add_option("--order", train_order, "n-gram order (2..5)");
  train->add_option("--k", train_k, "additive smoothing constant");
  train->add_option("--min-count", train_min_count, "vocabulary threshold");
  train->add_option("--out", train_out, "model output path")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "run a fairness benchmark");
  eval->require_subcommand(1);
  CommonFlags ss_flags, crows_flags, bold_flags, flu_flags;
  std::string ss_data, ss_report;
  auto* ss = eval->add_subcommand("stereoset", "stereotype score benchmark");
  add_common_flags(ss, &ss_flags, true);
  ss->add_option("--data", ss_data, "instances JSONL")->required();
  ss->add_option("--report", ss_report, "write JSON report here");

  std::string crows_data, crows_report;
  auto* crows = eval->add_subcommand("crows", "paired-sentence benchmark");
  add_common_flags(crows, &crows_flags, true);
  crows->add_option("--data", crows_data, "pairs JSONL")->required();
  crows->add_option("--report", crows_report, "write JSON report here");

  std::string bold_data, bold_report, bold_plot, bold_sentiment;
  int bold_generations = 10;
  auto* bold = eval->add_subcommand("bold", "open-ended sentiment benchmark");
  add_common_flags(bold, &bold_flags, true);
  bold->add_option("--data", bold_data, "prompts JSONL")->required();
  bold->add_option("--sentiment", bold_sentiment, "sentiment lexicon TSV")
      ->required();
  bold->add_option("--generations", bold_generations,
                   "continuations per prompt");
  bold->add_option("--report", bold_report, "write JSON report here");
  bold->add_option("--plot-data", bold_plot,
                   "write sentiment-fraction CSV here");

  std::string flu_data;
  auto* flu = eval->add_subcommand("fluency", "judge perplexity on a corpus");
  add_common_flags(flu, &flu_flags, true);
  flu->add_option("--data", flu_data, "text corpus, one line per doc")
      ->required();

  // sweep
  CommonFlags sweep_flags;
  std::string sweep_param, sweep_grid, sweep_data, sweep_out;
  auto* sw = app.add_subcommand("sweep", "hyperparameter grid evaluation");
  add_common_flags(sw, &sweep_flags, true);
  sw->add_option("--param", sweep_param, "lambda | alpha | temperature")
      ->required();
  sw->add_option("--grid", sweep_grid, "start:stop:step or comma list")
      ->required();
  sw->add_option("--data", sweep_data, "instances JSONL")->required();
  sw->add_option("--out", sweep_out, "CSV output path (stdout if omitted)");

  // bench
  CommonFlags bench_flags;
  std::string bench_prompts, bench_out;
  auto* bench = app.add_subcommand("bench", "decoding cost: base vs calibrated");
  add_common_flags(bench, &bench_flags, true);
  bench->add_option("--prompts", bench_prompts, "prompt file, one per line");
  bench->add_option("--out", bench_out, "CSV output path");

  // convert
  auto* convert = app.add_subcommand("convert", "import upstream benchmark files");
  convert->require_subcommand(1);
  std::string conv_ss_in, conv_ss_out, conv_cr_in, conv_cr_out;
  auto* conv_ss = convert->add_subcommand("stereoset", "upstream dev.json -> JSONL");
  conv_ss->add_option("--in", conv_ss_in, "upstream JSON")->required();
  conv_ss->add_option("--out", conv_ss_out, "instances JSONL")->required();
  auto* conv_cr = convert->add_subcommand("crows", "upstream CSV -> JSONL");
  conv_cr->add_option("--in", conv_cr_in, "upstream CSV")->required();
  conv_cr->add_option("--out", conv_cr_out, "pairs JSONL")->required();

  // synth
  std::string synth_dir = ".";
  auto* synth = app.add_subcommand("synth", "write the synthetic benchmark suite");
  synth->add_option("--out-dir", synth_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*decode) return cmd_decode(decode_flags, decode_prompt, decode_trace);
    if (*train)
      return cmd_train(train_corpus, train_order, train_k, train_min_count,
                       train_out);
    if (*ss) return cmd_eval_stereoset(ss_flags, ss_data, ss_report);
    if (*crows) return cmd_eval_crows(crows_flags, crows_data, crows_report);
    if (*bold)
      return cmd_eval_bold(bold_flags, bold_data, bold_sentiment,
                           bold_generations, bold_report, bold_plot);
    if (*flu) return cmd_eval_fluency(flu_flags, flu_data);
    if (*sw)
      return cmd_sweep(sweep_flags, sweep_param, sweep_grid, sweep_data,
                       sweep_out);
    if (*bench) return cmd_bench(bench_flags, bench_prompts, bench_out);
    if (*conv_ss) return cmd_convert_stereoset(conv_ss_in, conv_ss_out);
    if (*conv_cr) return cmd_convert_crows(conv_cr_in, conv_cr_out);
    if (*synth) return cmd_synth(synth_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BackendUnavailable& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 3;
  } catch (const VocabMismatch& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
