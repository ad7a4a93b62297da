// stagdep command line: supertag extraction, sequence tagging, parser
// training, parsing, evaluation and the cross-validation experiment.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stagdep/conllx.hpp"
#include "stagdep/eval.hpp"
#include "stagdep/experiment.hpp"
#include "stagdep/pipeline.hpp"
#include "stagdep/supertag.hpp"
#include "stagdep/tagger.hpp"

using namespace stagdep;

namespace {

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << content;
}

void write_corpus(const std::string& path, const std::vector<Sentence>& corpus,
                  const WriteOptions& opts) {
  if (path == "-") {
    write_conllx(corpus, std::cout, opts);
    return;
  }
  write_conllx_file(corpus, path, opts);
}

struct GlobalOpts {
  uint64_t seed = 1;
  bool seed_given = false;
  std::string policy_file;
  std::string templates_file;

  SupertagPolicy policy() const {
    return policy_file.empty() ? SupertagPolicy{} : load_policy_file(policy_file);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transition-based dependency parsing with supertag features"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "RNG seed for training and splits")
      ->each([&](const std::string&) { global.seed_given = true; });
  app.add_option("--policy-file", global.policy_file, "supertag policy file (key = value)");
  app.add_option("--templates-file", global.templates_file, "feature template file");

  // extract
  auto* cmd_extract = app.add_subcommand("extract", "annotate a treebank with gold supertags");
  cmd_extract->fallthrough();
  std::string ex_model = "M1", ex_in, ex_out = "-";
  cmd_extract->add_option("--model", ex_model, "supertag model: M0, M1 or M2");
  cmd_extract->add_option("-i,--input", ex_in, "input CoNLL-X treebank")->required();
  cmd_extract->add_option("-o,--output", ex_out, "annotated output ('-' = stdout)");

  // vocab
  auto* cmd_vocab = app.add_subcommand("vocab", "report the supertag vocabulary of a treebank");
  cmd_vocab->fallthrough();
  std::string vo_model = "M1", vo_in, vo_out = "-";
  cmd_vocab->add_option("--model", vo_model, "supertag model: M0, M1 or M2");
  cmd_vocab->add_option("-i,--input", vo_in, "input CoNLL-X treebank")->required();
  cmd_vocab->add_option("-o,--output", vo_out, "tag<TAB>count output ('-' = stdout)");

  // train-tagger
  auto* cmd_ttag = app.add_subcommand("train-tagger", "train the sequence tagger");
  cmd_ttag->fallthrough();
  std::string tt_target = "stag", tt_in, tt_out;
  TaggerConfig tt_config;
  cmd_ttag->add_option("--target", tt_target, "what to tag: stag (FEATS stag=) or pos");
  cmd_ttag->add_option("-i,--input", tt_in, "annotated CoNLL-X training data")->required();
  cmd_ttag->add_option("-o,--output", tt_out, "model file to write")->required();
  cmd_ttag->add_option("--epochs", tt_config.epochs, "training epochs");
  cmd_ttag->add_option("--window", tt_config.window, "form context radius");
  cmd_ttag->add_option("--max-affix-len", tt_config.max_affix_len, "affix feature length");
  bool tt_no_pos = false;
  cmd_ttag->add_flag("--no-pos-features", tt_no_pos, "drop POS input features");

  // tag
  auto* cmd_tag = app.add_subcommand("tag", "tag a corpus with a trained tagger");
  cmd_tag->fallthrough();
  std::string tg_model, tg_in, tg_out = "-";
  cmd_tag->add_option("--model-file", tg_model, "trained tagger model")->required();
  cmd_tag->add_option("-i,--input", tg_in, "input CoNLL-X corpus")->required();
  cmd_tag->add_option("-o,--output", tg_out, "tagged output ('-' = stdout)");

  // train-parser
  auto* cmd_tpar = app.add_subcommand("train-parser", "train a transition classifier");
  cmd_tpar->fallthrough();
  std::string tp_templates = "supertag", tp_in, tp_out;
  LearnerConfig tp_config;
  cmd_tpar->add_option("--templates", tp_templates, "template set: baseline or supertag");
  cmd_tpar->add_option("-i,--input", tp_in, "gold CoNLL-X training data")->required();
  cmd_tpar->add_option("-o,--output", tp_out, "model file to write")->required();
  cmd_tpar->add_option("--epochs", tp_config.epochs, "training epochs");
  bool tp_no_shuffle = false;
  cmd_tpar->add_flag("--no-shuffle", tp_no_shuffle, "keep instance order across epochs");

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a corpus with a trained model");
  cmd_parse->fallthrough();
  std::string pa_model, pa_in, pa_out = "-";
  cmd_parse->add_option("--model-file", pa_model, "trained parser model")->required();
  cmd_parse->add_option("-i,--input", pa_in, "input CoNLL-X corpus")->required();
  cmd_parse->add_option("-o,--output", pa_out, "parsed output ('-' = stdout)");

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "score a parse against gold");
  cmd_eval->fallthrough();
  std::string ev_gold, ev_pred;
  EvalOptions ev_opts;
  bool ev_tsv = false;
  cmd_eval->add_option("--gold", ev_gold, "gold CoNLL-X file")->required();
  cmd_eval->add_option("--pred", ev_pred, "predicted CoNLL-X file")->required();
  cmd_eval->add_flag("--exclude-punct", ev_opts.exclude_punct, "drop gold punctuation tokens");
  cmd_eval->add_option("--punct-label", ev_opts.punct_label, "punctuation deprel");
  cmd_eval->add_flag("--tsv", ev_tsv, "machine-readable per-relation lines only");

  // experiment
  auto* cmd_exp = app.add_subcommand("experiment", "k-fold cross-validation experiment");
  cmd_exp->fallthrough();
  std::string xp_spec_file, xp_corpus, xp_models, xp_conditions, xp_out, xp_punct;
  int xp_k = -1, xp_tagger_epochs = -1, xp_parser_epochs = -1;
  bool xp_exclude_punct = false;
  cmd_exp->add_option("--spec", xp_spec_file, "experiment spec file (key = value)");
  cmd_exp->add_option("--corpus", xp_corpus, "CoNLL-X treebank");
  cmd_exp->add_option("--k", xp_k, "number of folds");
  cmd_exp->add_option("--models", xp_models, "comma list from baseline,M0,M1,M2");
  cmd_exp->add_option("--conditions", xp_conditions, "comma list from gold,automatic");
  cmd_exp->add_option("--out", xp_out, "output directory for reports and artifacts");
  cmd_exp->add_flag("--exclude-punct", xp_exclude_punct, "drop gold punctuation tokens");
  cmd_exp->add_option("--punct-label", xp_punct, "punctuation deprel");
  cmd_exp->add_option("--tagger-epochs", xp_tagger_epochs, "supertagger epochs");
  cmd_exp->add_option("--parser-epochs", xp_parser_epochs, "parser epochs");

  try {
    app.parse(argc, argv);

    if (cmd_extract->parsed()) {
      std::vector<Sentence> corpus = read_conllx_file(ex_in);
      annotate_corpus(corpus, supertag_model_from_string(ex_model), global.policy());
      WriteOptions opts;
      opts.stag_from = StagField::Gold;
      write_corpus(ex_out, corpus, opts);
    } else if (cmd_vocab->parsed()) {
      std::vector<Sentence> corpus = read_conllx_file(vo_in);
      SupertagVocab vocab =
          build_vocabulary(corpus, supertag_model_from_string(vo_model), global.policy());
      std::ostringstream buf;
      write_vocab(vocab, buf);
      write_text(vo_out, buf.str());
    } else if (cmd_ttag->parsed()) {
      if (global.seed_given) tt_config.seed = global.seed;
      ReadOptions ropts;
      ropts.require_tree = false;
      std::vector<Sentence> corpus = read_conllx_file(tt_in, ropts);
      if (corpus.empty()) throw DataError(tt_in + ": empty corpus");
      std::vector<TaggerExample> examples;
      if (tt_target == "stag") {
        if (tt_no_pos) tt_config.use_pos_column = false;
        for (const Sentence& s : corpus) {
          TaggerExample ex;
          for (const Token& t : s.tokens) {
            if (!t.gold_supertag) {
              throw DataError(tt_in + ": token '" + t.form +
                              "' lacks a stag= annotation (run extract first)");
            }
            ex.tokens.push_back({t.form, t.pos});
            ex.tags.push_back(*t.gold_supertag);
          }
          examples.push_back(std::move(ex));
        }
      } else if (tt_target == "pos") {
        tt_config.use_pos_column = false;  // the POS column is the answer here
        for (const Sentence& s : corpus) {
          TaggerExample ex;
          for (const Token& t : s.tokens) {
            ex.tokens.push_back({t.form, "_"});
            ex.tags.push_back(t.pos);
          }
          examples.push_back(std::move(ex));
        }
      } else {
        throw CLI::ValidationError("--target must be stag or pos");
      }
      TaggerModel model = train_tagger(examples, tt_config);
      model.core.meta["target"] = tt_target;
      save_tagger_file(model, tt_out);
    } else if (cmd_tag->parsed()) {
      TaggerModel model = load_tagger_file(tg_model);
      std::string target = model.core.meta.count("target") ? model.core.meta.at("target") : "stag";
      ReadOptions ropts;
      ropts.require_tree = false;
      std::vector<Sentence> corpus = read_conllx_file(tg_in, ropts);
      for (Sentence& s : corpus) {
        TaggerInput input;
        for (const Token& t : s.tokens) {
          input.push_back({t.form, target == "pos" ? "_" : t.pos});
        }
        std::vector<std::string> tags = tag(model, input);
        for (size_t i = 0; i < s.tokens.size(); ++i) {
          if (target == "pos") {
            s.tokens[i].pos = tags[i];
          } else {
            s.tokens[i].pred_supertag = std::move(tags[i]);
          }
        }
      }
      WriteOptions wopts;
      wopts.stag_from = target == "pos" ? StagField::None : StagField::Pred;
      write_corpus(tg_out, corpus, wopts);
    } else if (cmd_tpar->parsed()) {
      if (global.seed_given) tp_config.seed = global.seed;
      tp_config.shuffle = !tp_no_shuffle;
      FeatureTemplateSet templates = global.templates_file.empty()
                                         ? template_set_by_name(tp_templates)
                                         : load_templates_file(global.templates_file);
      std::vector<Sentence> corpus = read_conllx_file(tp_in);
      ParserModel model = train_parser(corpus, templates, tp_config);
      save_parser_file(model, tp_out);
      std::cerr << "trained on " << corpus.size() - static_cast<size_t>(model.skipped_nonprojective)
                << " sentences (" << model.skipped_nonprojective << " non-projective skipped), "
                << model.core.classes.size() << " transitions\n";
    } else if (cmd_parse->parsed()) {
      ParserModel model = load_parser_file(pa_model);
      ReadOptions ropts;
      ropts.require_tree = false;
      std::vector<Sentence> corpus = read_conllx_file(pa_in, ropts);
      std::vector<Sentence> parsed = parse_corpus(model, corpus);
      WriteOptions wopts;
      wopts.stag_from = StagField::Gold;  // keep any stag= annotation the input carried
      write_corpus(pa_out, parsed, wopts);
    } else if (cmd_eval->parsed()) {
      std::vector<Sentence> gold = read_conllx_file(ev_gold);
      std::vector<Sentence> pred = read_conllx_file(ev_pred);
      EvalReport report = evaluate(gold, pred, ev_opts);
      std::cout << (ev_tsv ? render_eval_tsv(report) : render_eval_text(report));
    } else if (cmd_exp->parsed()) {
      ExperimentSpec spec;
      if (!xp_spec_file.empty()) spec = load_spec_file(xp_spec_file);
      if (global.seed_given) {
        spec.seed = global.seed;
        spec.tagger.seed = global.seed;
        spec.learner.seed = global.seed;
      }
      if (!global.policy_file.empty()) spec.policy = global.policy();
      if (!xp_corpus.empty()) spec.corpus_path = xp_corpus;
      if (xp_k > 0) spec.k = xp_k;
      if (!xp_models.empty()) spec.models = split(xp_models, ',');
      if (!xp_conditions.empty()) spec.conditions = split(xp_conditions, ',');
      if (!xp_out.empty()) spec.out_dir = xp_out;
      if (cmd_exp->count("--exclude-punct") > 0) spec.eval.exclude_punct = xp_exclude_punct;
      if (!xp_punct.empty()) spec.eval.punct_label = xp_punct;
      if (xp_tagger_epochs > 0) spec.tagger.epochs = xp_tagger_epochs;
      if (xp_parser_epochs > 0) spec.learner.epochs = xp_parser_epochs;
      if (spec.corpus_path.empty()) {
        throw CLI::ValidationError("experiment needs --corpus or a spec file with corpus =");
      }
      ExperimentReport report = run_experiment(spec);
      std::string text = render_report_text(report);
      std::cout << text;
      if (!spec.out_dir.empty()) {
        std::filesystem::create_directories(spec.out_dir);
        write_text((std::filesystem::path(spec.out_dir) / "report.txt").string(), text);
        write_text((std::filesystem::path(spec.out_dir) / "report.tsv").string(),
                   render_report_tsv(report));
      }
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
