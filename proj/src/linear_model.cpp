#include "stagdep/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace stagdep {

int LinearModel::class_id(const std::string& name) const {
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void LinearModel::add_scores(const std::string& feature, std::vector<double>& scores) const {
  auto it = weights.find(feature);
  if (it == weights.end()) return;
  const std::vector<double>& row = it->second;
  for (size_t c = 0; c < row.size(); ++c) scores[c] += row[c];
}

int LinearModel::predict(const std::vector<std::string>& features,
                         const std::vector<char>& legal) const {
  if (classes.empty()) throw DataError("predict: model has no classes");
  if (!legal.empty() && legal.size() != classes.size()) {
    throw DataError("predict: legality mask size does not match class inventory");
  }
  std::vector<double> scores(classes.size(), 0.0);
  for (const std::string& f : features) add_scores(f, scores);
  int best = -1;
  for (size_t c = 0; c < classes.size(); ++c) {
    if (!legal.empty() && !legal[c]) continue;
    if (best < 0 || scores[c] > scores[static_cast<size_t>(best)]) best = static_cast<int>(c);
  }
  if (best < 0) throw DataError("predict: no legal class");
  return best;
}

namespace {

constexpr const char* kMagic = "stagdep-model";
constexpr const char* kVersion = "v1";

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(std::string("model file: missing ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void save_model(const LinearModel& model, std::ostream& out) {
  out << kMagic << '\t' << kVersion << '\t' << model.kind << '\n';
  for (const auto& [key, value] : model.meta) {
    out << "meta\t" << key << '\t' << value << '\n';
  }
  out << "classes\t" << model.classes.size() << '\n';
  for (const std::string& c : model.classes) out << c << '\n';

  std::vector<std::string> feats;
  feats.reserve(model.weights.size());
  for (const auto& [f, row] : model.weights) feats.push_back(f);
  std::sort(feats.begin(), feats.end());
  long cells = 0;
  for (const std::string& f : feats) {
    for (double w : model.weights.at(f)) {
      if (w != 0.0) ++cells;
    }
  }
  out << "weights\t" << cells << '\n';
  for (const std::string& f : feats) {
    const std::vector<double>& row = model.weights.at(f);
    for (size_t c = 0; c < row.size(); ++c) {
      if (row[c] == 0.0) continue;
      out << f << '\t' << c << '\t' << format_double(row[c]) << '\n';
    }
  }
  if (!out) throw DataError("model write failed");
}

void save_model_file(const LinearModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  save_model(model, out);
}

LinearModel load_model(std::istream& in) {
  LinearModel model;
  std::vector<std::string> header = split(expect_line(in, "header"), '\t');
  if (header.size() != 3 || header[0] != kMagic) {
    throw DataError("model file: bad header (expected stagdep-model)");
  }
  if (header[1] != kVersion) throw DataError("model file: unsupported version " + header[1]);
  model.kind = header[2];

  std::string line = expect_line(in, "classes section");
  while (starts_with(line, "meta\t")) {
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3) throw DataError("model file: malformed meta line");
    model.meta[cols[1]] = cols[2];
    line = expect_line(in, "classes section");
  }
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() != 2 || cols[0] != "classes") {
    throw DataError("model file: expected 'classes<TAB>count'");
  }
  long num_classes = std::strtol(cols[1].c_str(), nullptr, 10);
  if (num_classes <= 0) throw DataError("model file: class inventory is empty");
  for (long i = 0; i < num_classes; ++i) {
    model.classes.push_back(expect_line(in, "class line"));
  }

  cols = split(expect_line(in, "weights section"), '\t');
  if (cols.size() != 2 || cols[0] != "weights") {
    throw DataError("model file: expected 'weights<TAB>count'");
  }
  long cells = std::strtol(cols[1].c_str(), nullptr, 10);
  for (long i = 0; i < cells; ++i) {
    cols = split(expect_line(in, "weight line"), '\t');
    if (cols.size() != 3) throw DataError("model file: malformed weight line");
    long cls = std::strtol(cols[1].c_str(), nullptr, 10);
    if (cls < 0 || cls >= num_classes) throw DataError("model file: class index out of range");
    double w = std::strtod(cols[2].c_str(), nullptr);
    if (!std::isfinite(w)) throw DataError("model file: non-finite weight");
    auto it = model.weights.find(cols[0]);
    if (it == model.weights.end()) {
      it = model.weights.emplace(cols[0], std::vector<double>(static_cast<size_t>(num_classes), 0.0)).first;
    }
    it->second[static_cast<size_t>(cls)] = w;
  }
  return model;
}

LinearModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file " + path);
  try {
    return load_model(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

int AveragedTrainer::intern(const std::string& feature) {
  auto it = ids_.find(feature);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  ids_.emplace(feature, id);
  names_.push_back(feature);
  rows_.push_back(Row{std::vector<double>(static_cast<size_t>(num_classes_), 0.0),
                      std::vector<double>(static_cast<size_t>(num_classes_), 0.0),
                      std::vector<int64_t>(static_cast<size_t>(num_classes_), 0)});
  return id;
}

int AveragedTrainer::feature_id(const std::string& feature) const {
  auto it = ids_.find(feature);
  return it == ids_.end() ? -1 : it->second;
}

int AveragedTrainer::predict(const std::vector<int>& features,
                             const std::vector<char>* legal) const {
  std::vector<double> scores(static_cast<size_t>(num_classes_), 0.0);
  for (int f : features) {
    const std::vector<double>& w = rows_[static_cast<size_t>(f)].weight;
    for (int c = 0; c < num_classes_; ++c) scores[static_cast<size_t>(c)] += w[static_cast<size_t>(c)];
  }
  int best = -1;
  for (int c = 0; c < num_classes_; ++c) {
    if (legal && !(*legal)[static_cast<size_t>(c)]) continue;
    if (best < 0 || scores[static_cast<size_t>(c)] > scores[static_cast<size_t>(best)]) best = c;
  }
  return best;
}

void AveragedTrainer::bump(int feature, int cls, double delta) {
  Row& row = rows_[static_cast<size_t>(feature)];
  size_t c = static_cast<size_t>(cls);
  row.total[c] += static_cast<double>(step_ - row.stamp[c]) * row.weight[c];
  row.stamp[c] = step_;
  row.weight[c] += delta;
}

void AveragedTrainer::update(const std::vector<int>& features, int gold_cls, int pred_cls) {
  for (int f : features) {
    bump(f, gold_cls, +1.0);
    bump(f, pred_cls, -1.0);
  }
}

void AveragedTrainer::export_averaged(LinearModel* out) const {
  out->weights.clear();
  if (step_ == 0) return;
  for (size_t f = 0; f < rows_.size(); ++f) {
    const Row& row = rows_[f];
    std::vector<double> avg(static_cast<size_t>(num_classes_), 0.0);
    bool any = false;
    for (int c = 0; c < num_classes_; ++c) {
      size_t ci = static_cast<size_t>(c);
      double total = row.total[ci] + static_cast<double>(step_ - row.stamp[ci]) * row.weight[ci];
      avg[ci] = total / static_cast<double>(step_);
      if (avg[ci] != 0.0) any = true;
    }
    if (any) out->weights.emplace(names_[f], std::move(avg));
  }
}

LinearModel train_classifier(const std::vector<std::string>& classes,
                             const std::vector<Instance>& instances,
                             const LearnerConfig& config) {
  if (classes.empty()) throw DataError("train_classifier: empty class inventory");
  if (config.epochs < 0) throw DataError("train_classifier: epochs must be >= 0");

  for (size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    if (inst.gold < 0 || inst.gold >= static_cast<int>(classes.size())) {
      throw DataError("train_classifier: instance " + std::to_string(i) +
                      " has out-of-range gold class");
    }
    if (!inst.legal.empty() &&
        (inst.legal.size() != classes.size() || !inst.legal[static_cast<size_t>(inst.gold)])) {
      throw DataError("train_classifier: instance " + std::to_string(i) +
                      " has gold class '" + classes[static_cast<size_t>(inst.gold)] +
                      "' illegal under its mask");
    }
  }

  AveragedTrainer trainer(static_cast<int>(classes.size()));
  std::vector<std::vector<int>> feats(instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    feats[i].reserve(instances[i].features.size());
    for (const std::string& f : instances[i].features) feats[i].push_back(trainer.intern(f));
  }

  std::vector<size_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) rng.shuffle(order);
    for (size_t i : order) {
      const Instance& inst = instances[i];
      const std::vector<char>* mask = inst.legal.empty() ? nullptr : &inst.legal;
      int pred = trainer.predict(feats[i], mask);
      if (pred != inst.gold) trainer.update(feats[i], inst.gold, pred);
      trainer.tick();
    }
  }

  LinearModel model;
  model.kind = "classifier";
  model.classes = classes;
  trainer.export_averaged(&model);
  return model;
}

}  // namespace stagdep
