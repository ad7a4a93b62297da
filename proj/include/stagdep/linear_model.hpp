// Sparse multiclass linear model over string features, trained with the
// averaged perceptron.  Shared by the transition classifier and the
// sequence tagger; both serialize through the same versioned text format:
//
//   stagdep-model<TAB>v1<TAB><kind>
//   meta<TAB><key><TAB><value>      (zero or more)
//   classes<TAB><k>                 followed by k class lines
//   weights<TAB><m>                 followed by m "feature<TAB>class<TAB>weight" lines
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "stagdep/util.hpp"

namespace stagdep {

struct LinearModel {
  std::string kind;  // "classifier" or "tagger"
  std::vector<std::string> classes;
  // feature -> dense row of per-class weights (size = classes.size()).
  std::unordered_map<std::string, std::vector<double>> weights;
  std::map<std::string, std::string> meta;

  int num_classes() const { return static_cast<int>(classes.size()); }
  int class_id(const std::string& name) const;  // -1 when absent

  void add_scores(const std::string& feature, std::vector<double>& scores) const;

  // Argmax over legal classes, ties broken by inventory order.
  // `legal` may be empty meaning all classes; otherwise it must have one
  // entry per class and at least one true entry.
  int predict(const std::vector<std::string>& features,
              const std::vector<char>& legal = {}) const;
};

void save_model(const LinearModel& model, std::ostream& out);
void save_model_file(const LinearModel& model, const std::string& path);
LinearModel load_model(std::istream& in);
LinearModel load_model_file(const std::string& path);

struct LearnerConfig {
  int epochs = 10;
  uint64_t seed = 1;
  bool shuffle = true;
};

// One transition decision: features, gold class index, per-class legality.
struct Instance {
  std::vector<std::string> features;
  int gold = 0;
  std::vector<char> legal;  // empty = all legal
};

// Averaged-perceptron training over a fixed class inventory.  Deterministic
// given (classes, instances, config).  Throws DataError when an instance's
// gold class is illegal under its mask.
LinearModel train_classifier(const std::vector<std::string>& classes,
                             const std::vector<Instance>& instances,
                             const LearnerConfig& config);

// Training-time weight table with lazily updated running averages.
// Used internally by train_classifier and by the sequence tagger, whose
// feature extraction depends on its own predictions during the epoch loop.
class AveragedTrainer {
 public:
  explicit AveragedTrainer(int num_classes) : num_classes_(num_classes) {}

  int intern(const std::string& feature);
  int feature_id(const std::string& feature) const;  // -1 when unseen

  // Argmax with current (non-averaged) weights; ties by lowest class index.
  int predict(const std::vector<int>& features, const std::vector<char>* legal) const;

  void update(const std::vector<int>& features, int gold_cls, int pred_cls);
  void tick() { ++step_; }

  // Running average over all steps, exported as sparse rows.
  void export_averaged(LinearModel* out) const;

 private:
  struct Row {
    std::vector<double> weight;
    std::vector<double> total;
    std::vector<int64_t> stamp;
  };
  void bump(int feature, int cls, double delta);

  int num_classes_;
  int64_t step_ = 0;
  std::vector<Row> rows_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace stagdep
