#include "srlp/eval.hpp"

#include <set>
#include <tuple>

#include <json.hpp>

#include "srlp/error.hpp"

namespace srlp {

namespace {

constexpr const char* kSenseKey = "SENSE";

using Edge = std::tuple<int, int, std::string>;  // predicate pos, arg pos, role

void collect(const Sentence& sent, std::set<Edge>* edges,
             std::map<int, std::string>* senses) {
  for (const auto& f : sent.frames) {
    (*senses)[f.position] = f.sense;
    for (const auto& d : f.args) edges->insert(Edge{f.position, d.arg_index, d.role});
  }
}

double ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Scores score(const Corpus& gold, const Corpus& predicted, SenseMode mode) {
  if (gold.sentences.size() != predicted.sentences.size())
    fail("score: %zu gold sentences vs %zu predicted", gold.sentences.size(),
         predicted.sentences.size());

  Scores s;
  for (size_t i = 0; i < gold.sentences.size(); ++i) {
    const Sentence& g = gold.sentences[i];
    const Sentence& p = predicted.sentences[i];
    if (g.size() != p.size())
      fail("score: sentence %zu has %d gold tokens vs %d predicted", i + 1, g.size(),
           p.size());

    std::set<Edge> gold_edges, pred_edges;
    std::map<int, std::string> gold_senses, pred_senses;
    collect(g, &gold_edges, &gold_senses);
    collect(p, &pred_edges, &pred_senses);

    for (const auto& e : gold_edges) {
      auto& rc = s.per_role[std::get<2>(e)];
      ++rc.n_gold;
      ++s.n_gold;
      if (pred_edges.count(e)) {
        ++rc.n_correct;
        ++s.n_correct;
      }
    }
    for (const auto& e : pred_edges) {
      ++s.per_role[std::get<2>(e)].n_pred;
      ++s.n_pred;
    }

    auto& sc = s.per_role[kSenseKey];
    s.n_gold += static_cast<long>(gold_senses.size());
    sc.n_gold += static_cast<long>(gold_senses.size());
    s.n_pred += static_cast<long>(pred_senses.size());
    sc.n_pred += static_cast<long>(pred_senses.size());
    for (const auto& [pos, sense] : pred_senses) {
      auto git = gold_senses.find(pos);
      if (git == gold_senses.end()) continue;
      bool correct = mode == SenseMode::kGold || git->second == sense;
      if (correct) {
        ++s.n_correct;
        ++sc.n_correct;
      }
    }
  }
  s.precision = ratio(s.n_correct, s.n_pred);
  s.recall = ratio(s.n_correct, s.n_gold);
  s.f1 = (s.precision + s.recall) > 0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

std::string report_line(const Report& report) {
  return detail::strf("%.1f (%.1f)", report.gold_sense.f1 * 100.0,
                      report.auto_sense.f1 * 100.0);
}

namespace {

nlohmann::json scores_json(const Scores& s) {
  nlohmann::json roles = nlohmann::json::object();
  for (const auto& [role, rc] : s.per_role)
    roles[role] = {{"n_gold", rc.n_gold}, {"n_pred", rc.n_pred},
                   {"n_correct", rc.n_correct}};
  return {{"precision", s.precision}, {"recall", s.recall},   {"f1", s.f1},
          {"n_gold", s.n_gold},       {"n_pred", s.n_pred},   {"n_correct", s.n_correct},
          {"per_role", roles}};
}

}  // namespace

std::string report_json(const Report& report) {
  nlohmann::json j = {{"gold_sense", scores_json(report.gold_sense)},
                      {"auto_sense", scores_json(report.auto_sense)},
                      {"summary", report_line(report)}};
  return j.dump();
}

}  // namespace srlp
