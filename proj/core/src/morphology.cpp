#include "srlp/morphology.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "srlp/error.hpp"
#include "srlp/text.hpp"

namespace srlp {

StemLexicon compile_lexicon(std::istream& in, std::ostream* warnings) {
  StemLexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      fail("line %d: expected \"word<TAB>morph/TAG ...\"", line_no);
    std::string word = line.substr(0, tab);
    if (word.empty()) fail("line %d: empty word", line_no);

    std::string stem_run;
    bool in_run = false, run_done = false, any_stm = false;
    for (const std::string& piece : split_ws(line.substr(tab + 1))) {
      std::size_t slash = piece.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == piece.size())
        fail("line %d: malformed morph \"%s\"", line_no, piece.c_str());
      std::string morph = piece.substr(0, slash);
      std::string tag = piece.substr(slash + 1);
      if (tag == "STM") {
        any_stm = true;
        if (!run_done) {
          stem_run += morph;  // first maximal STM run
          in_run = true;
        }
      } else {
        if (in_run) run_done = true;
        if (tag == "PRE") lex.prefixes.insert(morph);
        else if (tag == "SUF") lex.suffixes.insert(morph);
        else fail("line %d: unknown morph tag \"%s\"", line_no, tag.c_str());
      }
    }
    if (!any_stm) {
      if (warnings)
        *warnings << "warning: line " << line_no << ": no STM morph for \"" << word
                  << "\", stemming to itself\n";
      lex.known_stems[word] = word;
    } else {
      if (word.find(stem_run) == std::string::npos)
        fail("line %d: stem \"%s\" is not a substring of \"%s\"", line_no,
             stem_run.c_str(), word.c_str());
      lex.known_stems[word] = stem_run;
    }
  }
  lex.prefixes.erase("");
  lex.suffixes.erase("");
  return lex;
}

StemLexicon compile_lexicon_file(const std::string& path, std::ostream* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: %s", path.c_str());
  return compile_lexicon(in, warnings);
}

StemLexicon compile_lemma_lexicon(std::istream& in) {
  StemLexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      fail("line %d: expected \"word<TAB>lemma\"", line_no);
    lex.known_stems[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return lex;
}

StemLexicon compile_lemma_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: %s", path.c_str());
  return compile_lemma_lexicon(in);
}

std::string stem(const StemLexicon& lexicon, const std::string& word) {
  if (word.empty()) fail("stem: empty word");
  auto it = lexicon.known_stems.find(word);
  if (it != lexicon.known_stems.end()) return it->second;

  // OOV: longest-match stripping, prefix first, never emptying the word.
  std::string_view rest = word;
  std::size_t best = 0;
  for (const auto& p : lexicon.prefixes)
    if (p.size() > best && p.size() < rest.size() && rest.substr(0, p.size()) == p)
      best = p.size();
  rest.remove_prefix(best);

  best = 0;
  for (const auto& s : lexicon.suffixes)
    if (s.size() > best && s.size() < rest.size() &&
        rest.substr(rest.size() - s.size()) == s)
      best = s.size();
  rest.remove_suffix(best);
  return std::string(rest);
}

std::string serialize_lexicon(const StemLexicon& lexicon) {
  nlohmann::json stems = nlohmann::json::object();
  for (const auto& [w, s] :
       std::map<std::string, std::string>(lexicon.known_stems.begin(),
                                          lexicon.known_stems.end()))
    stems[w] = s;
  nlohmann::json j{
      {"prefixes", std::vector<std::string>(lexicon.prefixes.begin(), lexicon.prefixes.end())},
      {"suffixes", std::vector<std::string>(lexicon.suffixes.begin(), lexicon.suffixes.end())},
      {"stems", stems}};
  return j.dump();
}

StemLexicon parse_lexicon(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail("bad lexicon JSON: %s", e.what());
  }
  StemLexicon lex;
  try {
    for (const auto& p : j.at("prefixes").get<std::vector<std::string>>())
      if (!p.empty()) lex.prefixes.insert(p);
    for (const auto& s : j.at("suffixes").get<std::vector<std::string>>())
      if (!s.empty()) lex.suffixes.insert(s);
    for (const auto& [w, s] : j.at("stems").items())
      lex.known_stems[w] = s.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail("bad lexicon JSON: %s", e.what());
  }
  return lex;
}

StemLexicon load_lexicon_file(const std::string& path) {
  return parse_lexicon(read_file(path));
}

}  // namespace srlp
