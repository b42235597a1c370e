#include "gsm/crn.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "gsm/errors.hpp"
#include "gsm/text.hpp"

namespace gsm {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// One `;`-delimited statement of one source line, with error positions
// reported against the original column numbers.
class StatementScanner {
 public:
  StatementScanner(const std::string& file, int line, std::size_t line_begin,
                   const std::string& text, std::size_t begin, std::size_t end)
      : file_(file),
        line_(line),
        line_begin_(line_begin),
        text_(text),
        pos_(begin),
        end_(end) {}

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(file_, line_, static_cast<int>(at - line_begin_) + 1,
                     message);
  }

  void skip_space() {
    while (pos_ < end_ &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= end_;
  }

  std::size_t position() {
    skip_space();
    return pos_;
  }

  bool looking_at(const std::string& literal) {
    skip_space();
    return text_.compare(pos_, literal.size(), literal) == 0;
  }

  void expect(const std::string& literal, const std::string& what) {
    if (!looking_at(literal)) fail("expected " + what, pos_);
    pos_ += literal.size();
  }

  std::string species() {
    skip_space();
    if (pos_ >= end_ || !is_name_start(text_[pos_]))
      fail("expected species name", pos_);
    std::size_t begin = pos_;
    while (pos_ < end_ && is_name_char(text_[pos_])) ++pos_;
    return text_.substr(begin, pos_ - begin);
  }

  double rate_until_brace() {
    skip_space();
    std::size_t begin = pos_;
    std::size_t close = text_.find('}', pos_);
    if (close == std::string::npos || close >= end_)
      fail("expected '}' after rate", pos_);
    std::size_t token_end = close;
    while (token_end > begin &&
           std::isspace(static_cast<unsigned char>(text_[token_end - 1])))
      --token_end;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + begin,
                                     text_.data() + token_end, value);
    if (ec != std::errc{} || ptr != text_.data() + token_end)
      fail("invalid rate literal", begin);
    if (!std::isfinite(value) || value <= 0.0)
      fail("rate must be positive", begin);
    pos_ = close + 1;
    return value;
  }

  long long positive_integer() {
    skip_space();
    std::size_t begin = pos_;
    while (pos_ < end_ &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    long long value = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + begin, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr == text_.data() + begin || value < 1)
      fail("expected a positive integer", begin);
    return value;
  }

 private:
  const std::string& file_;
  int line_;
  std::size_t line_begin_;
  const std::string& text_;
  std::size_t pos_;
  std::size_t end_;
};

void parse_statement(StatementScanner& scan, CrnModel& model) {
  std::size_t start = scan.position();
  SpeciesMultiset reactants;
  if (!scan.looking_at("->")) {
    std::string first = scan.species();
    if (first == "init") {
      SpeciesKey key(scan.species());
      long long count = scan.positive_integer();
      if (!scan.at_end())
        scan.fail("unexpected text after init", scan.position());
      model.initial.add(key, count);
      return;
    }
    reactants.add(SpeciesKey(first));
    while (scan.looking_at("+")) {
      scan.expect("+", "'+'");
      reactants.add(SpeciesKey(scan.species()));
    }
  }
  if (reactants.total() == 0)
    scan.fail("a reaction needs at least one reactant", start);
  if (reactants.total() > 2)
    scan.fail("at most two reactant occurrences are allowed", start);
  scan.expect("->", "'->'");
  scan.expect("{", "'{' before rate");
  double rate = scan.rate_until_brace();
  SpeciesMultiset products;
  if (!scan.at_end()) {
    for (;;) {
      products.add(SpeciesKey(scan.species()));
      if (!scan.looking_at("+")) break;
      scan.expect("+", "'+'");
    }
  }
  if (!scan.at_end()) scan.fail("unexpected trailing text", scan.position());

  Reaction reaction(std::move(reactants), rate, std::move(products));
  for (const Reaction& existing : model.table)
    if (existing == reaction) scan.fail("duplicate reaction", start);
  model.table.push_back(std::move(reaction));
}

}  // namespace

CrnModel parse_crn(const std::string& text, const std::string& filename) {
  CrnModel model;
  int line_number = 0;
  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string::npos) line_end = text.size();
    ++line_number;

    std::size_t content_end = line_end;
    std::size_t hash = text.find('#', line_begin);
    if (hash != std::string::npos && hash < line_end) content_end = hash;

    std::size_t statement_begin = line_begin;
    while (statement_begin <= content_end) {
      std::size_t semi = text.find(';', statement_begin);
      std::size_t statement_end =
          (semi != std::string::npos && semi < content_end) ? semi
                                                            : content_end;
      StatementScanner scan(filename, line_number, line_begin, text,
                            statement_begin, statement_end);
      if (!scan.at_end()) parse_statement(scan, model);
      if (statement_end == content_end) break;
      statement_begin = statement_end + 1;
    }

    if (line_end == text.size()) break;
    line_begin = line_end + 1;
  }
  return model;
}

std::string print_crn(const CrnModel& model) {
  std::string out;
  for (const Reaction& reaction : model.table) {
    out += reaction.str();
    out += '\n';
  }
  for (const auto& [key, count] : model.initial.entries()) {
    out += "init " + key.str() + " " + format_int(count);
    out += '\n';
  }
  return out;
}

std::vector<Reaction> CrnCalculus::reactions(
    const SpeciesKey& key, std::span<const SpeciesKey> existing) const {
  std::unordered_set<SpeciesKey, SpeciesKeyHash> seen(existing.begin(),
                                                      existing.end());
  std::vector<Reaction> out;
  for (const Reaction& reaction : model_.table) {
    if (!reaction.has_reactant(key)) continue;
    bool eligible = true;
    for (const auto& [reactant, count] : reaction.reactants().entries()) {
      if (reactant == key) continue;
      if (!seen.contains(reactant)) {
        eligible = false;
        break;
      }
    }
    if (eligible) out.push_back(reaction);
  }
  return out;
}

SpeciesKey CrnCalculus::make_species(
    const std::string& name, const std::vector<std::string>& args) const {
  if (!args.empty())
    throw ModelError("species " + name + " takes no arguments");
  if (name.empty() || !is_name_start(name.front()))
    throw ModelError("invalid species name: " + name);
  for (char c : name)
    if (!is_name_char(c)) throw ModelError("invalid species name: " + name);
  return SpeciesKey(name);
}

}  // namespace gsm
