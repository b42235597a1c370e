#include "gsm/multi.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <unordered_set>

#include "gsm/crn.hpp"
#include "gsm/errors.hpp"
#include "gsm/io.hpp"
#include "gsm/spi.hpp"

namespace gsm {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

SpeciesKey retag(const std::string& tag, const SpeciesKey& inner) {
  if (inner.str().find("::") != std::string::npos)
    throw InternalError("tag isolation violated: " + inner.str());
  return SpeciesKey(tag + "::" + inner.str());
}

SpeciesMultiset retag_multiset(const std::string& tag,
                               const SpeciesMultiset& inner) {
  SpeciesMultiset out;
  for (const auto& [key, count] : inner.entries())
    out.add(retag(tag, key), count);
  return out;
}

// Scanner for one bridge row; columns are relative to the row's line.
class RowScanner {
 public:
  RowScanner(const std::string& file, int line, std::size_t line_begin,
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

  std::string ident(const std::string& what) {
    skip_space();
    if (pos_ >= end_ || !is_name_start(text_[pos_]))
      fail("expected " + what, pos_);
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

 private:
  const std::string& file_;
  int line_;
  std::size_t line_begin_;
  const std::string& text_;
  std::size_t pos_;
  std::size_t end_;
};

// tag "::" name ("(" args ")")?, canonicalised by the owning plugin.
SpeciesKey tagged_species(RowScanner& scan, const MultiRuntime& runtime) {
  std::size_t at = scan.position();
  std::string tag = scan.ident("a calculus tag");
  scan.expect("::", "'::' after the calculus tag");
  std::string name = scan.ident("a species name");
  std::vector<std::string> args;
  if (scan.looking_at("(")) {
    scan.expect("(", "'('");
    if (!scan.looking_at(")")) {
      for (;;) {
        args.push_back(scan.ident("a channel"));
        if (!scan.looking_at(",")) break;
        scan.expect(",", "','");
      }
    }
    scan.expect(")", "')'");
  }
  try {
    return runtime.make_species(tag + "::" + name, args);
  } catch (const ModelError& error) {
    scan.fail(error.what(), at);
  }
}

void parse_bridge_row(RowScanner& scan, MultiRuntime& runtime) {
  std::size_t start = scan.position();
  SpeciesMultiset reactants;
  if (!scan.looking_at("->")) {
    for (;;) {
      reactants.add(tagged_species(scan, runtime));
      if (!scan.looking_at("+")) break;
      scan.expect("+", "'+'");
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
      products.add(tagged_species(scan, runtime));
      if (!scan.looking_at("+")) break;
      scan.expect("+", "'+'");
    }
  }
  if (!scan.at_end()) scan.fail("unexpected trailing text", scan.position());
  try {
    runtime.add_bridge(Reaction(std::move(reactants), rate,
                                std::move(products)));
  } catch (const ModelError& error) {
    scan.fail(error.what(), start);
  }
}

std::vector<std::string> header_words(const std::string& inner) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < inner.size()) {
    while (i < inner.size() &&
           std::isspace(static_cast<unsigned char>(inner[i])))
      ++i;
    std::size_t begin = i;
    while (i < inner.size() &&
           !std::isspace(static_cast<unsigned char>(inner[i])))
      ++i;
    if (i > begin) words.push_back(inner.substr(begin, i - begin));
  }
  return words;
}

std::unique_ptr<Calculus> load_sub_model(const std::string& path,
                                         const std::string& multi_file,
                                         int line) {
  std::filesystem::path resolved(path);
  if (resolved.is_relative())
    resolved = std::filesystem::path(multi_file).parent_path() / resolved;
  std::string extension = resolved.extension().string();
  if (extension == ".crn")
    return std::make_unique<CrnCalculus>(
        parse_crn(read_text_file(resolved.string()), resolved.string()));
  if (extension == ".spi")
    return std::make_unique<SpiCalculus>(
        parse_spi(read_text_file(resolved.string()), resolved.string()));
  if (extension == ".multi")
    throw ParseError(multi_file, line, 1, "nested multi models are not supported");
  throw ParseError(multi_file, line, 1, "unknown model extension: " + path);
}

}  // namespace

void MultiRuntime::register_calculus(const std::string& tag,
                                     std::unique_ptr<Calculus> plugin) {
  if (tag.empty() || !is_name_start(tag.front()))
    throw ModelError("invalid calculus tag: " + tag);
  for (char c : tag)
    if (!is_name_char(c)) throw ModelError("invalid calculus tag: " + tag);
  for (const Entry& entry : entries_)
    if (entry.tag == tag) throw ModelError("duplicate calculus tag: " + tag);
  entries_.push_back(Entry{tag, std::move(plugin)});
}

void MultiRuntime::add_bridge(const Reaction& reaction) {
  std::unordered_set<std::string> tags_seen;
  auto collect = [&](const SpeciesMultiset& side) {
    for (const auto& [key, count] : side.entries()) {
      auto [tag, inner] = split_tag(key);
      entry_for(tag);
      tags_seen.insert(tag);
    }
  };
  collect(reaction.reactants());
  collect(reaction.products());
  if (tags_seen.size() < 2)
    throw ModelError("bridge reaction must span two calculi: " +
                     reaction.str());
  for (const Reaction& present : bridge_)
    if (present == reaction)
      throw ModelError("duplicate bridge reaction: " + reaction.str());
  bridge_.push_back(reaction);
}

std::vector<std::string> MultiRuntime::tags() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const Entry& entry : entries_) out.push_back(entry.tag);
  return out;
}

std::pair<std::string, std::string> MultiRuntime::split_tag(
    const SpeciesKey& key) {
  std::size_t pos = key.str().find("::");
  if (pos == std::string::npos)
    throw ModelError("species without calculus tag: " + key.str());
  return {key.str().substr(0, pos), key.str().substr(pos + 2)};
}

const MultiRuntime::Entry& MultiRuntime::entry_for(
    const std::string& tag) const {
  for (const Entry& entry : entries_)
    if (entry.tag == tag) return entry;
  throw ModelError("unknown calculus tag: " + tag);
}

SpeciesMultiset MultiRuntime::initial_species() const {
  SpeciesMultiset out;
  for (const Entry& entry : entries_) {
    SpeciesMultiset tagged = retag_multiset(entry.tag,
                                            entry.plugin->initial_species());
    out = out.plus(tagged);
  }
  return out;
}

std::vector<Reaction> MultiRuntime::reactions(
    const SpeciesKey& key, std::span<const SpeciesKey> existing) const {
  auto [tag, inner_text] = split_tag(key);
  const Entry& entry = entry_for(tag);

  std::vector<SpeciesKey> inner_existing;
  for (const SpeciesKey& other : existing) {
    auto [other_tag, other_inner] = split_tag(other);
    if (other_tag == tag) inner_existing.push_back(SpeciesKey(other_inner));
  }

  std::vector<Reaction> out;
  for (const Reaction& reaction :
       entry.plugin->reactions(SpeciesKey(inner_text), inner_existing))
    out.emplace_back(retag_multiset(tag, reaction.reactants()),
                     reaction.rate(),
                     retag_multiset(tag, reaction.products()));

  std::unordered_set<SpeciesKey, SpeciesKeyHash> seen(existing.begin(),
                                                      existing.end());
  for (const Reaction& row : bridge_) {
    if (!row.has_reactant(key)) continue;
    bool eligible = true;
    for (const auto& [reactant, count] : row.reactants().entries()) {
      if (reactant == key) continue;
      if (!seen.contains(reactant)) {
        eligible = false;
        break;
      }
    }
    if (eligible) out.push_back(row);
  }
  return out;
}

SpeciesKey MultiRuntime::make_species(
    const std::string& name, const std::vector<std::string>& args) const {
  std::size_t pos = name.find("::");
  if (pos == std::string::npos)
    throw ModelError("species must be written calculus::name: " + name);
  std::string tag = name.substr(0, pos);
  const Entry& entry = entry_for(tag);
  return retag(tag, entry.plugin->make_species(name.substr(pos + 2), args));
}

std::string MultiRuntime::display_name(const SpeciesKey& key) const {
  if (entries_.size() == 1 && bridge_.empty()) return split_tag(key).second;
  return key.str();
}

std::unique_ptr<MultiRuntime> parse_multi(const std::string& path) {
  std::string text = read_text_file(path);
  auto runtime = std::make_unique<MultiRuntime>();
  bool in_bridge = false;
  int line_number = 0;
  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string::npos) line_end = text.size();
    ++line_number;

    std::size_t content_end = line_end;
    std::size_t hash = text.find('#', line_begin);
    if (hash != std::string::npos && hash < line_end) content_end = hash;

    std::size_t first = line_begin;
    while (first < content_end &&
           std::isspace(static_cast<unsigned char>(text[first])))
      ++first;

    if (first < content_end && text[first] == '[') {
      std::size_t close = text.find(']', first);
      if (close == std::string::npos || close >= content_end)
        throw ParseError(path, line_number,
                         static_cast<int>(first - line_begin) + 1,
                         "unterminated section header");
      std::size_t tail = close + 1;
      while (tail < content_end &&
             std::isspace(static_cast<unsigned char>(text[tail])))
        ++tail;
      if (tail != content_end)
        throw ParseError(path, line_number,
                         static_cast<int>(tail - line_begin) + 1,
                         "unexpected text after section header");
      std::vector<std::string> words =
          header_words(text.substr(first + 1, close - first - 1));
      if (!words.empty() && words[0] == "calculus") {
        if (words.size() != 3)
          throw ParseError(path, line_number,
                           static_cast<int>(first - line_begin) + 1,
                           "expected [calculus TAG PATH]");
        std::unique_ptr<Calculus> plugin =
            load_sub_model(words[2], path, line_number);
        try {
          runtime->register_calculus(words[1], std::move(plugin));
        } catch (const ModelError& error) {
          throw ParseError(path, line_number,
                           static_cast<int>(first - line_begin) + 1,
                           error.what());
        }
        in_bridge = false;
      } else if (words.size() == 1 && words[0] == "bridge") {
        in_bridge = true;
      } else {
        throw ParseError(path, line_number,
                         static_cast<int>(first - line_begin) + 1,
                         "unknown section header");
      }
    } else {
      std::size_t statement_begin = line_begin;
      while (statement_begin <= content_end) {
        std::size_t semi = text.find(';', statement_begin);
        std::size_t statement_end =
            (semi != std::string::npos && semi < content_end) ? semi
                                                              : content_end;
        RowScanner scan(path, line_number, line_begin, text, statement_begin,
                        statement_end);
        if (!scan.at_end()) {
          if (!in_bridge)
            scan.fail("reaction rows must appear inside [bridge]",
                      scan.position());
          parse_bridge_row(scan, *runtime);
        }
        if (statement_end == content_end) break;
        statement_begin = statement_end + 1;
      }
    }

    if (line_end == text.size()) break;
    line_begin = line_end + 1;
  }
  return runtime;
}

}  // namespace gsm
