#include "gsm/spi.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>
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

bool is_keyword(const std::string& word) {
  return word == "new" || word == "run" || word == "delay";
}

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(const std::string& text, const std::string& file) {
  std::vector<Token> tokens;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto emit = [&](Token::Kind kind, std::size_t begin, std::size_t end) {
    tokens.push_back(Token{kind, text.substr(begin, end - begin), line, col});
    col += static_cast<int>(end - begin);
    i = end;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (is_name_start(c)) {
      std::size_t end = i;
      while (end < text.size() && is_name_char(text[end])) ++end;
      emit(Token::Ident, i, end);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = i;
      while (end < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[end])))
        ++end;
      if (end < text.size() && text[end] == '.' && end + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[end + 1]))) {
        ++end;
        while (end < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[end])))
          ++end;
      }
      if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
        std::size_t mark = end + 1;
        if (mark < text.size() && (text[mark] == '+' || text[mark] == '-'))
          ++mark;
        if (mark < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[mark]))) {
          end = mark;
          while (end < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[end])))
            ++end;
        }
      }
      emit(Token::Number, i, end);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      emit(Token::Punct, i, i + 2);
      continue;
    }
    if (std::string("@;=+!?(),|").find(c) != std::string::npos) {
      emit(Token::Punct, i, i + 1);
      continue;
    }
    throw ParseError(file, line, col,
                     std::string("unexpected character '") + c + "'");
  }
  tokens.push_back(Token{Token::End, "", line, col});
  return tokens;
}

class SpiParser {
 public:
  SpiParser(std::vector<Token> tokens, std::string file)
      : tokens_(std::move(tokens)), file_(std::move(file)) {}

  SpiProgram parse() {
    while (peek().kind != Token::End) {
      if (at_ident("new")) {
        parse_channel();
      } else if (at_ident("run")) {
        parse_main();
      } else if (peek().kind == Token::Ident) {
        parse_definition();
      } else {
        fail(peek(), "expected 'new', a definition, or 'run'");
      }
    }
    return std::move(program_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(file_, at.line, at.col, message);
  }

  bool at_ident(const char* word) const {
    return peek().kind == Token::Ident && peek().text == word;
  }

  bool at_punct(const char* punct) const {
    return peek().kind == Token::Punct && peek().text == punct;
  }

  void expect_punct(const char* punct, const std::string& what) {
    if (!at_punct(punct)) fail(peek(), "expected " + what);
    take();
  }

  Token name(const std::string& what) {
    if (peek().kind != Token::Ident) fail(peek(), "expected " + what);
    if (is_keyword(peek().text))
      fail(peek(), "keyword '" + peek().text + "' cannot name " + what);
    return take();
  }

  double positive_rate() {
    if (peek().kind != Token::Number) fail(peek(), "expected a rate");
    Token tok = take();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.text.data(),
                                     tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
      fail(tok, "invalid rate literal");
    if (!std::isfinite(value) || value <= 0.0)
      fail(tok, "rate must be positive");
    return value;
  }

  // "(" name ("," name)* ")" with an empty list allowed.
  std::vector<std::string> name_list(const std::string& what) {
    expect_punct("(", "'('");
    std::vector<std::string> names;
    if (!at_punct(")")) {
      for (;;) {
        names.push_back(name(what).text);
        if (!at_punct(",")) break;
        take();
      }
    }
    expect_punct(")", "')'");
    return names;
  }

  void parse_channel() {
    take();  // new
    Token tok = name("a channel");
    for (const auto& [channel, rate] : program_.channels)
      if (channel == tok.text) fail(tok, "duplicate channel '" + tok.text + "'");
    expect_punct("@", "'@' and a rate");
    double rate = positive_rate();
    expect_punct(";", "';'");
    program_.channels.emplace_back(tok.text, rate);
  }

  void parse_definition() {
    Token head = name("a definition");
    for (const SpiDefinition& d : program_.definitions)
      if (d.name == head.text)
        fail(head, "duplicate definition '" + head.text + "'");
    SpiDefinition def;
    def.name = head.text;
    def.line = head.line;
    def.col = head.col;
    def.params = name_list("a parameter");
    for (std::size_t i = 0; i < def.params.size(); ++i)
      for (std::size_t j = i + 1; j < def.params.size(); ++j)
        if (def.params[i] == def.params[j])
          fail(head, "duplicate parameter '" + def.params[i] + "'");
    expect_punct("=", "'='");
    def.branches.push_back(parse_branch());
    while (at_punct("+")) {
      take();
      def.branches.push_back(parse_branch());
    }
    expect_punct(";", "';'");
    program_.definitions.push_back(std::move(def));
  }

  SpiBranch parse_branch() {
    SpiBranch branch;
    branch.line = peek().line;
    branch.col = peek().col;
    if (at_ident("delay")) {
      take();
      expect_punct("@", "'@' and a rate");
      branch.prefix = SpiPrefix::delay;
      branch.delay_rate = positive_rate();
    } else if (at_punct("!") || at_punct("?")) {
      branch.prefix =
          peek().text == "!" ? SpiPrefix::send : SpiPrefix::receive;
      take();
      branch.channel = name("a channel").text;
      if (at_punct("(")) branch.payload = name_list("a name");
    } else if (at_ident("new")) {
      fail(peek(), "name restriction is not supported");
    } else {
      fail(peek(), "expected 'delay', '!' or '?'");
    }
    if (at_punct("->")) {
      take();
      branch.continuation = parse_cont();
    }
    return branch;
  }

  std::vector<SpiInstance> parse_cont() {
    std::vector<SpiInstance> out;
    parse_cont_item(out);
    while (at_punct("|")) {
      take();
      parse_cont_item(out);
    }
    return out;
  }

  void parse_cont_item(std::vector<SpiInstance>& out) {
    if (peek().kind == Token::Number && peek().text == "0") {
      take();
      return;
    }
    if (at_punct("(")) {
      take();
      std::vector<SpiInstance> inner = parse_cont();
      expect_punct(")", "')'");
      for (SpiInstance& instance : inner) out.push_back(std::move(instance));
      return;
    }
    if (at_ident("new")) fail(peek(), "name restriction is not supported");
    if (peek().kind != Token::Ident) fail(peek(), "expected a process");
    Token head = name("a definition");
    SpiInstance instance;
    instance.definition = head.text;
    instance.line = head.line;
    instance.col = head.col;
    instance.args = name_list("a channel");
    out.push_back(std::move(instance));
  }

  void parse_main() {
    Token tok = take();  // run
    if (have_main_) fail(tok, "duplicate run section");
    have_main_ = true;
    if (peek().kind != Token::End && !at_punct(";"))
      program_.main = parse_cont();
    if (at_punct(";")) take();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
  SpiProgram program_;
  bool have_main_ = false;
};

// Scope and arity checks over the parsed program. Channel positions and
// arguments resolve innermost-first: receive binders, then parameters, then
// declared channels.
class SpiChecker {
 public:
  SpiChecker(const SpiProgram& program, const std::string& file)
      : program_(program), file_(file) {
    for (const auto& [channel, rate] : program.channels)
      channels_.insert(channel);
  }

  void check() {
    for (const SpiDefinition& def : program_.definitions) check_definition(def);
    for (const SpiInstance& instance : program_.main)
      check_instance(instance, {});
  }

 private:
  [[noreturn]] void fail(int line, int col, const std::string& message) const {
    throw ParseError(file_, line, col, message);
  }

  bool in_scope(const std::string& name,
                const std::unordered_set<std::string>& locals) const {
    return locals.contains(name) || channels_.contains(name);
  }

  void check_definition(const SpiDefinition& def) {
    std::unordered_set<std::string> params(def.params.begin(),
                                           def.params.end());
    for (const SpiBranch& branch : def.branches) {
      std::unordered_set<std::string> scope = params;
      if (branch.prefix != SpiPrefix::delay) {
        if (!in_scope(branch.channel, params))
          fail(branch.line, branch.col,
               "undeclared channel '" + branch.channel + "'");
        if (branch.prefix == SpiPrefix::send) {
          for (const std::string& sent : branch.payload)
            if (!in_scope(sent, params))
              fail(branch.line, branch.col, "undeclared name '" + sent + "'");
        } else {
          std::unordered_set<std::string> binders;
          for (const std::string& binder : branch.payload) {
            if (!binders.insert(binder).second)
              fail(branch.line, branch.col,
                   "duplicate binder '" + binder + "'");
            if (params.contains(binder))
              fail(branch.line, branch.col,
                   "binder '" + binder + "' shadows a parameter");
            scope.insert(binder);
          }
        }
      }
      for (const SpiInstance& instance : branch.continuation)
        check_instance(instance, scope);
    }
  }

  void check_instance(const SpiInstance& instance,
                      const std::unordered_set<std::string>& scope) const {
    const SpiDefinition* def = program_.find_definition(instance.definition);
    if (!def)
      fail(instance.line, instance.col,
           "unknown definition '" + instance.definition + "'");
    if (def->params.size() != instance.args.size())
      fail(instance.line, instance.col,
           "definition '" + instance.definition + "' takes " +
               format_int(static_cast<long long>(def->params.size())) +
               " arguments, got " +
               format_int(static_cast<long long>(instance.args.size())));
    for (const std::string& arg : instance.args)
      if (!in_scope(arg, scope))
        fail(instance.line, instance.col, "undeclared channel '" + arg + "'");
  }

  const SpiProgram& program_;
  const std::string& file_;
  std::unordered_set<std::string> channels_;
};

using Substitution = std::unordered_map<std::string, std::string>;

const std::string& substitute(const Substitution& sigma,
                              const std::string& name) {
  auto it = sigma.find(name);
  return it == sigma.end() ? name : it->second;
}

struct ResolvedSpecies {
  const SpiDefinition* definition;
  Substitution sigma;
};

ResolvedSpecies resolve(const SpiProgram& program, const SpeciesKey& key) {
  const std::string& text = key.str();
  std::size_t open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw InternalError("malformed species key: " + text);
  std::string name = text.substr(0, open);
  std::vector<std::string> args;
  std::size_t begin = open + 1;
  std::size_t end = text.size() - 1;
  while (begin < end) {
    std::size_t comma = text.find(',', begin);
    if (comma == std::string::npos || comma > end) comma = end;
    args.push_back(text.substr(begin, comma - begin));
    begin = comma + 1;
  }
  const SpiDefinition* def = program.find_definition(name);
  if (!def) throw InternalError("unknown definition in key: " + text);
  if (def->params.size() != args.size())
    throw InternalError("arity mismatch in key: " + text);
  ResolvedSpecies out{def, {}};
  for (std::size_t i = 0; i < args.size(); ++i)
    out.sigma.emplace(def->params[i], args[i]);
  return out;
}

SpeciesMultiset continuation_species(const std::vector<SpiInstance>& cont,
                                     const Substitution& sigma) {
  SpeciesMultiset out;
  for (const SpiInstance& instance : cont) {
    std::vector<std::string> args;
    args.reserve(instance.args.size());
    for (const std::string& arg : instance.args)
      args.push_back(substitute(sigma, arg));
    out.add(spi_species_key(instance.definition, args));
  }
  return out;
}

}  // namespace

const SpiDefinition* SpiProgram::find_definition(
    const std::string& name) const {
  for (const SpiDefinition& def : definitions)
    if (def.name == name) return &def;
  return nullptr;
}

std::optional<double> SpiProgram::channel_rate(const std::string& name) const {
  for (const auto& [channel, rate] : channels)
    if (channel == name) return rate;
  return std::nullopt;
}

SpiProgram parse_spi(const std::string& text, const std::string& filename) {
  SpiParser parser(tokenize(text, filename), filename);
  SpiProgram program = parser.parse();
  SpiChecker(program, filename).check();
  return program;
}

SpeciesKey spi_species_key(const std::string& name,
                           const std::vector<std::string>& args) {
  std::string text = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) text += ',';
    text += args[i];
  }
  text += ')';
  return SpeciesKey(std::move(text));
}

SpeciesMultiset spi_species(const std::vector<SpiInstance>& process) {
  SpeciesMultiset out;
  for (const SpiInstance& instance : process)
    out.add(spi_species_key(instance.definition, instance.args));
  return out;
}

SpeciesMultiset SpiCalculus::initial_species() const {
  return spi_species(program_.main);
}

std::vector<Reaction> SpiCalculus::reactions(
    const SpeciesKey& key, std::span<const SpeciesKey> existing) const {
  std::vector<Reaction> out;
  auto push_unique = [&out](Reaction reaction) {
    for (const Reaction& present : out)
      if (present == reaction) return;
    out.push_back(std::move(reaction));
  };

  ResolvedSpecies self = resolve(program_, key);

  for (const SpiBranch& branch : self.definition->branches) {
    if (branch.prefix != SpiPrefix::delay) continue;
    SpeciesMultiset reactants;
    reactants.add(key);
    push_unique(Reaction(reactants, branch.delay_rate,
                         continuation_species(branch.continuation, self.sigma)));
  }

  auto pair_up = [&](const SpeciesKey& sender_key,
                     const ResolvedSpecies& sender, const SpiBranch& send,
                     const SpeciesKey& receiver_key,
                     const ResolvedSpecies& receiver,
                     const SpiBranch& receive) {
    std::string channel = substitute(sender.sigma, send.channel);
    if (channel != substitute(receiver.sigma, receive.channel)) return;
    if (send.payload.size() != receive.payload.size())
      throw ModelError("arity mismatch on channel " + channel + " between " +
                       sender_key.str() + " and " + receiver_key.str());
    std::optional<double> rate = program_.channel_rate(channel);
    if (!rate) throw InternalError("no rate for channel " + channel);
    Substitution receive_sigma = receiver.sigma;
    for (std::size_t i = 0; i < send.payload.size(); ++i)
      receive_sigma[receive.payload[i]] =
          substitute(sender.sigma, send.payload[i]);
    SpeciesMultiset reactants;
    reactants.add(sender_key);
    reactants.add(receiver_key);
    SpeciesMultiset products =
        continuation_species(send.continuation, sender.sigma)
            .plus(continuation_species(receive.continuation, receive_sigma));
    push_unique(Reaction(std::move(reactants), *rate, std::move(products)));
  };

  auto scan_partner = [&](const SpeciesKey& partner_key) {
    ResolvedSpecies partner = resolve(program_, partner_key);
    bool same = partner_key == key;
    for (const SpiBranch& mine : self.definition->branches) {
      for (const SpiBranch& theirs : partner.definition->branches) {
        if (mine.prefix == SpiPrefix::send &&
            theirs.prefix == SpiPrefix::receive)
          pair_up(key, self, mine, partner_key, partner, theirs);
        // For a homodimer the send/receive scan above already covers every
        // branch pair once.
        if (!same && mine.prefix == SpiPrefix::receive &&
            theirs.prefix == SpiPrefix::send)
          pair_up(partner_key, partner, theirs, key, self, mine);
      }
    }
  };
  for (const SpeciesKey& partner_key : existing) scan_partner(partner_key);
  scan_partner(key);

  return out;
}

SpeciesKey SpiCalculus::make_species(
    const std::string& name, const std::vector<std::string>& args) const {
  const SpiDefinition* def = program_.find_definition(name);
  if (!def) throw ModelError("unknown definition: " + name);
  if (def->params.size() != args.size())
    throw ModelError("definition " + name + " takes " +
                     format_int(static_cast<long long>(def->params.size())) +
                     " arguments, got " +
                     format_int(static_cast<long long>(args.size())));
  for (const std::string& arg : args)
    if (!program_.channel_rate(arg))
      throw ModelError("undeclared channel: " + arg);
  return spi_species_key(name, args);
}

}  // namespace gsm
