#include "sleec/parser.hpp"

#include "parse_util.hpp"
#include "sleec/lexer.hpp"

namespace sleec {

using detail::Cursor;

namespace {

bool parse_definitions(Cursor& c, SleecSpec& spec) {
  while (!c.at_word("def_end")) {
    if (c.done()) {
      c.error("expected 'def_end'");
      return false;
    }
    if (c.eat_word("event")) {
      SourceLoc loc;
      auto name = detail::parse_name(c, "event name", &loc);
      if (!name)
        return false;
      spec.events.push_back({*name, loc});
      continue;
    }
    if (c.eat_word("measure")) {
      SourceLoc loc;
      auto name = detail::parse_name(c, "measure name", &loc);
      if (!name)
        return false;
      if (!c.expect(Tok::Colon, "':' after measure name"))
        return false;
      MeasureDef m;
      m.name = *name;
      m.loc = loc;
      if (c.eat_word("boolean")) {
        m.sort = Sort::Boolean;
      } else if (c.eat_word("numeric")) {
        m.sort = Sort::Numeric;
      } else if (c.eat_word("scale")) {
        m.sort = Sort::Scale;
        if (!c.expect(Tok::LParen, "'(' after scale"))
          return false;
        do {
          auto value = detail::parse_name(c, "scale value");
          if (!value)
            return false;
          m.scale_values.push_back(*value);
        } while (c.eat(Tok::Comma));
        if (!c.expect(Tok::RParen, "')' closing scale values"))
          return false;
        if (m.scale_values.size() < 2) {
          c.error_at(loc, "scale must declare at least two values");
          return false;
        }
      } else {
        c.error("expected measure sort (boolean, numeric or scale)");
        return false;
      }
      spec.measures.push_back(std::move(m));
      continue;
    }
    c.error("expected 'event' or 'measure' declaration");
    return false;
  }
  c.next(); // def_end
  return true;
}

std::optional<Response> parse_response(Cursor& c) {
  Response r;
  r.loc = c.peek().loc;
  r.polarity = c.eat_word("not") ? Polarity::Forbid : Polarity::Require;
  auto event = detail::parse_name(c, "response event");
  if (!event)
    return std::nullopt;
  r.event = *event;
  if (c.eat_word("within")) {
    auto d = detail::parse_duration(c);
    if (!d)
      return std::nullopt;
    r.deadline = *d;
  }
  return r;
}

bool parse_rules(Cursor& c, SleecSpec& spec) {
  while (!c.at_word("rule_end")) {
    if (c.done()) {
      c.error("expected 'rule_end'");
      return false;
    }
    Rule rule;
    auto id = detail::parse_name(c, "rule id", &rule.loc);
    if (!id)
      return false;
    rule.id = *id;
    if (!c.expect(Tok::Assign, "':=' after rule id"))
      return false;
    if (!c.expect_word("when"))
      return false;
    auto trigger = detail::parse_name(c, "trigger event");
    if (!trigger)
      return false;
    rule.trigger_event = *trigger;
    if (c.eat_word("and")) {
      rule.trigger_cond = detail::parse_condition(c);
      if (!rule.trigger_cond)
        return false;
    }
    if (!c.expect_word("then"))
      return false;
    auto response = parse_response(c);
    if (!response)
      return false;
    rule.response = *response;

    while (c.eat_word("unless")) {
      Defeater d;
      d.loc = c.peek().loc;
      d.cond = detail::parse_condition(c);
      if (!d.cond)
        return false;
      if (c.eat_word("then")) {
        auto dr = parse_response(c);
        if (!dr)
          return false;
        d.response = *dr;
      }
      rule.defeaters.push_back(std::move(d));
    }
    spec.rules.push_back(std::move(rule));
  }
  c.next(); // rule_end
  return true;
}

bool parse_purposes(Cursor& c, SleecSpec& spec) {
  while (!c.at_word("purpose_end")) {
    if (c.done()) {
      c.error("expected 'purpose_end'");
      return false;
    }
    Purpose p;
    auto id = detail::parse_name(c, "purpose id", &p.loc);
    if (!id)
      return false;
    p.id = *id;
    if (!c.expect(Tok::Assign, "':=' after purpose id"))
      return false;
    if (!c.expect_word("exists"))
      return false;
    auto event = detail::parse_name(c, "purpose event");
    if (!event)
      return false;
    p.exists_event = *event;
    if (c.eat_word("and")) {
      p.cond = detail::parse_condition(c);
      if (!p.cond)
        return false;
    }
    if (c.eat_word("while")) {
      auto ctx = detail::parse_name(c, "context event");
      if (!ctx)
        return false;
      p.while_event = *ctx;
    }
    spec.purposes.push_back(std::move(p));
  }
  c.next(); // purpose_end
  return true;
}

} // namespace

std::optional<SleecSpec> parse_sleec(std::string_view src,
                                     std::vector<Diagnostic>& diags) {
  std::vector<Token> tokens;
  if (!lex(src, tokens, diags))
    return std::nullopt;
  Cursor c(std::move(tokens), diags);

  SleecSpec spec;
  if (c.eat_word("def_start")) {
    if (!parse_definitions(c, spec))
      return std::nullopt;
  }
  if (c.eat_word("rule_start")) {
    if (!parse_rules(c, spec))
      return std::nullopt;
  }
  if (c.eat_word("purpose_start")) {
    if (!parse_purposes(c, spec))
      return std::nullopt;
  }
  if (!c.done()) {
    c.error("expected def_start, rule_start, purpose_start or end of file");
    return std::nullopt;
  }
  return spec;
}

} // namespace sleec
