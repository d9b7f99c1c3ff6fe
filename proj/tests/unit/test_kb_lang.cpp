#include <gtest/gtest.h>

#include <random>

#include "nemus/kb_lang.hpp"
#include "support/fixtures.hpp"
#include "support/random_kb.hpp"

using namespace nemus;
using namespace nemus::testing;

TEST(ParseKb, SingleFactInternsInOrder) {
  auto kb = parse_kb("father(jake, alice).");
  ASSERT_EQ(kb.facts.size(), 1u);
  EXPECT_EQ(kb.symbols.find_constant("jake")->value, 0u);
  EXPECT_EQ(kb.symbols.find_constant("alice")->value, 1u);
  EXPECT_EQ(kb.symbols.find_predicate("father", 2)->value, 0u);
  EXPECT_FALSE(kb.task.target.has_value());
}

TEST(ParseKb, FamilyTask) {
  auto kb = parse_kb(kFamilyKb);
  EXPECT_EQ(kb.facts.size(), 4u);
  ASSERT_EQ(kb.task.biases.size(), 1u);
  ASSERT_EQ(kb.task.positives.size(), 1u);
  EXPECT_EQ(render_atom(kb.task.positives[0], kb.symbols), "ancestor(jake,bob)");
  EXPECT_EQ(kb.task.max_body, 2u);
  EXPECT_DOUBLE_EQ(kb.task.tau, kDefaultTau);
  EXPECT_EQ(kb.task.biases[0].sources.size(), 2u);
  EXPECT_EQ(kb.symbols.predicate(kb.task.biases[0].invented).name, "parent");
}

TEST(ParseKb, LongFormMatchesDirectives) {
  const char* long_form = R"(
father(jake, alice).
mother(alice, ted).
father(ted, bob).
mother(matilda, alice).
consider induction on ancestor(X,Y)
  knowing ancestor(jake,bob)
  assuming father(X,Y) or mother(X,Y) defines parent(X,Y).
#max_body 2.
)";
  auto a = parse_kb(long_form);
  auto b = parse_kb(kFamilyKb);
  EXPECT_EQ(a.facts, b.facts);
  EXPECT_EQ(a.task.target, b.task.target);
  EXPECT_EQ(a.task.positives, b.task.positives);
  ASSERT_EQ(a.task.biases.size(), 1u);
  EXPECT_EQ(a.task.biases[0].invented, b.task.biases[0].invented);
  EXPECT_EQ(a.task.biases[0].sources, b.task.biases[0].sources);
}

TEST(ParseKb, CommentsAndCrlf) {
  auto kb = parse_kb("% header\r\nedge(a,b). % trailing\r\nedge(b,c).\r\n");
  EXPECT_EQ(kb.facts.size(), 2u);
}

TEST(ParseKb, TauAndDefaults) {
  auto kb = parse_kb("e(a,b).\n#target t/2.\n#positive t(a,b).\n#tau 0.5.\n");
  EXPECT_DOUBLE_EQ(kb.task.tau, 0.5);
  EXPECT_EQ(kb.task.max_body, kDefaultMaxBody);
}

struct Rejected {
  const char* name;
  const char* text;
  bool parse_error;  // otherwise ValidationError
};

class RejectsInput : public ::testing::TestWithParam<Rejected> {};

TEST_P(RejectsInput, WithLocatedError) {
  const auto& p = GetParam();
  if (p.parse_error) {
    EXPECT_THROW(parse_kb(p.text), ParseError);
  } else {
    EXPECT_THROW(parse_kb(p.text), ValidationError);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Invalid, RejectsInput,
    ::testing::Values(
        Rejected{"NonGroundFact", "p(X).", false},
        Rejected{"ArityThree", "p(a,b,c).", false},
        Rejected{"RuleInBackground", "p(a) :- q(a).", false},
        Rejected{"RealConstant", "p(1.5).", false},
        Rejected{"ExampleWithoutTarget", "e(a,b).\n#positive t(a).", false},
        Rejected{"ExampleArityMismatch", "e(a,b).\n#target t/2.\n#positive t(a).", false},
        Rejected{"ExampleNotTarget", "e(a,b).\n#target t/2.\n#positive u(a,b).", false},
        Rejected{"PositiveAlreadyFact", "t(a,b).\n#target t/2.\n#positive t(a,b).", false},
        Rejected{"DuplicateTarget", "e(a,b).\n#target t/2.\n#target t/2.", false},
        Rejected{"ZeroMaxBody", "e(a,b).\n#target t/2.\n#max_body 0.", false},
        Rejected{"TauOutOfRange", "e(a,b).\n#target t/2.\n#tau 1.5.", false},
        Rejected{"InventTarget", "e(a,b).\n#target t/2.\n#invent t/2 from e/2.", false},
        Rejected{"InventExistingPredicate", "e(a,b).\n#target t/2.\n#invent e/2 from e/2.", false},
        Rejected{"SourceWithoutFacts", "e(a,b).\n#target t/2.\n#invent n/2 from f/2.", false},
        Rejected{"SourceArityMismatch", "e(a,b).\n#target t/2.\n#invent n/2 from e/1.", false},
        Rejected{"UnclosedParen", "p(a", true},
        Rejected{"UnknownDirective", "p(a).\n#frobnicate.", true},
        Rejected{"MissingPeriod", "p(a)", true},
        Rejected{"NonAscii", "p(\xc3\xa9).", true}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(ParseKb, ErrorCarriesLineAndColumn) {
  try {
    parse_kb("p(a).\nq(b,\n  ).\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3u);
    EXPECT_EQ(e.column, 3u);
    EXPECT_NE(std::string(e.what()).find("3:3:"), std::string::npos);
  }
}

TEST(RenderClause, PaperForms) {
  SymbolTable s;
  auto anc = s.intern_predicate("ancestor", 2);
  auto par = s.intern_predicate("parent", 2);
  auto fat = s.intern_predicate("father", 2);
  auto p = s.intern_predicate("p", 1);
  auto x = Term::var(VarCode{0}), y = Term::var(VarCode{1}), z = Term::var(VarCode{2});

  EXPECT_EQ(render_clause(Atom{anc, {x, y}}, {Atom{par, {x, z}}, Atom{anc, {z, y}}}, s),
            "ancestor(X,Y) :- parent(X,Z0), ancestor(Z0,Y).");
  EXPECT_EQ(render_clause(Atom{p, {x}}, {}, s), "p(X).");
  EXPECT_EQ(render_clause(Atom{par, {x, y}}, {Atom{fat, {x, y}}}, s), "parent(X,Y) :- father(X,Y).");
}

TEST(RenderClause, NamesByFirstUseNotByCode) {
  SymbolTable s;
  auto t = s.intern_predicate("t", 2);
  auto e = s.intern_predicate("e", 2);
  auto a = Term::var(VarCode{7}), b = Term::var(VarCode{3}), c = Term::var(VarCode{0});
  EXPECT_EQ(render_clause(Atom{t, {a, b}}, {Atom{e, {a, c}}, Atom{e, {c, b}}}, s),
            "t(X,Y) :- e(X,Z0), e(Z0,Y).");
}

TEST(ParseClauses, RoundTripsRendering) {
  auto kb = parse_kb(kFamilyKb);
  const char* text =
      "parent(X,Y) :- father(X,Y).\n"
      "ancestor(X,Y) :- parent(X,Z0), ancestor(Z0,Y).\n";
  auto clauses = parse_clauses(text, kb.symbols);
  ASSERT_EQ(clauses.size(), 2u);
  EXPECT_EQ(render_clause_set(clauses, kb.symbols), text);
  EXPECT_THROW(parse_clauses("#target t/2.", kb.symbols), ParseError);
}

TEST(SymbolTable, UnknownCodeThrows) {
  SymbolTable s;
  EXPECT_THROW(s.constant_name(ConstCode{0}), UnknownCode);
  EXPECT_THROW(s.predicate(PredCode{4}), UnknownCode);
}

// parse(render(kb)) == kb over random tasks.
TEST(ParseKbProperty, RenderRoundTrip) {
  std::mt19937 rng(7);
  RandomKbShape shape;
  shape.invention = true;
  for (int i = 0; i < 300; ++i) {
    auto text = random_kb_text(rng, shape);
    auto kb = parse_kb(text);
    auto again = parse_kb(render_kb(kb));
    ASSERT_EQ(again.facts, kb.facts) << text;
    ASSERT_EQ(again.symbols, kb.symbols) << text;
    ASSERT_EQ(again.task.target, kb.task.target);
    ASSERT_EQ(again.task.positives, kb.task.positives);
    ASSERT_EQ(again.task.negatives, kb.task.negatives);
    ASSERT_EQ(again.task.max_body, kb.task.max_body);
    ASSERT_EQ(again.task.biases.size(), kb.task.biases.size());
    ASSERT_EQ(render_kb(again), render_kb(kb));
  }
}

// The parser is total: any byte string either parses or raises one of the
// two located error types.
TEST(ParseKbProperty, TotalOnMutatedInput) {
  std::mt19937 rng(11);
  RandomKbShape shape;
  const std::string alphabet = "abXY(),.:-#%/ \n01\t\x80_";
  for (int i = 0; i < 2000; ++i) {
    std::string text = random_kb_text(rng, shape);
    int edits = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      std::size_t at = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
      char c = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
      switch (rng() % 3) {
        case 0: text[at] = c; break;
        case 1: text.insert(text.begin() + static_cast<std::ptrdiff_t>(at), c); break;
        default: text.erase(at, 1);
      }
    }
    try {
      (void)parse_kb(text);
    } catch (const ParseError&) {
    } catch (const ValidationError&) {
    } catch (const std::exception& ex) {
      FAIL() << "unexpected " << ex.what() << " on:\n" << text;
    }
  }
}
