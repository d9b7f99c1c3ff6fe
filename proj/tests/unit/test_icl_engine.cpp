#include <gtest/gtest.h>

#include "nemus/icl_engine.hpp"
#include "support/fixtures.hpp"

using namespace nemus;
using namespace nemus::testing;

namespace {

struct World {
  SymbolTable s;
  GroundAtom g(const std::string& pred, std::vector<std::string> args) {
    GroundAtom out{s.intern_predicate(pred, static_cast<std::uint32_t>(args.size())), {}};
    for (const auto& a : args) out.args.push_back(s.intern_constant(a));
    return out;
  }
  std::set<std::string> names(const std::set<ConstCode>& cs) const {
    std::set<std::string> out;
    for (auto c : cs) out.insert(s.constant_name(c));
    return out;
  }
};

const Term X = Term::var(VarCode{0});
const Term Y = Term::var(VarCode{1});
const Term Z = Term::var(VarCode{2});

}  // namespace

TEST(Rho, SharedConstants) {
  World w;
  EXPECT_EQ(w.names(rho(w.g("p1", {"ak", "c1"}), w.g("p1", {"c1", "ak1"}))), (std::set<std::string>{"c1"}));
  EXPECT_EQ(w.names(rho(w.g("father", {"jake", "alice"}), w.g("mother", {"alice", "ted"}))),
            (std::set<std::string>{"alice"}));
  EXPECT_TRUE(rho(w.g("p", {"a", "b"}), w.g("q", {"c", "d"})).empty());
}

TEST(AttributeMates, EitherSide) {
  World w;
  auto p = w.g("p1", {"ak", "c1"});
  auto q = w.g("p1", {"c1", "ak1"});
  EXPECT_EQ(w.names(attribute_mates(p, q, Side::First)), (std::set<std::string>{"ak"}));
  EXPECT_EQ(w.names(attribute_mates(p, q, Side::Second)), (std::set<std::string>{"ak1"}));
  EXPECT_TRUE(attribute_mates(p, p, Side::First).empty());
}

TEST(InductiveMomentum, CollisionAndClearance) {
  World w;
  auto a1 = w.s.intern_constant("a1"), b1 = w.s.intern_constant("b1");
  EXPECT_EQ(inductive_momentum(w.g("qj", {"bj", "a1"}), w.g("qj", {"bj", "b1"}), a1, b1),
            Momentum::Inconsistent);
  EXPECT_EQ(inductive_momentum(w.g("q1", {"a1", "b1"}), w.g("r1", {"b1", "c1"}), a1, b1),
            Momentum::Consistent);
  auto a = w.s.intern_constant("a"), d = w.s.intern_constant("d");
  EXPECT_EQ(inductive_momentum(w.g("p", {"a", "b"}), w.g("p", {"c", "d"}), a, d), Momentum::Consistent);
}

TEST(InductiveMomentum, RequiresBothHooks) {
  World w;
  auto z = w.s.intern_constant("z"), b1 = w.s.intern_constant("b1");
  EXPECT_THROW(inductive_momentum(w.g("qj", {"bj", "a1"}), w.g("qj", {"bj", "b1"}), z, b1),
               PreconditionFault);
}

TEST(AntiUnify, ChainOfLinkageTerms) {
  World w;
  auto l1 = w.g("p1", {"ak", "c1"});
  auto l2 = w.g("p1", {"c1", "ak1"});
  auto head = w.s.intern_predicate("p", 2);
  AntiSubstitution theta;
  theta.seed(*w.s.find_constant("ak"), VarCode{0});
  theta.seed(*w.s.find_constant("ak1"), VarCode{1});
  theta.seed(*w.s.find_constant("c1"), VarCode{2});
  auto [b1, t1] = anti_unify(l1, theta);
  auto [b2, t2] = anti_unify(l2, t1);
  EXPECT_EQ(t2, theta);
  EXPECT_EQ(render_clause(Atom{head, {X, Y}}, {b1, b2}, w.s), "p(X,Y) :- p1(X,Z0), p1(Z0,Y).");
}

TEST(AntiUnify, FreshVariableForNewConstant) {
  World w;
  auto fact = w.g("father", {"jake", "alice"});
  auto anc = w.s.intern_predicate("ancestor", 2);
  AntiSubstitution theta;
  theta.seed(*w.s.find_constant("jake"), VarCode{0});
  theta.reserve_variables(2);  // Y belongs to the head
  auto [atom, out] = anti_unify(fact, theta);
  ASSERT_EQ(out.size(), 2u);
  auto fresh = out.lookup(*w.s.find_constant("alice"));
  ASSERT_TRUE(fresh.has_value());
  EXPECT_EQ(atom.args[1].as_var(), *fresh);
  EXPECT_NE(fresh->value, 0u);
  EXPECT_NE(fresh->value, 1u);
  EXPECT_EQ(render_clause(Atom{anc, {X, Y}}, {atom}, w.s), "ancestor(X,Y) :- father(X,Z0).");
}

TEST(AntiUnify, AlreadyMappedConstant) {
  World w;
  auto fact = w.g("s1", {"c1"});
  AntiSubstitution theta;
  theta.seed(fact.args[0], VarCode{0});
  auto [atom, out] = anti_unify(fact, theta);
  EXPECT_EQ(out, theta);
  EXPECT_EQ(atom.args[0].as_var(), VarCode{0});
}

TEST(AntiSubstitution, StaysInjective) {
  World w;
  auto a = w.s.intern_constant("a"), b = w.s.intern_constant("b");
  AntiSubstitution theta;
  theta.seed(a, VarCode{0});
  EXPECT_NO_THROW(theta.seed(a, VarCode{0}));
  EXPECT_THROW(theta.seed(a, VarCode{1}), PreconditionFault);
  EXPECT_THROW(theta.seed(b, VarCode{0}), PreconditionFault);
  EXPECT_NE(theta.bind(b), VarCode{0});
}

TEST(ApplyBias, RewritesOnceAndDeduplicates) {
  auto kb = parse_kb(kFamilyKb);
  auto& s = kb.symbols;
  auto father = *s.find_predicate("father", 2), mother = *s.find_predicate("mother", 2);
  auto parent = *s.find_predicate("parent", 2);
  std::set<PredCode> emitted;

  auto r1 = apply_bias(Atom{father, {X, Z}}, kb.task.biases, emitted);
  EXPECT_EQ(r1.atom, (Atom{parent, {X, Z}}));
  auto defs = render_all(r1.definitions, s);
  EXPECT_EQ(defs, (std::vector<std::string>{"parent(X,Y) :- father(X,Y).", "parent(X,Y) :- mother(X,Y)."}));

  auto r2 = apply_bias(Atom{mother, {Z, Y}}, kb.task.biases, emitted);
  EXPECT_EQ(r2.atom, (Atom{parent, {Z, Y}}));
  EXPECT_TRUE(r2.definitions.empty());

  auto q1 = s.intern_predicate("q1", 2);
  auto r3 = apply_bias(Atom{q1, {X, Y}}, kb.task.biases, emitted);
  EXPECT_EQ(r3.atom, (Atom{q1, {X, Y}}));
  EXPECT_TRUE(r3.definitions.empty());
}

TEST(InventAuto, ClosesWithFreshPredicate) {
  World w;
  auto t = w.s.intern_predicate("t", 2);
  auto q1 = w.s.intern_predicate("q1", 2);
  auto a = w.s.intern_constant("a"), b = w.s.intern_constant("b"), c = w.s.intern_constant("c");

  Hypothesis open;
  open.head = Atom{t, {X, Y}};
  open.body = {Atom{q1, {X, Z}}};
  open.theta_inv.seed(a, VarCode{0});
  open.theta_inv.seed(b, VarCode{1});
  open.theta_inv.seed(c, VarCode{2});
  open.frontier = {FrontierEntry{c, {}, false}};

  InventedNames names(w.s);
  auto [closed, next] = invent_auto(open, 0, 2, names);
  EXPECT_EQ(closed.status, Status::Closed);
  EXPECT_EQ(render_clause(closed.clause(), w.s), "t(X,Y) :- q1(X,Z0), inv_0(Z0,Y).");
  EXPECT_EQ(next.status, Status::Open);
  EXPECT_EQ(render_clause(next.clause(), w.s), "inv_0(X,Y).");
  EXPECT_EQ(next.theta_inv.lookup(c), VarCode{0});
  EXPECT_EQ(next.theta_inv.lookup(b), VarCode{1});

  auto second = invent_auto(open, 0, 2, names);
  EXPECT_EQ(render_clause(second.first.clause(), w.s), "t(X,Y) :- q1(X,Z0), inv_1(Z0,Y).");

  EXPECT_THROW(invent_auto(closed, 0, 2, names), PreconditionFault);
  EXPECT_THROW(invent_auto(open, 0, 3, names), PreconditionFault);
}

TEST(InventedNames, SkipsTakenNames) {
  SymbolTable s;
  s.intern_predicate("inv_0", 1);
  InventedNames names(s);
  EXPECT_EQ(s.predicate(names.fresh(2)).name, "inv_1");
}

TEST(TryRecursion, FamilyParentChain) {
  auto kb = parse_kb(kFamilyKb);
  auto n = compile(kb);
  auto anc = *kb.task.target;
  auto parent = *kb.symbols.find_predicate("parent", 2);
  Hypothesis open;
  open.head = Atom{anc, {X, Y}};
  open.body = {Atom{parent, {X, Z}}};
  Atom next{parent, {Z, Term::var(VarCode{3})}};

  auto pair = try_recursion(open, next, n, kb.task.biases, kb.task.tau);
  ASSERT_TRUE(pair.has_value());
  EXPECT_EQ(render_clause(pair->base, kb.symbols), "ancestor(X,Y) :- parent(X,Y).");
  EXPECT_EQ(render_clause(pair->recursive, kb.symbols), "ancestor(X,Y) :- parent(X,Z0), ancestor(Z0,Y).");

  EXPECT_FALSE(try_recursion(open, next, n, kb.task.biases, 0.5).has_value());  // 0.4 < 0.5

  auto father = *kb.symbols.find_predicate("father", 2);
  EXPECT_THROW(try_recursion(open, Atom{father, {Z, Y}}, n, kb.task.biases, 0.2), PreconditionFault);
  Hypothesis empty = open;
  empty.body.clear();
  EXPECT_THROW(try_recursion(empty, next, n, kb.task.biases, 0.2), PreconditionFault);
}

TEST(TryRecursion, DisjointColumnsDeclined) {
  auto kb = parse_kb("d(a,b).\nd(c,e).\n#target t/2.\n#positive t(a,e).\n");
  auto n = compile(kb);
  auto d = *kb.symbols.find_predicate("d", 2);
  Hypothesis open;
  open.head = Atom{*kb.task.target, {X, Y}};
  open.body = {Atom{d, {X, Z}}};
  EXPECT_FALSE(try_recursion(open, Atom{d, {Z, Y}}, n, kb.task.biases, 0.2).has_value());
}
